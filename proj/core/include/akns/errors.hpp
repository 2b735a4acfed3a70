#pragma once

#include <stdexcept>
#include <string>

namespace akns {

// Base of every library failure. Subclasses name the failure mode; some carry the
// lattice site or integration step where it happened.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define AKNS_DEFINE_ERROR(Name)                        \
    class Name : public Error {                        \
    public:                                            \
        explicit Name(const std::string& what)         \
            : Error(#Name ": " + what) {}              \
    };

AKNS_DEFINE_ERROR(DimensionError)
AKNS_DEFINE_ERROR(VariantUnavailable)
AKNS_DEFINE_ERROR(SingularMatrix)
AKNS_DEFINE_ERROR(FlowUnsupported)
AKNS_DEFINE_ERROR(InconsistentDressing)
AKNS_DEFINE_ERROR(SpectralPole)
AKNS_DEFINE_ERROR(NotNormalized)
AKNS_DEFINE_ERROR(UnvalidatedOrder)
AKNS_DEFINE_ERROR(DegenerateMode)
AKNS_DEFINE_ERROR(DegenerateBianchi)
AKNS_DEFINE_ERROR(InconsistentBoundaryTerm)
AKNS_DEFINE_ERROR(PeriodicityViolation)
AKNS_DEFINE_ERROR(ModeOverflow)
AKNS_DEFINE_ERROR(SingularGlm)
AKNS_DEFINE_ERROR(SingularTime)

#undef AKNS_DEFINE_ERROR

class SiteError : public Error {
public:
    SiteError(const std::string& kind, long site, const std::string& what)
        : Error(kind + " at site " + std::to_string(site) + ": " + what), site_(site) {}
    long site() const noexcept { return site_; }

private:
    long site_;
};

class SingularSoliton : public SiteError {
public:
    SingularSoliton(long site, const std::string& what) : SiteError("SingularSoliton", site, what) {}
};

class SingularDressing : public SiteError {
public:
    SingularDressing(long site, const std::string& what) : SiteError("SingularDressing", site, what) {}
};

class LogBranch : public SiteError {
public:
    LogBranch(long site, const std::string& what) : SiteError("LogBranch", site, what) {}
};

class BlowUp : public Error {
public:
    explicit BlowUp(long step)
        : Error("BlowUp: non-finite state at step " + std::to_string(step)), step_(step) {}
    long step() const noexcept { return step_; }

private:
    long step_;
};

}  // namespace akns
