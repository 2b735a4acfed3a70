#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "akns/algebra.hpp"
#include "akns/dnls.hpp"
#include "akns/jet.hpp"
#include "akns/linear.hpp"

namespace akns {

// Scalar profiles of a rank-one DNLS solution: X_n = x_n bHat, Y_n = y_n b, and
// for Darboux-generated solutions the dressing scalars a_n, d_n.
struct SiteJets {
    Jet x;
    Jet y;
    Jet a;
    Jet d;
};

class ScalarSolution {
public:
    virtual ~ScalarSolution() = default;
    virtual SiteJets at(long n, double t) const = 0;
    virtual bool hasDressing() const = 0;
    virtual int flowAlpha() const = 0;
    virtual cplx kappa() const = 0;
    // how far the profile is from being N-periodic in n (0 when exactly periodic)
    virtual double periodDefect(std::size_t nSites) const = 0;
    // Type2 data only reduce on pairs with bHat b = kappa I
    virtual bool needsIdentityClosure() const { return false; }
};

enum class SolitonFamily { Type1, Type2 };

struct SolitonParams {
    SolitonFamily family = SolitonFamily::Type1;
    cplx xi = 1.0;   // Type1 spectral base
    cplx c = 0.0;    // Type2: eta = 1 + c, epsilon = 1 - c
    cplx kappa = 1.0;
    cplx x1 = 0.0;
    cplx d1 = 0.0;   // Type2: the hatted seed dhat_1 = (d_1 + c) / kappa
    // derived from the other seeds; when given they are checked to 1e-8
    std::optional<cplx> a1;
    std::optional<cplx> y1;
    int flowAlpha = 1;
};

// Seeds implied by the dressing constraints (a_1, y_1 for Type1; ahat_1, y_1 for Type2).
struct DerivedSeeds {
    cplx a1;
    cplx y1;
};
DerivedSeeds derivedSeeds(const SolitonParams& p);

class OneSoliton final : public ScalarSolution {
public:
    // Throws DegenerateMode (xi = 1 with nonzero seeds, c = 0), InconsistentDressing
    // (supplied seeds disagree with the derived ones, x1 = 0 with d1 != 0).
    explicit OneSoliton(SolitonParams p);

    SiteJets at(long n, double t) const override;
    bool hasDressing() const override { return true; }
    int flowAlpha() const override { return p_.flowAlpha; }
    cplx kappa() const override { return p_.kappa; }
    double periodDefect(std::size_t nSites) const override;
    bool needsIdentityClosure() const override { return p_.family == SolitonFamily::Type2; }

    const SolitonParams& params() const noexcept { return p_; }
    const DerivedSeeds& seeds() const noexcept { return seeds_; }
    // xi = 1 with zero seeds: K = 0, the Darboux matrix is lambda I
    bool trivial() const noexcept { return trivial_; }

private:
    SiteJets type1(long n, double t) const;
    SiteJets type2(long n, double t) const;

    SolitonParams p_;
    DerivedSeeds seeds_{};
    bool trivial_ = false;
};

// d_n, a_n at t = 0 from the first-order recursions d_{n+1} = d_n / (xi + kappa d_n)
// and a_{n+1} = xi a_n / (1 - kappa a_n), sites 1..nSites.
struct DressingSequence {
    std::vector<cplx> a;
    std::vector<cplx> d;
};
DressingSequence iterateType1Dressing(const SolitonParams& p, std::size_t nSites);

struct TodaParams {
    LinearSolution linear;
    cplx kappa = 1.0;
    cplx y1 = 1.0;
    // demand d/dt xhat_2 = 0 instead of freezing xhat_2 at t = 0
    bool stationaryBoundary = false;
};

class TodaSolution final : public ScalarSolution {
public:
    explicit TodaSolution(TodaParams p);

    SiteJets at(long n, double t) const override;
    bool hasDressing() const override { return false; }
    int flowAlpha() const override { return p_.linear.flowAlpha(); }
    cplx kappa() const override { return p_.kappa; }
    double periodDefect(std::size_t nSites) const override;

    cplx boundaryValue() const noexcept { return x2_; }

private:
    TodaParams p_;
    cplx x2_;
};

class BianchiSolution final : public ScalarSolution {
public:
    // Throws DegenerateBianchi for equal spectral parameters, InconsistentDressing
    // when kappa or the flow differ. A trivial input composes as the identity: the
    // two-soliton combination is 0/0 there (x y + kappa a d vanishes on every soliton).
    BianchiSolution(OneSoliton first, OneSoliton second);

    SiteJets at(long n, double t) const override;
    bool hasDressing() const override { return false; }
    int flowAlpha() const override { return s1_.flowAlpha(); }
    cplx kappa() const override { return s1_.kappa(); }
    double periodDefect(std::size_t nSites) const override;
    bool needsIdentityClosure() const override {
        return s1_.needsIdentityClosure() || s2_.needsIdentityClosure();
    }

private:
    OneSoliton s1_;
    OneSoliton s2_;
};

// Lifts sites firstSite .. firstSite+nSites-1 at time t onto the pair. Scans every
// site first (SingularSoliton). The pair must carry the solution's kappa, and the
// identity closure for Type2. requirePeriodic demands periodDefect < 1e-10
// (PeriodicityViolation).
DnlsState sampleState(const ScalarSolution& sol, const RankOnePair& pair, std::size_t nSites, double t,
                      long firstSite = 1, bool requirePeriodic = false);
FieldDerivative sampleDerivative(const ScalarSolution& sol, const RankOnePair& pair, std::size_t nSites, double t,
                                 long firstSite = 1);

// |exact d/dt - eomRhs| over the window (flows 1, 2). The lattice is padded so no
// site sees the periodic wrap.
double eomResidual(const ScalarSolution& sol, const RankOnePair& pair, std::size_t nSites, double t,
                   long firstSite = 1);
// Zero-curvature residual with exact time derivatives, flows 1..3, padded window.
double zeroCurvatureWindowResidual(const ScalarSolution& sol, const RankOnePair& pair, std::size_t nSites, double t,
                                   const std::vector<cplx>& lambdas, long firstSite = 1);

// K_n = [[a bHat b, -x_n bHat], [y_{n-1} b, d b bHat]] over the window
std::vector<CMatrix> dressingBlocks(const OneSoliton& sol, const RankOnePair& pair, std::size_t nSites, double t,
                                    long firstSite = 1);
// max |M_{n+1} Lhat - L_n M_n| with M = lambda I + K and Lhat the zero-field Lax
double darbouxIdentityResidual(const OneSoliton& sol, const RankOnePair& pair, std::size_t nSites, double t,
                               const std::vector<cplx>& lambdas, long firstSite = 1);

DnlsState solitonType1(const SolitonParams& p, const RankOnePair& pair, std::size_t nSites, double t = 0.0,
                       long firstSite = 1);
DnlsState solitonType2(const SolitonParams& p, const RankOnePair& pair, std::size_t nSites, double t = 0.0,
                       long firstSite = 1);
DnlsState todaGeneralSolution(const TodaParams& p, const RankOnePair& pair, std::size_t nSites, double t = 0.0,
                              long firstSite = 1);
DnlsState bianchiTwoSoliton(const OneSoliton& s1, const OneSoliton& s2, const RankOnePair& pair,
                            std::size_t nSites, double t = 0.0, long firstSite = 1);

}  // namespace akns
