#pragma once

#include <cstddef>
#include <vector>

#include "akns/algebra.hpp"
#include "akns/linear.hpp"

namespace akns {

enum class AlBoundary { Periodic, Vanishing };
enum class AlVariant { AL, Network };

// Fields bHat_n (N x M) and b_n (M x N). Periodic wraps indices; Vanishing reads
// zero outside the window.
struct AlState {
    std::size_t nDim = 1;
    std::size_t mDim = 1;
    std::vector<CMatrix> bHat;
    std::vector<CMatrix> b;
    AlBoundary boundary = AlBoundary::Periodic;

    static AlState zeros(std::size_t nSites, std::size_t nDim, std::size_t mDim,
                         AlBoundary boundary = AlBoundary::Periodic);

    std::size_t nSites() const noexcept { return bHat.size(); }
    std::size_t blockDim() const noexcept { return nDim + mDim; }
    CMatrix bHatAt(long n) const;
    CMatrix bAt(long n) const;

    void validate() const;
    bool allFinite() const;
    // largest field entry on the first and last site
    double edgeMagnitude() const;
};

CMatrix alLax(const AlState& s, long site, cplx z);
SpectralMatrixPoly alLaxPoly(const AlState& s, long site);

// AL variant: V^(2) - V^(0). Network variant: V^(2) alone.
CMatrix alVOperator(const AlState& s, long site, AlVariant variant, cplx z);
SpectralMatrixPoly alVPoly(const AlState& s, long site, AlVariant variant);

struct AlDerivative {
    std::vector<CMatrix> dbHat;
    std::vector<CMatrix> db;
};

AlDerivative alEomRhs(const AlState& s, AlVariant variant);

std::vector<double> alZeroCurvatureResidual(const AlState& s, AlVariant variant, const std::vector<cplx>& zs);

struct AlTrajectory {
    std::vector<double> times;
    std::vector<AlState> states;
};

AlTrajectory alEvolve(const AlState& s, AlVariant variant, double dt, long steps, long sampleEvery = 0);

// sum_n tr(bHat_{n+1} b_n + b_{n+1} bHat_n), the constant c fixed to 1
cplx alHamiltonian(const AlState& s);

struct AlDarbouxParams {
    cplx bigQ = 1.0;
    cplx kappa = 1.0;  // constraint constant (oscillator family)
    cplx zeta = 1.0;
    cplx a1 = 0.0;
    cplx d1 = 0.0;
    cplx bHat1 = 0.0;
    cplx b1 = 0.0;
    RankOnePair pair;
};

struct AlFundamentalSoliton {
    AlState state;  // Vanishing boundary, sites n = 1..N
    std::vector<cplx> a;
    std::vector<cplx> d;
    std::vector<cplx> bHatScalar;
    std::vector<cplx> bScalar;
};

// Fundamental Darboux dressing of the zero seed. Throws SingularDressing when
// 1 + kappa a_n or 1 + kappa d_n vanishes.
AlFundamentalSoliton alSolitonFundamental(const AlDarbouxParams& p, std::size_t nSites);

// max over interior sites and the given z of |M_{n+1} Lhat_n - L_n M_n|, Lhat the zero-field Lax.
double alDarbouxIdentityResidual(const AlFundamentalSoliton& sol, const AlDarbouxParams& p,
                                 const std::vector<cplx>& zs);

// Deformed-oscillator dressing of bHat^(0) = linear (symmetric scheme), b^(0) = 0,
// under A_n = kappa bHat^(0)_n b_{n-1} + zeta. Sites firstSite .. firstSite+N-1 at time t.
AlState alSolitonOscillator(const AlDarbouxParams& p, const LinearSolution& linear, std::size_t nSites,
                            long firstSite = 1, double t = 0.0);

// |analytic d/dt - GAL rhs| over the window, derivatives carried exactly through the recursion.
double alOscillatorEomResidual(const AlDarbouxParams& p, const LinearSolution& linear, std::size_t nSites,
                               long firstSite = 1, double t = 0.0);

}  // namespace akns
