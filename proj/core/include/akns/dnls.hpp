#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "akns/algebra.hpp"

namespace akns {

// Periodic lattice of blocks X_n (N x M) and Y_n (M x N). Neighbour lookups wrap
// modulo nSites(); a site passed to an operation must lie in [0, nSites()).
struct DnlsState {
    std::size_t nDim = 1;
    std::size_t mDim = 1;
    cplx theta = 1.0;
    std::vector<CMatrix> x;
    std::vector<CMatrix> y;

    static DnlsState zeros(std::size_t nSites, std::size_t nDim, std::size_t mDim, cplx theta = 1.0);

    std::size_t nSites() const noexcept { return x.size(); }
    std::size_t blockDim() const noexcept { return nDim + mDim; }
    std::size_t wrap(long n) const;
    const CMatrix& xAt(long n) const { return x[wrap(n)]; }
    const CMatrix& yAt(long n) const { return y[wrap(n)]; }
    // theta I + X_n Y_n
    CMatrix bigN(long n) const;

    void validate() const;
    bool allFinite() const;
};

struct FlowId {
    int alpha = 1;
};

struct FieldDerivative {
    std::vector<CMatrix> dx;
    std::vector<CMatrix> dy;
};

CMatrix laxL(const DnlsState& s, long site, cplx lambda);
SpectralMatrixPoly laxPoly(const DnlsState& s, long site);

// Explicit V^(1), V^(2), V^(3) (the last including the w_{n,0}^(3) entries).
CMatrix vOperator(const DnlsState& s, long site, FlowId flow, cplx lambda);
SpectralMatrixPoly vPoly(const DnlsState& s, long site, FlowId flow);

// Right-hand sides of the t1 and t2 flows. The t1 flow is written with N_n so it
// stays a zero-curvature flow for theta != 1; at theta = 1 it is the usual form.
FieldDerivative eomRhs(const DnlsState& s, FlowId flow);

// d/dt L_n given field velocities, through N = theta + XY.
CMatrix laxTimeDerivative(const DnlsState& s, long site, const FieldDerivative& v);

// max_n |dL_n - (V_{n+1} L_n - L_n V_n)| for each lambda, with dL from eomRhs.
std::vector<double> zeroCurvatureResidual(const DnlsState& s, FlowId flow, const std::vector<cplx>& lambdas);
// Same, but with caller-supplied field velocities (any flow 1..3).
std::vector<double> zeroCurvatureResidual(const DnlsState& s, FlowId flow, const FieldDerivative& v,
                                          const std::vector<cplx>& lambdas);

// For V^(3): V_{n+1} L_n - L_n V_n must not depend on lambda and must have the
// shape of a time derivative of L. Returns the largest violation of either.
double flowThreeCompatibility(const DnlsState& s, const std::vector<cplx>& lambdas);

struct DnlsTrajectory {
    std::vector<double> times;
    std::vector<DnlsState> states;
};

// Classic RK4. States are recorded at step 0, every sampleEvery steps and at the
// last step (sampleEvery = 0 records only the endpoints).
DnlsTrajectory evolve(const DnlsState& s, FlowId flow, double dt, long steps, long sampleEvery = 0);

struct SiteRange {
    long first;
    long last;  // inclusive
};

// constr2b residual of the dressing blocks K_n = [[A, B], [C, D]] over a range of sites
double dressingConstraintResidual(const DnlsState& s, const std::vector<CMatrix>& dressing,
                                  std::optional<SiteRange> range = std::nullopt);

// V_n^(alpha) = lambda^alpha Sigma / 2 + sum_k lambda^k w_{n,k}, with the w's from the
// dressing recursion driven by K_n. Throws InconsistentDressing when constr2b fails
// by more than 1e-8 on the range.
std::vector<SpectralMatrixPoly> dressedVFromRecursion(const DnlsState& s, const std::vector<CMatrix>& dressing,
                                                      int alpha, std::optional<SiteRange> range = std::nullopt);

}  // namespace akns
