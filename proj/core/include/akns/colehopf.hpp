#pragma once

#include <cstddef>
#include <vector>

#include "akns/algebra.hpp"
#include "akns/linear.hpp"

namespace akns {

enum class LatticeBoundary { Periodic, Vanishing };

struct ScalarLattice {
    long firstSite = 1;
    std::vector<cplx> values;
    LatticeBoundary boundary = LatticeBoundary::Vanishing;
};

struct ColeHopfResult {
    ScalarLattice y;  // log xhat
    ScalarLattice u;  // y_{n+1} - y_n
    double heatResidual;
    double hjResidual;
    double burgersResidual;
};

// y_n = log xhat_n along the window, the branch carried from site to site by the
// principal log of xhat_{n+1} / xhat_n. heat must be a forward second-flow solution.
// Throws LogBranch when xhat vanishes or a ratio sits on the negative real axis.
ColeHopfResult coleHopfForward(const LinearSolution& heat, long firstSite, std::size_t nSites, double t);

struct TruncationOptions {
    std::vector<double> deltas{0.1, 0.05, 0.025, 0.0125};
    // literal data: xi = e^{i theta} on a fixed window at time t
    double theta = 0.4;
    double t = 0.3;
    long firstSite = -20;
    std::size_t nSites = 41;
    // diffusive data: xi = e^{i delta wave}, sites |n| <= span / delta, time T / delta^2
    double wave = 1.0;
    double amplitude = 0.5;
    double span = 2.0;
    double diffusiveTime = 0.3;
};

struct TruncationSeries {
    std::vector<double> residual;
    std::vector<double> ratio;  // residual[k] / residual[k+1]
};

// literal: xhat = 1 + delta Re(xi^{n-1} e^{Lambda t}), remainder |du/dt - D2 u - D(u^2)|.
// diffusive: the same remainder on slowly varying data (see TruncationOptions).
// hj: the y-equation remainder |dy/dt - D2 y - (D y)^2| on the diffusive data.
struct TruncationReport {
    std::vector<double> deltas;
    TruncationSeries literal;
    TruncationSeries diffusive;
    TruncationSeries hj;
};

TruncationReport burgersTruncationOrder(const TruncationOptions& opt = {});

struct ContinuumGrid {
    double xMin = -1.0;
    double xMax = 1.0;
    double hx = 0.02;
    double tMin = 0.5;
    double tMax = 1.0;
    double ht = 0.02;
    cplx g = 1.0;
    cplx kappa = 1.0;
};

struct ContinuumReport {
    double uResidual;        // d_t u + d_x^2 u - 2 kappa uhat u^2
    double partnerResidual;  // -d_t uhat + d_x^2 uhat - 2 kappa u uhat^2
    double residual;         // max of the two
    double halvedResidual;   // same points, hx and ht halved
    double ratio;
};

struct ContinuumPair {
    cplx u;
    cplx uHat;
};

// heat-kernel pair from the delta profile; throws SingularTime for t <= 0
ContinuumPair heatKernelPair(double x, double t, cplx g, cplx kappa);

// linear seed uhat0 = c1 + c2 e^{-k x + k^2 t}
struct SeedProfile {
    cplx c1 = 1.0;
    cplx c2 = 1.0;
    cplx k = 1.0;
};
ContinuumPair generalPair(double x, double t, const SeedProfile& seed, cplx g, cplx kappa);

// Centered differences on the grid; throws SingularTime if any stencil point has t <= 0.
ContinuumReport verifyContinuumNls(const ContinuumGrid& grid);
ContinuumReport verifyContinuumGeneral(const ContinuumGrid& grid, const SeedProfile& seed);

}  // namespace akns
