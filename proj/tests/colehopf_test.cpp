#include <gtest/gtest.h>

#include <cmath>

#include "akns/colehopf.hpp"
#include "akns/errors.hpp"

using namespace akns;

TEST(ColeHopf, ConstantSeed) {
    const LinearSolution heat({{3.0, 1.0}}, 2, LinearScheme::ForwardDnls);
    const ColeHopfResult r = coleHopfForward(heat, 1, 6, 0.5);
    for (const cplx u : r.u.values) EXPECT_EQ(u, cplx(0.0));
    for (const cplx y : r.y.values) EXPECT_NEAR(std::abs(y - std::log(3.0)), 0.0, 1e-15);
    EXPECT_EQ(r.hjResidual, 0.0);
    EXPECT_EQ(r.burgersResidual, 0.0);
}

TEST(ColeHopf, GeometricSeed) {
    const LinearSolution heat({{2.0, 2.0}}, 2, LinearScheme::ForwardDnls);
    const ColeHopfResult r = coleHopfForward(heat, 1, 6, 0.3);
    for (const cplx u : r.u.values) EXPECT_NEAR(std::abs(u - std::log(2.0)), 0.0, 1e-14);
    EXPECT_LT(r.burgersResidual, 1e-14);
}

TEST(ColeHopf, TwoModes) {
    const LinearSolution heat({{1.0, 1.0}, {0.7, {1.2, 0.3}}}, 2, LinearScheme::ForwardDnls);
    const ColeHopfResult r = coleHopfForward(heat, -5, 10, 0.3);
    EXPECT_LT(r.heatResidual, 1e-12);
    EXPECT_LT(r.hjResidual, 1e-10);
    EXPECT_LT(r.burgersResidual, 1e-10);
}

TEST(ColeHopf, Errors) {
    EXPECT_THROW(coleHopfForward(LinearSolution({{1.0, 2.0}}, 1, LinearScheme::ForwardDnls), 1, 4, 0.0),
                 FlowUnsupported);
    EXPECT_THROW(coleHopfForward(LinearSolution({{1.0, 1.0}, {-1.0, 1.0}}, 2, LinearScheme::ForwardDnls), 1, 4, 0.0),
                 LogBranch);
    EXPECT_THROW(coleHopfForward(LinearSolution({{1.0, -1.0}}, 2, LinearScheme::ForwardDnls), 1, 4, 0.0), LogBranch);
}

TEST(Truncation, ConstantData) {
    TruncationOptions opt;
    opt.deltas = {0.0};
    const TruncationReport r = burgersTruncationOrder(opt);
    EXPECT_EQ(r.literal.residual[0], 0.0);
    EXPECT_EQ(r.diffusive.residual[0], 0.0);
}

// Measured behaviour of the three remainders; see the README for why the literal
// one converges at second order.
TEST(Truncation, Orders) {
    const TruncationReport r = burgersTruncationOrder();
    ASSERT_EQ(r.literal.ratio.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_NEAR(r.literal.ratio[k], 4.0, 0.5);
        EXPECT_NEAR(r.diffusive.ratio[k], 16.0, 0.5);
        EXPECT_NEAR(r.hj.ratio[k], 8.0, 0.5);
    }
}

TEST(Continuum, HeatKernelPoint) {
    const ContinuumPair p = heatKernelPair(0.0, 1.0, 1.0, 1.0);
    EXPECT_NEAR(std::abs(p.u - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p.uHat - 0.5), 0.0, 1e-15);
    EXPECT_THROW(heatKernelPair(0.0, 0.0, 1.0, 1.0), SingularTime);
}

TEST(Continuum, SecondOrder) {
    const ContinuumReport r = verifyContinuumNls({});
    EXPECT_GT(r.ratio, 3.5);
    EXPECT_LT(r.ratio, 4.5);
    const ContinuumReport g = verifyContinuumGeneral({}, {1.0, 0.5, 1.2});
    EXPECT_GT(g.ratio, 3.5);
    EXPECT_LT(g.ratio, 4.5);
}

TEST(Continuum, StencilReachesZeroTime) {
    ContinuumGrid grid;
    grid.tMin = 0.01;
    EXPECT_THROW(verifyContinuumNls(grid), SingularTime);
}
