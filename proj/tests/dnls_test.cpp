#include <gtest/gtest.h>

#include <numbers>

#include "akns/conserved.hpp"
#include "akns/darboux.hpp"
#include "akns/dnls.hpp"
#include "akns/errors.hpp"
#include "akns/random.hpp"

using namespace akns;

namespace {

DnlsState randomState(std::uint64_t seed, std::size_t n, std::size_t nDim, std::size_t mDim, cplx theta = 1.0) {
    Rng rng(seed);
    DnlsState s = DnlsState::zeros(n, nDim, mDim, theta);
    for (std::size_t k = 0; k < n; ++k) {
        s.x[k] = rng.matrix(nDim, mDim, 0.5);
        s.y[k] = rng.matrix(mDim, nDim, 0.5);
    }
    return s;
}

std::vector<cplx> someLambdas() { return {0.3, {0.5, 0.2}, {-0.7, 0.1}, {0.0, 1.1}, 2.0}; }

double worst(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

SolitonParams periodicType1(int alpha = 1) {
    SolitonParams p;
    p.xi = std::polar(1.0, 2.0 * std::numbers::pi / 12.0);
    p.kappa = 1.3;
    p.x1 = 0.5;
    p.d1 = 0.3;
    p.flowAlpha = alpha;
    return p;
}

}  // namespace

TEST(Lax, ZeroFieldsAtZero) {
    const DnlsState s = DnlsState::zeros(4, 1, 1);
    EXPECT_EQ(maxAbsDiff(laxL(s, 0, 0.0), CMatrix::identity(2)), 0.0);
}

TEST(Lax, ScalarHandValue) {
    DnlsState s = DnlsState::zeros(3, 1, 1);
    s.x[1](0, 0) = 2.0;
    s.y[1](0, 0) = 3.0;
    const CMatrix l = laxL(s, 1, 0.0);
    EXPECT_EQ(l(0, 0), cplx(7.0));
    EXPECT_EQ(l(0, 1), cplx(2.0));
    EXPECT_EQ(l(1, 0), cplx(3.0));
    EXPECT_EQ(l(1, 1), cplx(1.0));
}

TEST(Lax, BlockZeroFields) {
    const DnlsState s = DnlsState::zeros(2, 1, 2);
    const CMatrix l = laxL(s, 0, 5.0);
    CMatrix expect = CMatrix::identity(3);
    expect(0, 0) = 6.0;
    EXPECT_EQ(maxAbsDiff(l, expect), 0.0);
}

TEST(Lax, PolyMatchesNumeric) {
    const DnlsState s = randomState(5, 4, 1, 2);
    for (const cplx l : someLambdas()) EXPECT_LT(maxAbsDiff(laxPoly(s, 2).eval(l), laxL(s, 2, l)), 1e-14);
}

TEST(Lax, SiteBounds) {
    const DnlsState s = randomState(5, 4, 1, 1);
    EXPECT_THROW(laxL(s, -1, 0.4), DimensionError);
    EXPECT_THROW(laxL(s, 4, 0.4), DimensionError);
    EXPECT_EQ(s.wrap(-1), 3u);
}

TEST(VOperator, ZeroFields) {
    const DnlsState s = DnlsState::zeros(3, 2, 1);
    CMatrix v1(3, 3);
    v1(0, 0) = 1.0;
    v1(1, 1) = 1.0;
    v1(2, 2) = -1.0;
    EXPECT_EQ(maxAbsDiff(vOperator(s, 0, FlowId{1}, 2.0), v1), 0.0);

    const DnlsState t = DnlsState::zeros(3, 1, 1);
    CMatrix v2(2, 2);
    v2(0, 0) = 2.0;
    v2(1, 1) = -2.0;
    EXPECT_EQ(maxAbsDiff(vOperator(t, 0, FlowId{2}, 2.0), v2), 0.0);
}

TEST(Eom, ZeroFields) {
    const auto v = eomRhs(DnlsState::zeros(5, 1, 2), FlowId{2});
    for (std::size_t n = 0; n < 5; ++n) {
        EXPECT_EQ(v.dx[n].maxAbs(), 0.0);
        EXPECT_EQ(v.dy[n].maxAbs(), 0.0);
    }
}

TEST(Eom, FirstFlowHandValue) {
    DnlsState s = DnlsState::zeros(5, 1, 1);
    s.x[0](0, 0) = 1.0;
    const auto v = eomRhs(s, FlowId{1});
    EXPECT_EQ(v.dx[0](0, 0), cplx(-1.0));
    EXPECT_EQ(v.dx[4](0, 0), cplx(1.0));
    EXPECT_EQ(v.dx[2](0, 0), cplx(0.0));
    for (const auto& dy : v.dy) EXPECT_EQ(dy.maxAbs(), 0.0);
}

TEST(Eom, ThirdFlowUnsupported) {
    EXPECT_THROW(eomRhs(DnlsState::zeros(3, 1, 1), FlowId{3}), FlowUnsupported);
}

TEST(Eom, MatchesSolitonDerivative) {
    const auto pair = makeRankOnePair(1, 1, 1.3, Closure::TripleProduct);
    for (int alpha = 1; alpha <= 2; ++alpha) {
        const OneSoliton sol(periodicType1(alpha));
        const DnlsState s = sampleState(sol, pair, 12, 0.4, 1, true);
        const FieldDerivative exact = sampleDerivative(sol, pair, 12, 0.4);
        const FieldDerivative rhs = eomRhs(s, FlowId{alpha});
        for (std::size_t n = 0; n < 12; ++n) {
            EXPECT_LT(maxAbsDiff(rhs.dx[n], exact.dx[n]), 1e-9);
            EXPECT_LT(maxAbsDiff(rhs.dy[n], exact.dy[n]), 1e-9);
        }
    }
}

TEST(ZeroCurvature, ZeroFields) {
    EXPECT_EQ(worst(zeroCurvatureResidual(DnlsState::zeros(4, 1, 1), FlowId{1}, someLambdas())), 0.0);
}

TEST(ZeroCurvature, RandomScalarFirstFlow) {
    EXPECT_LT(worst(zeroCurvatureResidual(randomState(11, 6, 1, 1), FlowId{1}, someLambdas())), 1e-12);
}

TEST(ZeroCurvature, RandomBlockSecondFlow) {
    EXPECT_LT(worst(zeroCurvatureResidual(randomState(12, 6, 1, 2), FlowId{2}, someLambdas())), 1e-11);
}

TEST(ZeroCurvature, GeneralTheta) {
    const DnlsState s = randomState(13, 6, 2, 1, 2.0);
    EXPECT_LT(worst(zeroCurvatureResidual(s, FlowId{1}, someLambdas())), 1e-12);
    EXPECT_LT(worst(zeroCurvatureResidual(s, FlowId{2}, someLambdas())), 1e-11);
}

TEST(ZeroCurvature, ThirdFlowOnSoliton) {
    const auto pair = makeRankOnePair(1, 1, 1.3, Closure::TripleProduct);
    const OneSoliton sol(periodicType1(3));
    const DnlsState s = sampleState(sol, pair, 12, 0.2, 1, true);
    EXPECT_LT(worst(zeroCurvatureResidual(s, FlowId{3}, sampleDerivative(sol, pair, 12, 0.2), someLambdas())), 1e-9);
    EXPECT_LT(flowThreeCompatibility(s, someLambdas()), 1e-9);
}

TEST(Evolve, ZeroFieldsUnchanged) {
    const DnlsState s = DnlsState::zeros(4, 1, 1);
    const auto traj = evolve(s, FlowId{1}, 0.01, 10);
    for (const auto& x : traj.states.back().x) EXPECT_EQ(x.maxAbs(), 0.0);
}

TEST(Evolve, SolitonTracksClosedForm) {
    const auto pair = makeRankOnePair(1, 1, 1.3, Closure::TripleProduct);
    const OneSoliton sol(periodicType1());
    const DnlsState s0 = sampleState(sol, pair, 12, 0.0, 1, true);
    const auto traj = evolve(s0, FlowId{1}, 1e-3, 1000, 500);
    ASSERT_EQ(traj.states.size(), 3u);
    EXPECT_DOUBLE_EQ(traj.times.back(), 1.0);
    const DnlsState exact = sampleState(sol, pair, 12, 1.0, 1, true);
    for (std::size_t n = 0; n < 12; ++n) {
        EXPECT_LT(maxAbsDiff(traj.states.back().x[n], exact.x[n]), 1e-6);
        EXPECT_LT(maxAbsDiff(traj.states.back().y[n], exact.y[n]), 1e-6);
    }
    const cplx h0 = localCharges(s0).h[0];
    EXPECT_LT(std::abs(localCharges(traj.states.back()).h[0] - h0) / std::abs(h0), 1e-8);
}

TEST(Evolve, BlowUpReported) {
    DnlsState s = DnlsState::zeros(3, 1, 1);
    s.x[0](0, 0) = 1e200;
    s.y[0](0, 0) = 1e200;
    EXPECT_THROW(evolve(s, FlowId{1}, 0.1, 10), BlowUp);
}

TEST(Dressing, RecursionReproducesExplicitV) {
    const auto pair = makeRankOnePair(1, 2, 1.3, Closure::TripleProduct);
    const OneSoliton sol(periodicType1());
    const DnlsState s = sampleState(sol, pair, 12, 0.2, 1, true);
    const auto k = dressingBlocks(sol, pair, 12, 0.2);
    EXPECT_LT(dressingConstraintResidual(s, k), 1e-12);
    const double tol[] = {1e-10, 1e-10, 1e-9};
    for (int alpha = 1; alpha <= 3; ++alpha) {
        const auto v = dressedVFromRecursion(s, k, alpha);
        for (long n = 0; n < 12; ++n)
            EXPECT_LT(maxCoefficientDiff(v[static_cast<std::size_t>(n)], vPoly(s, n, FlowId{alpha})), tol[alpha - 1])
                << "alpha " << alpha << " site " << n;
    }
}

TEST(Dressing, InconsistentBlocksRejected) {
    const DnlsState s = randomState(2, 4, 1, 1);
    Rng rng(9);
    std::vector<CMatrix> k;
    for (int n = 0; n < 4; ++n) k.push_back(rng.matrix(2, 2));
    EXPECT_THROW(dressedVFromRecursion(s, k, 1), InconsistentDressing);
}
