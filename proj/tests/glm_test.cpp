#include <gtest/gtest.h>

#include <cmath>

#include "akns/errors.hpp"
#include "akns/glm.hpp"
#include "akns/random.hpp"

using namespace akns;

namespace {

const double kLn2 = std::log(2.0);

RankOnePair scalarPair() { return makeRankOnePair(1, 1, 1.0, Closure::TripleProduct); }

GlmConfig window(long n, GlmScheme scheme = GlmScheme::ForwardBackward, double t = 0.0) {
    GlmConfig cfg;
    cfg.scheme = scheme;
    cfg.windowN = n;
    cfg.firstIndex = 0;
    cfg.time = t;
    return cfg;
}

double closedFormGap(const GlmSolution& sol, const GlmClosedForm& cf, long first, long last) {
    double worst = 0.0;
    for (long i = first; i <= last; ++i)
        for (long j = i; j <= last; ++j)
            worst = std::max({worst, maxAbsDiff(sol.b(i, j), cf.b.at(i, j)), maxAbsDiff(sol.c(i, j), cf.c.at(i, j))});
    return worst;
}

}  // namespace

TEST(DifferenceOps, SmallestWindow) {
    const DifferenceOps ops = buildDifferenceOps(1);
    IntMatrix d(3, 3);
    d(0, 0) = d(1, 1) = d(2, 2) = -1;
    d(0, 1) = d(1, 2) = 1;
    EXPECT_EQ(ops.d, d);
    IntMatrix ds(3, 3);
    ds(0, 0) = ds(1, 1) = ds(2, 2) = -1;
    ds(1, 0) = ds(2, 1) = 1;
    EXPECT_EQ(ops.dStar, ds);
}

TEST(DifferenceOps, SquareRows) {
    const IntMatrix d2 = power(buildDifferenceOps(3).d, 2);
    for (std::size_t i = 0; i + 2 < d2.rows(); ++i) {
        EXPECT_EQ(d2(i, i), 1);
        EXPECT_EQ(d2(i, i + 1), -2);
        EXPECT_EQ(d2(i, i + 2), 1);
    }
}

TEST(DifferenceOps, BinomialPower) {
    const DifferenceOps ops = buildDifferenceOps(4);
    for (int alpha = 1; alpha <= 4; ++alpha) {
        EXPECT_EQ(binomialPower(4, alpha, false), power(ops.d, alpha));
        EXPECT_EQ(binomialPower(4, alpha, true), power(ops.dStar, alpha));
    }
    // (f D*^3)_ij = sum_k (-1)^(3-k) C(3,k) f_{i,j+k}
    Rng rng(2);
    const CMatrix f = rng.matrix(9, 9);
    const CMatrix g = f * binomialPower(4, 3, true).toComplex();
    const int c[] = {-1, 3, -3, 1};
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j + 3 < 9; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k <= 3; ++k) s += static_cast<double>(c[k]) * f(i, j + k);
            EXPECT_LT(std::abs(g(i, j) - s), 1e-13);
        }
}

TEST(Dispersion, Values) {
    GlmConfig cfg;
    EXPECT_EQ(glmDispersion(0.3, 0.0, cfg).rateHat, cplx(0.0));
    EXPECT_NEAR(std::abs(glmDispersion(kLn2, 0.0, cfg).rate - 1.0), 0.0, 1e-15);
    cfg.scheme = GlmScheme::Symmetric;
    EXPECT_NEAR(std::abs(glmDispersion(0.0, kLn2, cfg).rateHat - 0.5), 0.0, 1e-15);
    cfg.alpha = 2;
    EXPECT_THROW(glmDispersion(0.1, 0.1, cfg), FlowUnsupported);
}

TEST(HankelData, SolvesLinearLattice) {
    const auto pair = makeRankOnePair(1, 2, 1.0, Closure::TripleProduct);
    for (const auto scheme : {GlmScheme::ForwardBackward, GlmScheme::Symmetric}) {
        GlmConfig cfg = window(6, scheme, 0.3);
        cfg.w = {1.2, 0.1};
        const GlmSystem sys = buildHankelData({{0.4, 0.6, pair.b, pair.bHat}, {0.7, 0.3, pair.b, pair.bHat}}, cfg);
        Rng rng(5);
        std::vector<long> ms;
        for (int k = 0; k < 10; ++k) ms.push_back(static_cast<long>(rng.uniform(1.0, 20.0)));
        EXPECT_LT(linearResidual(sys, ms, 0.3), 1e-12);
    }
}

TEST(HankelData, Overflow) {
    const auto pair = scalarPair();
    EXPECT_THROW(buildHankelData({{-50.0, 0.5, pair.b, pair.bHat}}, window(8)), ModeOverflow);
}

TEST(SolveGlm, ZeroData) {
    const auto pair = scalarPair();
    const GlmSolution sol = solveGlm(buildHankelData({{0.5, 0.5, 0.0 * pair.b, 0.0 * pair.bHat}}, window(4)));
    EXPECT_EQ(sol.kPlus().maxAbs(), 0.0);
    EXPECT_EQ(sol.kMinus().maxAbs(), 0.0);
    for (const auto& x : extractLocalFields(sol).x) EXPECT_EQ(x.maxAbs(), 0.0);
}

TEST(SolveGlm, Factorization) {
    const auto pair = makeRankOnePair(1, 2, 1.0, Closure::TripleProduct);
    for (const auto scheme : {GlmScheme::ForwardBackward, GlmScheme::Symmetric}) {
        const GlmSolution sol = solveGlm(
            buildHankelData({{0.5, 0.6, pair.b, pair.bHat}, {0.8, {0.7, 0.2}, 0.5 * pair.b, pair.bHat}},
                            window(10, scheme, 0.2)));
        EXPECT_LT(sol.factorizationResidual(), 1e-10);
        EXPECT_LT(sol.dglmResidual(), 1e-10);
        // K- is lower triangular with vanishing diagonal blocks
        EXPECT_LT(sol.kMinusBlock(3, 3).maxAbs(), 1e-10);
        EXPECT_EQ(sol.kMinusBlock(3, 4).maxAbs(), 0.0);
    }
}

TEST(ClosedForm, HandValue) {
    // h_1 = (1/16) / (1/4 - 1)^2 = 1/9, B_11 = -(1/4) / (1 - 1/9)
    const GlmClosedForm cf = oneSolitonClosedForm(kLn2, kLn2, scalarPair(), window(8));
    EXPECT_NEAR(std::abs(cf.b.at(1, 1)(0, 0) + 9.0 / 32.0), 0.0, 1e-15);
}

TEST(ClosedForm, MatchesSolve) {
    const auto pair = scalarPair();
    for (const auto scheme : {GlmScheme::ForwardBackward, GlmScheme::Symmetric}) {
        const GlmConfig cfg = window(12, scheme, 0.4);
        const GlmSolution sol = solveGlm(buildHankelData({{0.5, 0.5, pair.b, pair.bHat}}, cfg));
        EXPECT_LT(closedFormGap(sol, oneSolitonClosedForm(0.5, 0.5, pair, cfg), 0, 24), 1e-10);
    }
    // the closed form assumes data vanishing past the window, so the window must outlast e^{-2 lambda m}
    const GlmConfig cfg = window(20);
    const GlmSolution sol = solveGlm(buildHankelData({{kLn2, kLn2, pair.b, pair.bHat}}, cfg));
    EXPECT_LT(closedFormGap(sol, oneSolitonClosedForm(kLn2, kLn2, pair, cfg), 0, 40), 1e-10);
}

TEST(ClosedForm, DecayLimit) {
    const GlmClosedForm cf = oneSolitonClosedForm(0.5, 0.5, scalarPair(), window(20));
    EXPECT_LT(std::abs(cf.b.at(30, 35)(0, 0) + std::exp(-0.5 * 65.0)), 1e-20);
}

TEST(ClosedForm, Degenerate) {
    EXPECT_THROW(oneSolitonClosedForm(0.5, -0.5, scalarPair(), window(4)), DegenerateMode);
}

TEST(LocalFields, MatchType2) {
    const auto pair = scalarPair();
    const GlmConfig cfg = window(32);
    const double lamHat = 0.5;
    const double lam = std::log(2.0 - std::exp(-2.0 * lamHat)) / 2.0;
    const GlmSolution sol = solveGlm(buildHankelData({{lam, lamHat, pair.b, pair.bHat}}, cfg));
    const OneSoliton t2(matchType2Parameters(lam, lamHat, pair, cfg));
    const LocalFields lf = extractLocalFields(sol);
    std::vector<cplx> ux, vx, uy, vy;
    for (long n = 1; n <= 24; ++n) {
        ux.push_back(lf.x[static_cast<std::size_t>(n)](0, 0));
        vx.push_back(t2.at(n, 0.0).x.v);
        uy.push_back(lf.y[static_cast<std::size_t>(n)](0, 0));
        vy.push_back(t2.at(n - 1, 0.0).y.v);
    }
    EXPECT_LT(fitProportionality(ux, vx).relativeError, 1e-8);
    EXPECT_LT(fitProportionality(uy, vy).relativeError, 1e-8);
}

TEST(LocalFields, MatchNeedsBalancedModes) {
    EXPECT_ANY_THROW(matchType2Parameters(0.5, 0.5, scalarPair(), window(8)));
}

TEST(Fit, Proportional) {
    const std::vector<cplx> v{1.0, {0.0, 2.0}, -3.0};
    std::vector<cplx> u;
    for (const cplx x : v) u.push_back(cplx(2.0, -1.0) * x);
    const ProportionalFit fit = fitProportionality(u, v);
    EXPECT_LT(std::abs(fit.constant - cplx(2.0, -1.0)), 1e-15);
    EXPECT_LT(fit.relativeError, 1e-15);
}
