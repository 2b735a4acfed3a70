#include <gtest/gtest.h>

#include <cmath>

#include "akns/al.hpp"
#include "akns/conserved.hpp"
#include "akns/errors.hpp"
#include "akns/random.hpp"

using namespace akns;

namespace {

AlState randomAl(std::uint64_t seed, std::size_t n, std::size_t nDim, std::size_t mDim) {
    Rng rng(seed);
    AlState s = AlState::zeros(n, nDim, mDim);
    for (std::size_t k = 0; k < n; ++k) {
        s.bHat[k] = rng.matrix(nDim, mDim, 0.5);
        s.b[k] = rng.matrix(mDim, nDim, 0.5);
    }
    return s;
}

std::vector<cplx> someZ() { return {0.5, 1.0, 2.0, {0.0, 1.0}, {1.0, 1.0}}; }

double worst(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

AlDarbouxParams fundamental() {
    AlDarbouxParams p;
    p.bigQ = 1.1;
    p.bHat1 = 0.2;
    p.b1 = 0.3;
    p.a1 = 0.1;
    p.d1 = -0.1;
    p.pair = makeRankOnePair(1, 1, 1.0, Closure::TripleProduct);
    return p;
}

}  // namespace

TEST(AlLax, ZeroFields) {
    const CMatrix l = alLax(AlState::zeros(3, 2, 1), 0, 2.0);
    CMatrix expect(3, 3);
    expect(0, 0) = 2.0;
    expect(1, 1) = 2.0;
    expect(2, 2) = 0.5;
    EXPECT_EQ(maxAbsDiff(l, expect), 0.0);
}

TEST(AlLax, ScalarHandValue) {
    AlState s = AlState::zeros(2, 1, 1);
    s.bHat[0](0, 0) = 1.0;
    s.b[0](0, 0) = -1.0;
    const CMatrix l = alLax(s, 0, 1.0);
    EXPECT_EQ(l(0, 0), cplx(1.0));
    EXPECT_EQ(l(0, 1), cplx(1.0));
    EXPECT_EQ(l(1, 0), cplx(-1.0));
    EXPECT_EQ(l(1, 1), cplx(1.0));
}

TEST(AlLax, Determinant) {
    AlState s = AlState::zeros(1, 1, 1);
    s.bHat[0](0, 0) = {0.3, 0.2};
    s.b[0](0, 0) = {-0.4, 0.7};
    for (const cplx z : someZ()) {
        const CMatrix l = alLax(s, 0, z);
        EXPECT_LT(std::abs(l(0, 0) * l(1, 1) - l(0, 1) * l(1, 0) - (1.0 - s.bHat[0](0, 0) * s.b[0](0, 0))), 1e-15);
    }
}

TEST(AlV, ZeroFields) {
    const AlState s = AlState::zeros(3, 1, 2);
    EXPECT_EQ(alVOperator(s, 0, AlVariant::AL, 1.0).maxAbs(), 0.0);
    const CMatrix v = alVOperator(s, 0, AlVariant::Network, 2.0);
    CMatrix expect(3, 3);
    expect(0, 0) = 4.0;
    expect(1, 1) = 0.25;
    expect(2, 2) = 0.25;
    EXPECT_EQ(maxAbsDiff(v, expect), 0.0);
}

TEST(AlEom, HandValue) {
    AlState s = AlState::zeros(5, 1, 1);
    s.bHat[0](0, 0) = 1.0;
    const auto v = alEomRhs(s, AlVariant::AL);
    EXPECT_EQ(v.dbHat[0](0, 0), cplx(-2.0));
    EXPECT_EQ(v.dbHat[1](0, 0), cplx(1.0));
    EXPECT_EQ(v.dbHat[4](0, 0), cplx(1.0));
    EXPECT_EQ(v.dbHat[2](0, 0), cplx(0.0));
}

TEST(AlEom, NetworkSymmetricReduction) {
    Rng rng(4);
    AlState s = AlState::zeros(6, 1, 1);
    for (std::size_t n = 0; n < 6; ++n) {
        s.b[n](0, 0) = rng.complexNormal(0.5);
        s.bHat[n] = s.b[n];
    }
    const auto v = alEomRhs(s, AlVariant::Network);
    for (long n = 0; n < 6; ++n) {
        const cplx bp = s.bAt(n + 1)(0, 0), b = s.bAt(n)(0, 0), bm = s.bAt(n - 1)(0, 0);
        EXPECT_LT(std::abs(v.db[static_cast<std::size_t>(n)](0, 0) - (bp - bm - bp * b * b + b * b * bm)), 1e-14);
    }
}

TEST(AlZeroCurvature, Random) {
    for (const auto variant : {AlVariant::AL, AlVariant::Network}) {
        EXPECT_LT(worst(alZeroCurvatureResidual(randomAl(21, 6, 1, 1), variant, someZ())), 1e-10);
        EXPECT_LT(worst(alZeroCurvatureResidual(randomAl(22, 6, 1, 2), variant, someZ())), 1e-10);
    }
}

TEST(AlZeroCurvature, Vanishing) {
    AlState s = randomAl(23, 6, 1, 1);
    s.boundary = AlBoundary::Vanishing;
    EXPECT_LT(worst(alZeroCurvatureResidual(s, AlVariant::AL, someZ())), 1e-10);
}

TEST(AlEvolve, ZeroUnchanged) {
    const auto traj = alEvolve(AlState::zeros(4, 1, 1), AlVariant::AL, 0.1, 10);
    for (const auto& b : traj.states.back().b) EXPECT_EQ(b.maxAbs(), 0.0);
}

TEST(AlEvolve, TraceConserved) {
    const AlState s0 = randomAl(24, 8, 1, 1);
    const auto traj = alEvolve(s0, AlVariant::AL, 1e-3, 1000);
    for (const cplx z : {cplx(0.8), cplx(1.2, 0.3)}) {
        const cplx before = traceAt(s0, z);
        EXPECT_LT(std::abs(traceAt(traj.states.back(), z) - before) / std::abs(before), 1e-6);
    }
}

TEST(AlFundamental, ZeroSeeds) {
    AlDarbouxParams p = fundamental();
    p.bHat1 = 0.0;
    p.b1 = 0.0;
    const auto sol = alSolitonFundamental(p, 6);
    for (std::size_t n = 0; n < 6; ++n) {
        EXPECT_EQ(sol.state.bHat[n].maxAbs(), 0.0);
        EXPECT_EQ(sol.state.b[n].maxAbs(), 0.0);
    }
}

TEST(AlFundamental, SiteRelations) {
    const AlDarbouxParams p = fundamental();
    const auto sol = alSolitonFundamental(p, 8);
    const cplx q2 = p.bigQ * p.bigQ;
    for (std::size_t n = 0; n + 1 < 8; ++n) {
        EXPECT_LT(std::abs(sol.bHatScalar[n] - q2 * sol.bHatScalar[n + 1] * (1.0 + sol.d[n + 1])), 1e-14);
        EXPECT_LT(std::abs(sol.bScalar[n + 1] * (1.0 + sol.a[n + 1]) - q2 * sol.bScalar[n]), 1e-14);
        EXPECT_LT(std::abs(sol.a[n + 1] - sol.a[n] + sol.bHatScalar[n] * sol.bScalar[n] * (1.0 + sol.a[n])), 1e-14);
    }
}

TEST(AlFundamental, DarbouxIdentity) {
    const AlDarbouxParams p = fundamental();
    EXPECT_LT(alDarbouxIdentityResidual(alSolitonFundamental(p, 8), p, someZ()), 1e-9);
}

TEST(AlFundamental, SingularDressing) {
    AlDarbouxParams p = fundamental();
    p.a1 = 0.0;
    p.bHat1 = 1.0;
    p.b1 = 1.0;  // a_2 = -1 makes 1 + kappa a_2 vanish
    EXPECT_THROW(alSolitonFundamental(p, 4), SingularDressing);
}

TEST(AlOscillator, Dispersion) {
    EXPECT_NEAR(std::abs(dispersion(2.0, 1, LinearScheme::SymmetricAl) - 0.5), 0.0, 1e-15);
}

TEST(AlOscillator, ZeroSeed) {
    AlDarbouxParams p = fundamental();
    p.bigQ = 1.0;
    p.zeta = 1.0;
    const LinearSolution zero({{0.0, 2.0}}, 1, LinearScheme::SymmetricAl);
    const AlState s = alSolitonOscillator(p, zero, 5);
    for (std::size_t n = 0; n < 5; ++n) EXPECT_EQ(s.bHat[n].maxAbs(), 0.0);
}

TEST(AlOscillator, SolvesFlow) {
    AlDarbouxParams p = fundamental();
    p.bigQ = 1.2;
    p.kappa = 0.7;
    p.zeta = p.kappa / (p.bigQ * p.bigQ);
    p.b1 = 0.4;
    const LinearSolution seed({{0.3, 1.3}, {0.2, {0.6, 0.4}}}, 1, LinearScheme::SymmetricAl);
    EXPECT_LT(alOscillatorEomResidual(p, seed, 10, -3, 0.4), 1e-8);
}

TEST(AlOscillator, ZetaConstraint) {
    AlDarbouxParams p = fundamental();
    p.kappa = 0.7;
    p.zeta = 2.0;
    const LinearSolution seed({{0.3, 1.3}}, 1, LinearScheme::SymmetricAl);
    EXPECT_THROW(alSolitonOscillator(p, seed, 4), InconsistentDressing);
}
