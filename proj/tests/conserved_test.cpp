#include <gtest/gtest.h>

#include <numbers>

#include "akns/conserved.hpp"
#include "akns/darboux.hpp"
#include "akns/errors.hpp"
#include "akns/random.hpp"

using namespace akns;

namespace {

DnlsState randomScalar(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    DnlsState s = DnlsState::zeros(n, 1, 1);
    for (std::size_t k = 0; k < n; ++k) {
        s.x[k] = rng.matrix(1, 1, 0.5);
        s.y[k] = rng.matrix(1, 1, 0.5);
    }
    return s;
}

}  // namespace

TEST(Transfer, SingleSite) {
    const DnlsState s = randomScalar(1, 1);
    EXPECT_LT(maxCoefficientDiff(transferMatrix(s), laxPoly(s, 0)), 1e-15);
}

TEST(Transfer, ZeroFieldSquare) {
    const DnlsState s = DnlsState::zeros(2, 1, 1);
    const auto t = transferMatrix(s);
    const auto l = laxPoly(s, 0);
    EXPECT_LT(maxCoefficientDiff(t, polyMul(l, l)), 1e-15);
    // (lambda + 1)^2 in the corner, 1 below
    EXPECT_EQ(t.eval(2.0)(0, 0), cplx(9.0));
    EXPECT_EQ(t.eval(2.0)(1, 1), cplx(1.0));
}

TEST(Transfer, MatchesProduct) {
    const DnlsState s = randomScalar(2, 6);
    const cplx l0{0.4, -0.3};
    CMatrix prod = CMatrix::identity(2);
    for (long n = 0; n < 6; ++n) prod = laxL(s, n, l0) * prod;
    EXPECT_LT(maxAbsDiff(transferMatrix(s).eval(l0), prod), 1e-11);
    EXPECT_LT(std::abs(traceAt(s, l0) - prod.trace()), 1e-11);
}

TEST(Transfer, AlMatchesProduct) {
    Rng rng(3);
    AlState s = AlState::zeros(5, 1, 2);
    for (std::size_t n = 0; n < 5; ++n) {
        s.bHat[n] = rng.matrix(1, 2, 0.5);
        s.b[n] = rng.matrix(2, 1, 0.5);
    }
    const cplx z{1.1, 0.2};
    CMatrix prod = CMatrix::identity(3);
    for (long n = 0; n < 5; ++n) prod = alLax(s, n, z) * prod;
    EXPECT_LT(maxAbsDiff(transferMatrix(s).eval(z), prod), 1e-11);
}

TEST(Charges, ZeroFields) {
    for (const std::size_t width : {1u, 2u}) {
        const double n = 7.0 * static_cast<double>(width);
        const auto h = localCharges(DnlsState::zeros(7, width, 1)).h;
        ASSERT_EQ(h.size(), 4u);
        EXPECT_NEAR(std::abs(h[0] - n), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(h[1] + n / 2.0), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(h[2] - n / 3.0), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(h[3] + n / 4.0), 0.0, 1e-14);
    }
}

TEST(Charges, TraceNormalization) {
    const auto tau = normalizedTraceCoefficients(randomScalar(4, 6));
    ASSERT_EQ(tau.size(), 5u);
    EXPECT_LT(std::abs(tau[0] - 1.0), 1e-15);
    EXPECT_THROW(normalizedTraceCoefficients(DnlsState::zeros(3, 2, 1)), NotNormalized);
}

TEST(Charges, SecondChargeFromTrace) {
    // even three sites are enough for H_1 and H_2
    const DnlsState s = randomScalar(5, 3);
    const auto rep = localCharges(s);
    EXPECT_LT(std::abs(rep.h[1] - (rep.tau[2] - 0.5 * rep.h[0] * rep.h[0])), 1e-9);
}

TEST(Charges, ClosedFormsMatchRecursion) {
    for (const std::size_t n : {5u, 8u}) {
        const auto rep = localCharges(randomScalar(6, n));
        const auto h = chargeRecursion(rep.tau, 4);
        for (std::size_t k = 0; k < 4; ++k) EXPECT_LT(std::abs(h[k] - rep.h[k]), 1e-9) << "H" << k + 1;
    }
}

TEST(Charges, ShortLatticeAliases) {
    // with N = k the closed form H_k picks up wrapped terms the trace expansion does not
    const auto rep = localCharges(randomScalar(7, 3));
    EXPECT_GT(std::abs(chargeRecursion(rep.tau, 4)[3] - rep.h[3]), 1e-6);
}

TEST(ChargeRecursion, ExplicitRelations) {
    Rng rng(8);
    std::vector<cplx> tau{1.0};
    for (int k = 0; k < 4; ++k) tau.push_back(rng.complexNormal());
    const auto h = chargeRecursion(tau, 4);
    const cplx t1 = tau[1], t2 = tau[2], t3 = tau[3], t4 = tau[4];
    EXPECT_LT(std::abs(h[0] - t1), 1e-15);
    EXPECT_LT(std::abs(h[1] - (t2 - t1 * t1 / 2.0)), 1e-14);
    EXPECT_LT(std::abs(h[2] - (t3 - t1 * t2 + t1 * t1 * t1 / 3.0)), 1e-14);
    EXPECT_LT(std::abs(h[3] - (t4 - t1 * t3 - t2 * t2 / 2.0 + t1 * t1 * t2 - t1 * t1 * t1 * t1 / 4.0)), 1e-14);
}

TEST(ChargeRecursion, VanishingFirst) {
    const auto h = chargeRecursion({1.0, 0.0, 0.7, 0.0, 0.0}, 2);
    EXPECT_EQ(h[1], cplx(0.7));
}

TEST(ChargeRecursion, Orders) {
    const std::vector<cplx> tau{1.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
    EXPECT_THROW(chargeRecursion(tau, 5), UnvalidatedOrder);
    EXPECT_THROW(chargeRecursion(tau, 0), UnvalidatedOrder);
    EXPECT_THROW(chargeRecursion({1.0, 0.1}, 3), DimensionError);
    const auto mult = chargeRecursion(tau, 7, ChargeMode::Experimental, ChargeWeight::Multinomial);
    const auto maxf = chargeRecursion(tau, 7, ChargeMode::Experimental, ChargeWeight::MaxFactorial);
    const auto valid = chargeRecursion(tau, 4);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_LT(std::abs(mult[k] - valid[k]), 1e-14);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_LT(std::abs(mult[k] - maxf[k]), 1e-14);
    EXPECT_GT(std::abs(mult[5] - maxf[5]), 1e-6);
}

TEST(ChargeRecursion, ExperimentalIsLogSeries) {
    // tau = (1, c, 0, ...) is log(1 + c s), so H_k = -(-c)^k / k
    const cplx c{0.3, 0.4};
    std::vector<cplx> tau{1.0, c, 0.0, 0.0, 0.0, 0.0, 0.0};
    const auto h = chargeRecursion(tau, 6, ChargeMode::Experimental);
    cplx p = 1.0;
    for (int k = 1; k <= 6; ++k) {
        p *= -c;
        EXPECT_LT(std::abs(h[static_cast<std::size_t>(k - 1)] + p / static_cast<double>(k)), 1e-14) << k;
    }
}

TEST(Charges, SolitonDrift) {
    SolitonParams p;
    p.xi = std::polar(1.0, 2.0 * std::numbers::pi / 8.0);
    p.kappa = 1.3;
    p.x1 = 0.5;
    p.d1 = 0.3;
    const auto pair = makeRankOnePair(1, 1, 1.3, Closure::TripleProduct);
    const DnlsState s0 = solitonType1(p, pair, 8);
    const auto h0 = localCharges(s0).h;
    const auto h1 = localCharges(evolve(s0, FlowId{1}, 1e-3, 1000).states.back()).h;
    for (std::size_t k = 0; k < 4; ++k) EXPECT_LT(std::abs(h1[k] - h0[k]), 1e-7);
}
