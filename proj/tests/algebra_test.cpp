#include <gtest/gtest.h>

#include "akns/algebra.hpp"
#include "akns/errors.hpp"
#include "akns/random.hpp"

using namespace akns;

namespace {

CMatrix diag(std::vector<cplx> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

}  // namespace

TEST(SpectralPoly, ScalarSquare) {
    const auto p = SpectralMatrixPoly::monomial(CMatrix::identity(2), 1);
    const auto sq = polyMul(p, p);
    EXPECT_EQ(sq.minDegree(), 2);
    EXPECT_EQ(sq.maxDegree(), 2);
    EXPECT_EQ(maxAbsDiff(sq.coefficient(2), CMatrix::identity(2)), 0.0);
}

TEST(SpectralPoly, DifferenceOfSquares) {
    const CMatrix i2 = CMatrix::identity(2);
    const SpectralMatrixPoly p(-1, {i2, CMatrix(2, 2), i2});
    const SpectralMatrixPoly q(-1, {-1.0 * i2, CMatrix(2, 2), i2});
    const auto r = polyMul(p, q).normalized();
    EXPECT_EQ(r.minDegree(), -2);
    EXPECT_EQ(r.maxDegree(), 2);
    EXPECT_EQ(maxAbsDiff(r.coefficient(2), i2), 0.0);
    EXPECT_EQ(maxAbsDiff(r.coefficient(-2), -1.0 * i2), 0.0);
    EXPECT_EQ(r.coefficient(0).maxAbs(), 0.0);
}

TEST(SpectralPoly, ProductMatchesPointwise) {
    Rng rng(7);
    CMatrix sigmaPlus(2, 2);
    sigmaPlus(0, 0) = 1.0;
    const SpectralMatrixPoly p(0, {CMatrix::identity(2) + rng.matrix(2, 2), sigmaPlus});
    const SpectralMatrixPoly q(0, {CMatrix::identity(2) + rng.matrix(2, 2), sigmaPlus});
    const auto pq = polyMul(p, q);
    for (int k = 0; k < 5; ++k) {
        const cplx s = rng.complexNormal();
        EXPECT_LT(maxAbsDiff(pq.eval(s), p.eval(s) * q.eval(s)), 1e-12);
    }
}

TEST(SpectralPoly, NormalizedZero) {
    const SpectralMatrixPoly z(-2, {CMatrix(2, 2), CMatrix(2, 2)});
    const auto n = z.normalized();
    EXPECT_EQ(n.minDegree(), 0);
    EXPECT_EQ(n.maxDegree(), 0);
}

TEST(SpectralPoly, ShapeMismatch) {
    const auto a = SpectralMatrixPoly::constant(CMatrix::identity(2));
    const auto b = SpectralMatrixPoly::constant(CMatrix::identity(3));
    EXPECT_THROW(polyMul(a, b), DimensionError);
}

TEST(RankOnePair, TripleScalar) {
    const auto p = makeRankOnePair(1, 1, 1.0, Closure::TripleProduct);
    EXPECT_EQ(p.bHat(0, 0), cplx(1.0));
    EXPECT_EQ(p.b(0, 0), cplx(1.0));
    EXPECT_EQ(p.tripleResidual(), 0.0);
}

TEST(RankOnePair, TripleRectangular) {
    const auto p = makeRankOnePair(1, 2, 2.0, Closure::TripleProduct);
    ASSERT_EQ(p.bHat.rows(), 1u);
    ASSERT_EQ(p.bHat.cols(), 2u);
    EXPECT_EQ(p.bHat(0, 0), cplx(1.0));
    EXPECT_EQ(p.bHat(0, 1), cplx(0.0));
    EXPECT_EQ(p.b(0, 0), cplx(2.0));
    EXPECT_EQ(p.b(1, 0), cplx(0.0));
    EXPECT_EQ(maxAbsDiff(p.bHat * p.b * p.bHat, 2.0 * p.bHat), 0.0);
}

TEST(RankOnePair, Identity) {
    const auto p = makeRankOnePair(2, 2, 1.0, Closure::Identity);
    EXPECT_EQ(maxAbsDiff(p.bHat * p.b, CMatrix::identity(2)), 0.0);
    EXPECT_THROW(makeRankOnePair(1, 2, 1.0, Closure::Identity), VariantUnavailable);
    EXPECT_THROW(makeRankOnePair(1, 1, 0.0, Closure::TripleProduct), VariantUnavailable);
}

TEST(DenseSolve, Identity) {
    Rng rng(1);
    const CMatrix rhs = rng.matrix(3, 2);
    EXPECT_EQ(maxAbsDiff(denseSolve(CMatrix::identity(3), rhs), rhs), 0.0);
}

TEST(DenseSolve, Diagonal) {
    const CMatrix x = denseSolve(diag({2.0, 4.0}), CMatrix::filled(2, 1, 1.0));
    EXPECT_EQ(x(0, 0), cplx(0.5));
    EXPECT_EQ(x(1, 0), cplx(0.25));
}

TEST(DenseSolve, RandomResidual) {
    Rng rng(3);
    const CMatrix a = rng.matrix(20, 20) + 10.0 * CMatrix::identity(20);
    const CMatrix rhs = rng.matrix(20, 3);
    EXPECT_LT((a * denseSolve(a, rhs) - rhs).maxAbs(), 1e-10);
}

TEST(DenseSolve, Singular) {
    EXPECT_THROW(denseSolve(CMatrix::filled(2, 2, 1.0), CMatrix::filled(2, 1, 1.0)), SingularMatrix);
}

TEST(BlockMatrix, Layout) {
    const CMatrix m = blockMatrix(diag({1.0}), CMatrix::filled(1, 2, 2.0), CMatrix::filled(2, 1, 3.0),
                                  CMatrix::identity(2));
    EXPECT_EQ(m.rows(), 3u);
    EXPECT_EQ(m(0, 2), cplx(2.0));
    EXPECT_EQ(m(2, 0), cplx(3.0));
    EXPECT_EQ(m(2, 2), cplx(1.0));
}
