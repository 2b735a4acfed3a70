#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace akns {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Shapes are checked on every arithmetic op.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static CMatrix identity(std::size_t n);
    static CMatrix filled(std::size_t rows, std::size_t cols, cplx value);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }
    bool isSquare() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<cplx>& entries() const noexcept { return data_; }

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(cplx s);

    CMatrix transpose() const;
    CMatrix adjoint() const;
    CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void setBlock(std::size_t r0, std::size_t c0, const CMatrix& m);
    cplx trace() const;

    // max |entry|; this is the norm used for every residual in the library
    double maxAbs() const;
    bool allFinite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(CMatrix a, cplx s);

double maxAbsDiff(const CMatrix& a, const CMatrix& b);

// [[a, b], [c, d]]; a and d must be square, shapes must tile.
CMatrix blockMatrix(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d);

// Gaussian elimination with partial pivoting. Throws SingularMatrix when a pivot
// falls below 1e-14 * a.maxAbs().
CMatrix denseSolve(const CMatrix& a, const CMatrix& rhs);

// Laurent polynomial sum_k coefficient(k) s^k for k in [minDegree, maxDegree].
class SpectralMatrixPoly {
public:
    SpectralMatrixPoly(int minDegree, std::vector<CMatrix> coefficients);
    static SpectralMatrixPoly constant(const CMatrix& c) { return monomial(c, 0); }
    static SpectralMatrixPoly monomial(const CMatrix& c, int degree);

    int minDegree() const noexcept { return minDegree_; }
    int maxDegree() const noexcept { return minDegree_ + static_cast<int>(coeffs_.size()) - 1; }
    std::size_t dim() const noexcept { return coeffs_.front().rows(); }
    const std::vector<CMatrix>& coefficients() const noexcept { return coeffs_; }
    // zero matrix outside the stored range
    CMatrix coefficient(int degree) const;

    CMatrix eval(cplx s) const;

    // Drops leading/trailing coefficients with maxAbs < tol. The zero polynomial
    // normalizes to a single zero coefficient at degree 0.
    SpectralMatrixPoly normalized(double tol = 1e-13) const;

    SpectralMatrixPoly& operator+=(const SpectralMatrixPoly& other);
    SpectralMatrixPoly& operator-=(const SpectralMatrixPoly& other);

private:
    int minDegree_;
    std::vector<CMatrix> coeffs_;
};

SpectralMatrixPoly operator+(SpectralMatrixPoly a, const SpectralMatrixPoly& b);
SpectralMatrixPoly operator-(SpectralMatrixPoly a, const SpectralMatrixPoly& b);
SpectralMatrixPoly operator*(cplx s, const SpectralMatrixPoly& p);

SpectralMatrixPoly polyMul(const SpectralMatrixPoly& p, const SpectralMatrixPoly& q);

// max over all degrees of |p_k - q_k|, after aligning degree ranges
double maxCoefficientDiff(const SpectralMatrixPoly& p, const SpectralMatrixPoly& q);
bool approxEqual(const SpectralMatrixPoly& p, const SpectralMatrixPoly& q, double tol = 1e-13);

enum class Closure { TripleProduct, Identity };

// (bHat, b) with bHat b bHat = kappa bHat and b bHat b = kappa b.
struct RankOnePair {
    CMatrix bHat;  // N x M
    CMatrix b;     // M x N
    cplx kappa;
    Closure closure = Closure::TripleProduct;

    std::size_t nDim() const noexcept { return bHat.rows(); }
    std::size_t mDim() const noexcept { return bHat.cols(); }
    double tripleResidual() const;
    // max of |bHat b - kappa I| and |b bHat - kappa I|; only meaningful when N == M
    double identityResidual() const;
};

// Default constructions: single unit entry for the triple closure; bHat = U,
// b = kappa U^* for the identity closure (U defaults to the identity).
RankOnePair makeRankOnePair(std::size_t nDim, std::size_t mDim, cplx kappa, Closure closure,
                            const std::optional<CMatrix>& unitary = std::nullopt);

}  // namespace akns
