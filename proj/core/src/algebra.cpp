#include "akns/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "akns/errors.hpp"

namespace akns {

namespace {

std::string shape(const CMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void requireSameShape(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(op) + ": " + shape(a) + " vs " + shape(b));
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
    if (data_.size() != rows * cols)
        throw DimensionError("entry count " + std::to_string(data_.size()) + " does not match " +
                             std::to_string(rows) + "x" + std::to_string(cols));
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::filled(std::size_t rows, std::size_t cols, cplx value) {
    return CMatrix(rows, cols, std::vector<cplx>(rows * cols, value));
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    requireSameShape(*this, other, "add");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    requireSameShape(*this, other, "subtract");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

CMatrix CMatrix::transpose() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

CMatrix CMatrix::adjoint() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

CMatrix CMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range of " + shape(*this));
    CMatrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
}

void CMatrix::setBlock(std::size_t r0, std::size_t c0, const CMatrix& m) {
    if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_)
        throw DimensionError("block " + shape(m) + " does not fit into " + shape(*this));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

cplx CMatrix::trace() const {
    if (!isSquare()) throw DimensionError("trace of non-square " + shape(*this));
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::maxAbs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

bool CMatrix::allFinite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator-(CMatrix a) { return a *= -1.0; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, cplx s) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("multiply: " + shape(a) + " * " + shape(b));
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

double maxAbsDiff(const CMatrix& a, const CMatrix& b) {
    requireSameShape(a, b, "compare");
    double m = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    return m;
}

CMatrix blockMatrix(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d) {
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
        throw DimensionError("blockMatrix: blocks do not tile");
    CMatrix m(a.rows() + c.rows(), a.cols() + b.cols());
    m.setBlock(0, 0, a);
    m.setBlock(0, a.cols(), b);
    m.setBlock(a.rows(), 0, c);
    m.setBlock(a.rows(), a.cols(), d);
    return m;
}

CMatrix denseSolve(const CMatrix& a, const CMatrix& rhs) {
    if (!a.isSquare()) throw DimensionError("denseSolve: matrix " + shape(a) + " not square");
    if (rhs.rows() != a.rows()) throw DimensionError("denseSolve: rhs " + shape(rhs) + " vs " + shape(a));
    const std::size_t n = a.rows();
    const std::size_t m = rhs.cols();
    const double threshold = 1e-14 * a.maxAbs();
    CMatrix lu = a;
    CMatrix x = rhs;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu(i, k)) > best) {
                best = std::abs(lu(i, k));
                p = i;
            }
        }
        if (!(best > threshold)) throw SingularMatrix("pivot " + std::to_string(best) + " in column " + std::to_string(k));
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            for (std::size_t j = 0; j < m; ++j) std::swap(x(k, j), x(p, j));
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = lu(i, k) / lu(k, k);
            if (f == cplx{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            for (std::size_t j = 0; j < m; ++j) x(i, j) -= f * x(k, j);
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t j = 0; j < m; ++j) {
            cplx s = x(k, j);
            for (std::size_t i = k + 1; i < n; ++i) s -= lu(k, i) * x(i, j);
            x(k, j) = s / lu(k, k);
        }
    }
    return x;
}

SpectralMatrixPoly::SpectralMatrixPoly(int minDegree, std::vector<CMatrix> coefficients)
    : minDegree_(minDegree), coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) throw DimensionError("polynomial needs at least one coefficient");
    const std::size_t d = coeffs_.front().rows();
    for (const auto& c : coeffs_)
        if (!c.isSquare() || c.rows() != d) throw DimensionError("polynomial coefficients must share one square dimension");
}

SpectralMatrixPoly SpectralMatrixPoly::monomial(const CMatrix& c, int degree) {
    return SpectralMatrixPoly(degree, {c});
}

CMatrix SpectralMatrixPoly::coefficient(int degree) const {
    if (degree < minDegree_ || degree > maxDegree()) return CMatrix(dim(), dim());
    return coeffs_[static_cast<std::size_t>(degree - minDegree_)];
}

CMatrix SpectralMatrixPoly::eval(cplx s) const {
    if (s == cplx{} && minDegree_ < 0) throw SpectralPole("negative powers at zero spectral parameter");
    // Horner from the top degree, then rescale by s^minDegree
    CMatrix acc = coeffs_.back();
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
        acc *= s;
        acc += coeffs_[k];
    }
    if (minDegree_ != 0) acc *= std::pow(s, minDegree_);
    return acc;
}

SpectralMatrixPoly SpectralMatrixPoly::normalized(double tol) const {
    std::size_t lo = 0;
    std::size_t hi = coeffs_.size();
    while (lo < hi && coeffs_[lo].maxAbs() < tol) ++lo;
    while (hi > lo && coeffs_[hi - 1].maxAbs() < tol) --hi;
    if (lo == hi) return SpectralMatrixPoly(0, {CMatrix(dim(), dim())});
    return SpectralMatrixPoly(minDegree_ + static_cast<int>(lo),
                              std::vector<CMatrix>(coeffs_.begin() + lo, coeffs_.begin() + hi));
}

namespace {

SpectralMatrixPoly combine(const SpectralMatrixPoly& a, const SpectralMatrixPoly& b, double sign) {
    if (a.dim() != b.dim()) throw DimensionError("polynomial dimensions differ");
    const int lo = std::min(a.minDegree(), b.minDegree());
    const int hi = std::max(a.maxDegree(), b.maxDegree());
    std::vector<CMatrix> c;
    c.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int k = lo; k <= hi; ++k) c.push_back(a.coefficient(k) + sign * b.coefficient(k));
    return SpectralMatrixPoly(lo, std::move(c));
}

}  // namespace

SpectralMatrixPoly& SpectralMatrixPoly::operator+=(const SpectralMatrixPoly& other) {
    return *this = combine(*this, other, 1.0);
}

SpectralMatrixPoly& SpectralMatrixPoly::operator-=(const SpectralMatrixPoly& other) {
    return *this = combine(*this, other, -1.0);
}

SpectralMatrixPoly operator+(SpectralMatrixPoly a, const SpectralMatrixPoly& b) { return a += b; }
SpectralMatrixPoly operator-(SpectralMatrixPoly a, const SpectralMatrixPoly& b) { return a -= b; }

SpectralMatrixPoly operator*(cplx s, const SpectralMatrixPoly& p) {
    std::vector<CMatrix> c = p.coefficients();
    for (auto& m : c) m *= s;
    return SpectralMatrixPoly(p.minDegree(), std::move(c));
}

SpectralMatrixPoly polyMul(const SpectralMatrixPoly& p, const SpectralMatrixPoly& q) {
    if (p.dim() != q.dim()) throw DimensionError("polyMul: dimensions differ");
    const std::size_t np = p.coefficients().size();
    const std::size_t nq = q.coefficients().size();
    std::vector<CMatrix> c(np + nq - 1, CMatrix(p.dim(), p.dim()));
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < nq; ++j) c[i + j] += p.coefficients()[i] * q.coefficients()[j];
    return SpectralMatrixPoly(p.minDegree() + q.minDegree(), std::move(c));
}

double maxCoefficientDiff(const SpectralMatrixPoly& p, const SpectralMatrixPoly& q) {
    if (p.dim() != q.dim()) throw DimensionError("compare: polynomial dimensions differ");
    const int lo = std::min(p.minDegree(), q.minDegree());
    const int hi = std::max(p.maxDegree(), q.maxDegree());
    double m = 0.0;
    for (int k = lo; k <= hi; ++k) m = std::max(m, maxAbsDiff(p.coefficient(k), q.coefficient(k)));
    return m;
}

bool approxEqual(const SpectralMatrixPoly& p, const SpectralMatrixPoly& q, double tol) {
    return maxCoefficientDiff(p.normalized(tol), q.normalized(tol)) < tol;
}

double RankOnePair::tripleResidual() const {
    return std::max((bHat * b * bHat - kappa * bHat).maxAbs(), (b * bHat * b - kappa * b).maxAbs());
}

double RankOnePair::identityResidual() const {
    return std::max((bHat * b - kappa * CMatrix::identity(nDim())).maxAbs(),
                    (b * bHat - kappa * CMatrix::identity(mDim())).maxAbs());
}

RankOnePair makeRankOnePair(std::size_t nDim, std::size_t mDim, cplx kappa, Closure closure,
                            const std::optional<CMatrix>& unitary) {
    if (kappa == cplx{}) throw VariantUnavailable("rank-one pair needs kappa != 0");
    RankOnePair pair{CMatrix(nDim, mDim), CMatrix(mDim, nDim), kappa, closure};
    if (closure == Closure::TripleProduct) {
        pair.bHat(0, 0) = 1.0;
        pair.b(0, 0) = kappa;
        return pair;
    }
    if (nDim != mDim)
        throw VariantUnavailable("identity closure needs N == M, got " + std::to_string(nDim) + " and " +
                                 std::to_string(mDim));
    const CMatrix u = unitary.value_or(CMatrix::identity(nDim));
    if (u.rows() != nDim || u.cols() != nDim) throw DimensionError("unitary has wrong shape");
    if (maxAbsDiff(u * u.adjoint(), CMatrix::identity(nDim)) > 1e-12)
        throw VariantUnavailable("supplied matrix is not unitary");
    pair.bHat = u;
    pair.b = kappa * u.adjoint();
    return pair;
}

}  // namespace akns
