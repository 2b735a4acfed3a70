#include "akns/glm.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "akns/errors.hpp"
#include "akns/linear.hpp"

namespace akns {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

CMatrix IntMatrix::toComplex() const {
    CMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = static_cast<double>((*this)(i, j));
    return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("integer matrix product shape mismatch");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const long long v = a(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += v * b(k, j);
        }
    return out;
}

IntMatrix power(const IntMatrix& a, int alpha) {
    if (alpha < 0) throw DimensionError("negative matrix power");
    IntMatrix out = IntMatrix::identity(a.rows());
    for (int k = 0; k < alpha; ++k) out = out * a;
    return out;
}

DifferenceOps buildDifferenceOps(long windowN) {
    if (windowN < 1) throw DimensionError("window needs N >= 1");
    const std::size_t size = static_cast<std::size_t>(2 * windowN + 1);
    DifferenceOps ops{windowN, IntMatrix(size, size), IntMatrix(size, size)};
    for (std::size_t j = 0; j < size; ++j) {
        ops.d(j, j) = -1;
        ops.dStar(j, j) = -1;
        if (j + 1 < size) {
            ops.d(j, j + 1) = 1;
            ops.dStar(j + 1, j) = 1;
        }
    }
    return ops;
}

IntMatrix binomialPower(long windowN, int alpha, bool star) {
    if (windowN < 1) throw DimensionError("window needs N >= 1");
    if (alpha < 0) throw DimensionError("negative matrix power");
    const std::size_t size = static_cast<std::size_t>(2 * windowN + 1);
    IntMatrix out(size, size);
    long long binom = 1;
    for (int k = 0; k <= alpha; ++k) {
        const long long v = ((alpha - k) % 2 == 0 ? 1 : -1) * binom;
        for (std::size_t j = 0; j + static_cast<std::size_t>(k) < size; ++j) {
            if (star) out(j + k, j) = v;
            else out(j, j + k) = v;
        }
        binom = binom * (alpha - k) / (k + 1);
    }
    return out;
}

ModeRates glmDispersion(cplx lambda, cplx lambdaHat, const GlmConfig& cfg) {
    if (cfg.alpha < 1) throw FlowUnsupported("flow index must be positive");
    if (cfg.scheme == GlmScheme::ForwardBackward)
        return {ipow(cfg.w, cfg.alpha) * ipow(std::exp(lambda) - 1.0, cfg.alpha),
                ipow(std::exp(-lambdaHat) - 1.0, cfg.alpha)};
    if (cfg.alpha != 1) throw FlowUnsupported("symmetric scheme only carries the first flow");
    const cplx u = std::exp(lambda / 2.0) - std::exp(-lambda / 2.0);
    const cplx uh = std::exp(-lambdaHat / 2.0) - std::exp(lambdaHat / 2.0);
    return {cfg.w * u * u, uh * uh};
}

namespace {

cplx modeFactor(cplx lambda, cplx rate, long m, double t) {
    const cplx e = -lambda * static_cast<double>(m) + rate * t;
    if (e.real() > 700.0) throw ModeOverflow("exponent " + std::to_string(e.real()) + " at m = " + std::to_string(m));
    return std::exp(e);
}

}  // namespace

GlmSystem::GlmSystem(std::vector<GlmMode> modes, GlmConfig cfg) : modes_(std::move(modes)), cfg_(cfg) {
    if (modes_.empty()) throw DimensionError("need at least one mode");
    if (cfg_.windowN < 1) throw DimensionError("window needs N >= 1");
    nDim_ = modes_.front().bHat.rows();
    mDim_ = modes_.front().bHat.cols();
    for (const auto& m : modes_) {
        if (m.bHat.rows() != nDim_ || m.bHat.cols() != mDim_ || m.b.rows() != mDim_ || m.b.cols() != nDim_)
            throw DimensionError("mode amplitudes must be N x M (hat) and M x N");
        rates_.push_back(glmDispersion(m.lambda, m.lambdaHat, cfg_));
    }
    for (long m = 2 * firstIndex(); m <= 2 * lastIndex(); ++m) {
        f_.push_back(fAt(m, cfg_.time));
        fHat_.push_back(fHatAt(m, cfg_.time));
        if (!f_.back().allFinite() || !fHat_.back().allFinite())
            throw ModeOverflow("non-finite data at m = " + std::to_string(m));
    }
}

const CMatrix& GlmSystem::f(long m) const {
    if (m < 2 * firstIndex() || m > 2 * lastIndex()) throw DimensionError("i + j outside the window");
    return f_[static_cast<std::size_t>(m - 2 * firstIndex())];
}

const CMatrix& GlmSystem::fHat(long m) const {
    if (m < 2 * firstIndex() || m > 2 * lastIndex()) throw DimensionError("i + j outside the window");
    return fHat_[static_cast<std::size_t>(m - 2 * firstIndex())];
}

CMatrix GlmSystem::fAt(long m, double t) const {
    CMatrix out(mDim_, nDim_);
    for (std::size_t s = 0; s < modes_.size(); ++s)
        out += modeFactor(modes_[s].lambda, rates_[s].rate, m, t) * modes_[s].b;
    return out;
}

CMatrix GlmSystem::fHatAt(long m, double t) const {
    CMatrix out(nDim_, mDim_);
    for (std::size_t s = 0; s < modes_.size(); ++s)
        out += modeFactor(modes_[s].lambdaHat, rates_[s].rateHat, m, t) * modes_[s].bHat;
    return out;
}

CMatrix GlmSystem::fDot(long m, double t) const {
    CMatrix out(mDim_, nDim_);
    for (std::size_t s = 0; s < modes_.size(); ++s)
        out += (rates_[s].rate * modeFactor(modes_[s].lambda, rates_[s].rate, m, t)) * modes_[s].b;
    return out;
}

CMatrix GlmSystem::fHatDot(long m, double t) const {
    CMatrix out(nDim_, mDim_);
    for (std::size_t s = 0; s < modes_.size(); ++s)
        out += (rates_[s].rateHat * modeFactor(modes_[s].lambdaHat, rates_[s].rateHat, m, t)) * modes_[s].bHat;
    return out;
}

double GlmSystem::edgeDecay() const {
    double biggest = 0.0;
    for (std::size_t k = 0; k < f_.size(); ++k) biggest = std::max({biggest, f_[k].maxAbs(), fHat_[k].maxAbs()});
    if (biggest == 0.0) return 0.0;
    return std::max(f_.back().maxAbs(), fHat_.back().maxAbs()) / biggest;
}

GlmSystem buildHankelData(std::vector<GlmMode> modes, const GlmConfig& cfg) {
    return GlmSystem(std::move(modes), cfg);
}

double linearResidual(const GlmSystem& sys, const std::vector<long>& ms, double t) {
    const GlmConfig& cfg = sys.config();
    double worst = 0.0;
    for (const long m : ms) {
        CMatrix rhs(sys.mDim(), sys.nDim());
        CMatrix rhsHat(sys.nDim(), sys.mDim());
        if (cfg.scheme == GlmScheme::Symmetric) {
            rhsHat = sys.fHatAt(m + 1, t) - 2.0 * sys.fHatAt(m, t) + sys.fHatAt(m - 1, t);
            rhs = cfg.w * (sys.fAt(m + 1, t) - 2.0 * sys.fAt(m, t) + sys.fAt(m - 1, t));
        } else {
            double binom = 1.0;
            for (int k = 0; k <= cfg.alpha; ++k) {
                const double sign = ((cfg.alpha - k) % 2 == 0) ? 1.0 : -1.0;
                rhsHat += (sign * binom) * sys.fHatAt(m + k, t);
                rhs += (sign * binom) * sys.fAt(m - k, t);
                binom = binom * (cfg.alpha - k) / (k + 1);
            }
            rhs *= ipow(cfg.w, cfg.alpha);
        }
        worst = std::max({worst, maxAbsDiff(sys.fDot(m, t), rhs), maxAbsDiff(sys.fHatDot(m, t), rhsHat)});
    }
    return worst;
}

CMatrix glmDenseF(const GlmSystem& sys) {
    const std::size_t nd = sys.nDim(), md = sys.mDim(), bs = nd + md, count = sys.windowSize();
    CMatrix out(count * bs, count * bs);
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t c = 0; c < count; ++c) {
            const long m = 2 * sys.firstIndex() + static_cast<long>(a + c);
            out.setBlock(a * bs, c * bs + nd, sys.fHat(m));
            out.setBlock(a * bs + nd, c * bs, sys.f(m));
        }
    return out;
}

GlmSolution::GlmSolution(const GlmSystem& sys, CMatrix kPlus, CMatrix kMinus, double dglmResidual,
                         double factorizationResidual)
    : first_(sys.firstIndex()),
      count_(sys.windowSize()),
      nDim_(sys.nDim()),
      mDim_(sys.mDim()),
      kPlus_(std::move(kPlus)),
      kMinus_(std::move(kMinus)),
      dglm_(dglmResidual),
      factor_(factorizationResidual) {}

CMatrix GlmSolution::plusBlock(long i, long j, std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
    const long last = first_ + static_cast<long>(count_) - 1;
    if (i < first_ || i > last || j < first_ || j > last) throw DimensionError("block index outside the window");
    const std::size_t bs = nDim_ + mDim_;
    return kPlus_.block(static_cast<std::size_t>(i - first_) * bs + r0, static_cast<std::size_t>(j - first_) * bs + c0,
                        nr, nc);
}

CMatrix GlmSolution::a(long i, long j) const { return plusBlock(i, j, 0, 0, nDim_, nDim_); }
CMatrix GlmSolution::b(long i, long j) const { return plusBlock(i, j, 0, nDim_, nDim_, mDim_); }
CMatrix GlmSolution::c(long i, long j) const { return plusBlock(i, j, nDim_, 0, mDim_, nDim_); }
CMatrix GlmSolution::d(long i, long j) const { return plusBlock(i, j, nDim_, nDim_, mDim_, mDim_); }

CMatrix GlmSolution::kMinusBlock(long i, long j) const {
    const long last = first_ + static_cast<long>(count_) - 1;
    if (i < first_ || i > last || j < first_ || j > last) throw DimensionError("block index outside the window");
    const std::size_t bs = nDim_ + mDim_;
    return kMinus_.block(static_cast<std::size_t>(i - first_) * bs, static_cast<std::size_t>(j - first_) * bs, bs, bs);
}

namespace {

// rows: blocks f_{l'+l} for window positions l', l >= 0 of the full window
CMatrix hankelMatrix(const GlmSystem& sys, bool hat) {
    const std::size_t count = sys.windowSize();
    const std::size_t rb = hat ? sys.nDim() : sys.mDim();
    const std::size_t cb = hat ? sys.mDim() : sys.nDim();
    CMatrix out(count * rb, count * cb);
    for (std::size_t p = 0; p < count; ++p)
        for (std::size_t q = 0; q < count; ++q) {
            const long m = 2 * sys.firstIndex() + static_cast<long>(p + q);
            out.setBlock(p * rb, q * cb, hat ? sys.fHat(m) : sys.f(m));
        }
    return out;
}

// solves R (I - G) = rhs for the row block R
CMatrix solveRow(const CMatrix& g, const CMatrix& rhs) {
    const CMatrix op = CMatrix::identity(g.rows()) - g;
    try {
        return denseSolve(op.transpose(), rhs.transpose()).transpose();
    } catch (const SingularMatrix& e) {
        throw SingularGlm(std::string("window operator is singular (") + e.what() + ")");
    }
}

}  // namespace

GlmSolution solveGlm(const GlmSystem& sys) {
    const std::size_t nd = sys.nDim(), md = sys.mDim(), bs = nd + md, count = sys.windowSize();
    const CMatrix fm = hankelMatrix(sys, false);   // (count M) x (count N)
    const CMatrix fhm = hankelMatrix(sys, true);   // (count N) x (count M)
    CMatrix kPlus(count * bs, count * bs);
    for (std::size_t a = 0; a < count; ++a) {
        const std::size_t cnt = count - a;
        const CMatrix f = fm.block(a * md, a * nd, cnt * md, cnt * nd);
        const CMatrix fh = fhm.block(a * nd, a * md, cnt * nd, cnt * md);
        const CMatrix bRow = solveRow(f * fh, -fh.block(0, 0, nd, cnt * md));
        const CMatrix cRow = solveRow(fh * f, -f.block(0, 0, md, cnt * nd));
        const CMatrix aRow = -(bRow * f);
        const CMatrix dRow = -(cRow * fh);
        for (std::size_t q = 0; q < cnt; ++q) {
            const std::size_t col = (a + q) * bs;
            kPlus.setBlock(a * bs, col, aRow.block(0, q * nd, nd, nd));
            kPlus.setBlock(a * bs, col + nd, bRow.block(0, q * md, nd, md));
            kPlus.setBlock(a * bs + nd, col, cRow.block(0, q * nd, md, nd));
            kPlus.setBlock(a * bs + nd, col + nd, dRow.block(0, q * md, md, md));
        }
    }
    if (!kPlus.allFinite()) throw SingularGlm("non-finite kernel");
    const CMatrix eye = CMatrix::identity(count * bs);
    const CMatrix prod = (eye + kPlus) * (eye + glmDenseF(sys)) - eye;
    CMatrix kMinus(count * bs, count * bs);
    double dglm = 0.0, factor = 0.0;
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t c = 0; c < count; ++c) {
            const CMatrix blk = prod.block(a * bs, c * bs, bs, bs);
            if (c >= a) dglm = std::max(dglm, blk.maxAbs());
            if (c <= a) kMinus.setBlock(a * bs, c * bs, blk);
        }
    factor = maxAbsDiff(prod, kMinus);
    return GlmSolution(sys, std::move(kPlus), std::move(kMinus), dglm, factor);
}

const CMatrix& GlmBlockGrid::at(long k, long j) const {
    const long last = firstIndex + static_cast<long>(count) - 1;
    if (k < firstIndex || k > last || j < firstIndex || j > last) throw DimensionError("block index outside the window");
    return blocks[static_cast<std::size_t>(k - firstIndex) * count + static_cast<std::size_t>(j - firstIndex)];
}

GlmClosedForm oneSolitonClosedForm(cplx lambda, cplx lambdaHat, const RankOnePair& pair, const GlmConfig& cfg) {
    if (cfg.windowN < 1) throw DimensionError("window needs N >= 1");
    const cplx s = lambda + lambdaHat;
    const cplx gap = std::exp(-s) - 1.0;
    if (std::abs(gap) < 1e-14) throw DegenerateMode("lambda + lambdaHat = 0 puts a pole in h_k");
    const ModeRates r = glmDispersion(lambda, lambdaHat, cfg);
    const std::size_t count = static_cast<std::size_t>(2 * cfg.windowN + 1);
    GlmClosedForm out{{cfg.firstIndex, count, {}}, {cfg.firstIndex, count, {}}};
    const double t = cfg.time;
    for (std::size_t p = 0; p < count; ++p) {
        const long k = cfg.firstIndex + static_cast<long>(p);
        const cplx h = std::exp(-2.0 * s * static_cast<double>(k) + (r.rate + r.rateHat) * t) / (gap * gap);
        const cplx den = 1.0 - pair.kappa * h;
        if (std::abs(den) < 1e-14) throw SingularGlm("1 - kappa h_k vanishes at k = " + std::to_string(k));
        for (std::size_t q = 0; q < count; ++q) {
            const double kj = static_cast<double>(k + cfg.firstIndex + static_cast<long>(q));
            out.b.blocks.push_back((-std::exp(-lambdaHat * kj + r.rateHat * t) / den) * pair.bHat);
            out.c.blocks.push_back((-std::exp(-lambda * kj + r.rate * t) / den) * pair.b);
        }
    }
    return out;
}

LocalFields extractLocalFields(const GlmSolution& sol) {
    LocalFields out{sol.firstIndex(), {}, {}};
    for (std::size_t p = 0; p < sol.windowSize(); ++p) {
        const long n = sol.firstIndex() + static_cast<long>(p);
        out.x.push_back(sol.b(n, n));
        out.y.push_back(sol.c(n, n));
    }
    return out;
}

SolitonParams matchType2Parameters(cplx lambda, cplx lambdaHat, const RankOnePair& pair, const GlmConfig& cfg) {
    const cplx eta = std::exp(-2.0 * lambdaHat);
    const cplx eps = std::exp(2.0 * lambda);
    if (std::abs(eta + eps - 2.0) > 1e-10)
        throw InconsistentDressing("Type2 needs e^{-2 lambdaHat} + e^{2 lambda} = 2");
    const cplx s = lambda + lambdaHat;
    const cplx gap = std::exp(-s) - 1.0;
    if (std::abs(gap) < 1e-14) throw DegenerateMode("lambda + lambdaHat = 0 puts a pole in h_k");
    const ModeRates r = glmDispersion(lambda, lambdaHat, cfg);
    const cplx kk = pair.kappa * std::exp((r.rate + r.rateHat) * cfg.time) / (gap * gap);
    const cplx ratio = kk * eta / eps;
    const cplx xb = eps / eta, kb = pair.kappa / eta;
    SolitonParams p;
    p.family = SolitonFamily::Type2;
    p.c = eta - 1.0;
    p.kappa = pair.kappa;
    p.x1 = 1.0;
    p.d1 = ratio * (xb - 1.0) / ((1.0 - ratio) * kb);
    p.flowAlpha = cfg.alpha;
    return p;
}

ProportionalFit fitProportionality(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    if (u.size() != v.size() || u.empty()) throw DimensionError("fit needs two equal, nonempty sequences");
    cplx num = 0.0;
    double den = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        num += std::conj(v[k]) * u[k];
        den += std::norm(v[k]);
        scale = std::max(scale, std::abs(u[k]));
    }
    ProportionalFit fit{den > 0.0 ? num / den : cplx{}, 0.0};
    double worst = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) worst = std::max(worst, std::abs(u[k] - fit.constant * v[k]));
    fit.relativeError = scale > 0.0 ? worst / scale : worst;
    return fit;
}

}  // namespace akns
