#include "akns/dnls.hpp"

#include <algorithm>
#include <string>

#include "akns/errors.hpp"

namespace akns {

DnlsState DnlsState::zeros(std::size_t nSites, std::size_t nDim, std::size_t mDim, cplx theta) {
    if (nSites == 0) throw DimensionError("lattice needs at least one site");
    DnlsState s;
    s.nDim = nDim;
    s.mDim = mDim;
    s.theta = theta;
    s.x.assign(nSites, CMatrix(nDim, mDim));
    s.y.assign(nSites, CMatrix(mDim, nDim));
    return s;
}

std::size_t DnlsState::wrap(long n) const {
    const long len = static_cast<long>(x.size());
    return static_cast<std::size_t>(((n % len) + len) % len);
}

CMatrix DnlsState::bigN(long n) const {
    return theta * CMatrix::identity(nDim) + xAt(n) * yAt(n);
}

void DnlsState::validate() const {
    if (x.empty()) throw DimensionError("lattice needs at least one site");
    if (x.size() != y.size()) throw DimensionError("x and y site counts differ");
    for (std::size_t n = 0; n < x.size(); ++n) {
        if (x[n].rows() != nDim || x[n].cols() != mDim)
            throw DimensionError("x block at site " + std::to_string(n) + " has wrong shape");
        if (y[n].rows() != mDim || y[n].cols() != nDim)
            throw DimensionError("y block at site " + std::to_string(n) + " has wrong shape");
    }
}

bool DnlsState::allFinite() const {
    return std::all_of(x.begin(), x.end(), [](const CMatrix& m) { return m.allFinite(); }) &&
           std::all_of(y.begin(), y.end(), [](const CMatrix& m) { return m.allFinite(); });
}

namespace {

void checkSite(const DnlsState& s, long site) {
    if (site < 0 || site >= static_cast<long>(s.nSites()))
        throw DimensionError("site " + std::to_string(site) + " outside [0, " + std::to_string(s.nSites()) + ")");
}

void checkFlow(FlowId flow, int maxAlpha) {
    if (flow.alpha < 1 || flow.alpha > maxAlpha)
        throw FlowUnsupported("flow t" + std::to_string(flow.alpha) + " is not available here");
}

CMatrix sigma(std::size_t n, std::size_t m) {
    return blockMatrix(CMatrix::identity(n), CMatrix(n, m), CMatrix(m, n), -CMatrix::identity(m));
}

CMatrix offDiagonal(const CMatrix& upper, const CMatrix& lower) {
    return blockMatrix(CMatrix(upper.rows(), upper.rows()), upper, lower, CMatrix(lower.rows(), lower.rows()));
}

// lambda^0 part of V^(2)
CMatrix w2(const DnlsState& s, long n) {
    const auto& xn = s.xAt(n);
    const auto& ym = s.yAt(n - 1);
    return blockMatrix(-(xn * ym), s.xAt(n + 1) - s.bigN(n) * xn,
                       s.yAt(n - 2) - ym * s.bigN(n - 1), ym * xn);
}

CMatrix w3(const DnlsState& s, long n) {
    const auto& x0 = s.xAt(n);
    const auto& x1 = s.xAt(n + 1);
    const auto& x2 = s.xAt(n + 2);
    const auto& xm = s.xAt(n - 1);
    const auto& y0 = s.yAt(n);
    const auto& y1 = s.yAt(n - 1);
    const auto& y2 = s.yAt(n - 2);
    const auto& y3 = s.yAt(n - 3);
    const CMatrix n0 = s.bigN(n);
    const CMatrix np = s.bigN(n + 1);
    const CMatrix nm = s.bigN(n - 1);
    const CMatrix nmm = s.bigN(n - 2);

    CMatrix a = x0 * y1 * nm + n0 * x0 * y1 - x0 * y2 - x1 * y1;
    CMatrix b = x2 - x0 * y1 * x0 - np * x1 - x1 * y0 * x0 - n0 * x1 + n0 * n0 * x0;
    CMatrix c = y3 - y2 * nmm - y2 * nm - y1 * xm * y2 + y1 * nm * nm - y1 * x0 * y1;
    CMatrix d = y2 * x0 - y1 * nm * x0 + y1 * x1 - y1 * n0 * x0;
    return blockMatrix(a, b, c, d);
}

}  // namespace

CMatrix laxL(const DnlsState& s, long site, cplx lambda) {
    checkSite(s, site);
    return blockMatrix(lambda * CMatrix::identity(s.nDim) + s.bigN(site), s.xAt(site), s.yAt(site),
                       CMatrix::identity(s.mDim));
}

SpectralMatrixPoly laxPoly(const DnlsState& s, long site) {
    checkSite(s, site);
    const CMatrix c0 = blockMatrix(s.bigN(site), s.xAt(site), s.yAt(site), CMatrix::identity(s.mDim));
    const CMatrix c1 = blockMatrix(CMatrix::identity(s.nDim), CMatrix(s.nDim, s.mDim), CMatrix(s.mDim, s.nDim),
                                   CMatrix(s.mDim, s.mDim));
    return SpectralMatrixPoly(0, {c0, c1});
}

SpectralMatrixPoly vPoly(const DnlsState& s, long site, FlowId flow) {
    checkSite(s, site);
    checkFlow(flow, 3);
    const CMatrix top = 0.5 * sigma(s.nDim, s.mDim);
    const CMatrix w1 = offDiagonal(s.xAt(site), s.yAt(site - 1));
    switch (flow.alpha) {
        case 1:
            return SpectralMatrixPoly(0, {w1, top});
        case 2:
            return SpectralMatrixPoly(0, {w2(s, site), w1, top});
        default:
            return SpectralMatrixPoly(0, {w3(s, site), w2(s, site), w1, top});
    }
}

CMatrix vOperator(const DnlsState& s, long site, FlowId flow, cplx lambda) {
    return vPoly(s, site, flow).eval(lambda);
}

FieldDerivative eomRhs(const DnlsState& s, FlowId flow) {
    s.validate();
    checkFlow(flow, 2);
    const long len = static_cast<long>(s.nSites());
    FieldDerivative out;
    out.dx.reserve(s.nSites());
    out.dy.reserve(s.nSites());
    for (long n = 0; n < len; ++n) {
        const auto& x0 = s.xAt(n);
        const auto& y0 = s.yAt(n);
        const CMatrix n0 = s.bigN(n);
        if (flow.alpha == 1) {
            out.dx.push_back(s.xAt(n + 1) - n0 * x0);
            out.dy.push_back(y0 * n0 - s.yAt(n - 1));
        } else {
            const auto& x1 = s.xAt(n + 1);
            const auto& ym = s.yAt(n - 1);
            const CMatrix np = s.bigN(n + 1);
            const CMatrix nm = s.bigN(n - 1);
            out.dx.push_back(-(x1 * y0 * x0) - (n0 + np) * x1 + n0 * n0 * x0 - x0 * ym * x0 + s.xAt(n + 2));
            out.dy.push_back(y0 * x0 * ym + ym * (n0 + nm) - y0 * n0 * n0 + y0 * x1 * y0 - s.yAt(n - 2));
        }
    }
    return out;
}

CMatrix laxTimeDerivative(const DnlsState& s, long site, const FieldDerivative& v) {
    const std::size_t k = s.wrap(site);
    return blockMatrix(v.dx[k] * s.y[k] + s.x[k] * v.dy[k], v.dx[k], v.dy[k], CMatrix(s.mDim, s.mDim));
}

std::vector<double> zeroCurvatureResidual(const DnlsState& s, FlowId flow, const FieldDerivative& v,
                                          const std::vector<cplx>& lambdas) {
    s.validate();
    checkFlow(flow, 3);
    if (lambdas.empty()) throw DimensionError("need at least one spectral sample");
    if (v.dx.size() != s.nSites() || v.dy.size() != s.nSites()) throw DimensionError("velocity size mismatch");
    const long len = static_cast<long>(s.nSites());
    std::vector<CMatrix> dl;
    std::vector<SpectralMatrixPoly> vp;
    for (long n = 0; n < len; ++n) {
        dl.push_back(laxTimeDerivative(s, n, v));
        vp.push_back(vPoly(s, n, flow));
    }
    std::vector<double> out;
    for (const cplx lam : lambdas) {
        double r = 0.0;
        for (long n = 0; n < len; ++n) {
            const CMatrix l = laxL(s, n, lam);
            const CMatrix rhs = vp[s.wrap(n + 1)].eval(lam) * l - l * vp[n].eval(lam);
            r = std::max(r, maxAbsDiff(dl[n], rhs));
        }
        out.push_back(r);
    }
    return out;
}

std::vector<double> zeroCurvatureResidual(const DnlsState& s, FlowId flow, const std::vector<cplx>& lambdas) {
    return zeroCurvatureResidual(s, flow, eomRhs(s, flow), lambdas);
}

double flowThreeCompatibility(const DnlsState& s, const std::vector<cplx>& lambdas) {
    s.validate();
    if (lambdas.size() < 2) throw DimensionError("need at least two spectral samples");
    const long len = static_cast<long>(s.nSites());
    const std::size_t nd = s.nDim;
    const std::size_t md = s.mDim;
    double worst = 0.0;
    for (long n = 0; n < len; ++n) {
        const auto curv = [&](cplx lam) {
            const CMatrix l = laxL(s, n, lam);
            return vOperator(s, static_cast<long>(s.wrap(n + 1)), {3}, lam) * l - l * vOperator(s, n, {3}, lam);
        };
        const CMatrix r0 = curv(lambdas.front());
        for (std::size_t k = 1; k < lambdas.size(); ++k) worst = std::max(worst, maxAbsDiff(curv(lambdas[k]), r0));
        const CMatrix dx = r0.block(0, nd, nd, md);
        const CMatrix dy = r0.block(nd, 0, md, nd);
        worst = std::max(worst, r0.block(nd, nd, md, md).maxAbs());
        worst = std::max(worst, maxAbsDiff(r0.block(0, 0, nd, nd), dx * s.yAt(n) + s.xAt(n) * dy));
    }
    return worst;
}

namespace {

DnlsState axpy(const DnlsState& s, cplx h, const FieldDerivative& k) {
    DnlsState out = s;
    for (std::size_t n = 0; n < s.nSites(); ++n) {
        out.x[n] += h * k.dx[n];
        out.y[n] += h * k.dy[n];
    }
    return out;
}

}  // namespace

DnlsTrajectory evolve(const DnlsState& s, FlowId flow, double dt, long steps, long sampleEvery) {
    s.validate();
    checkFlow(flow, 2);
    if (!(dt > 0.0)) throw DimensionError("dt must be positive");
    if (steps < 0) throw DimensionError("steps must be non-negative");
    DnlsTrajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(s);
    DnlsState cur = s;
    for (long step = 1; step <= steps; ++step) {
        const FieldDerivative k1 = eomRhs(cur, flow);
        const FieldDerivative k2 = eomRhs(axpy(cur, 0.5 * dt, k1), flow);
        const FieldDerivative k3 = eomRhs(axpy(cur, 0.5 * dt, k2), flow);
        const FieldDerivative k4 = eomRhs(axpy(cur, dt, k3), flow);
        for (std::size_t n = 0; n < cur.nSites(); ++n) {
            cur.x[n] += (dt / 6.0) * (k1.dx[n] + 2.0 * k2.dx[n] + 2.0 * k3.dx[n] + k4.dx[n]);
            cur.y[n] += (dt / 6.0) * (k1.dy[n] + 2.0 * k2.dy[n] + 2.0 * k3.dy[n] + k4.dy[n]);
        }
        if (!cur.allFinite()) throw BlowUp(step);
        if (step == steps || (sampleEvery > 0 && step % sampleEvery == 0)) {
            traj.times.push_back(static_cast<double>(step) * dt);
            traj.states.push_back(cur);
        }
    }
    return traj;
}

namespace {

struct Blocks {
    CMatrix a, b, c, d;
};

Blocks split(const CMatrix& k, std::size_t nd, std::size_t md) {
    return {k.block(0, 0, nd, nd), k.block(0, nd, nd, md), k.block(nd, 0, md, nd), k.block(nd, nd, md, md)};
}

}  // namespace

double dressingConstraintResidual(const DnlsState& s, const std::vector<CMatrix>& dressing,
                                  std::optional<SiteRange> range) {
    s.validate();
    if (dressing.size() != s.nSites()) throw DimensionError("one dressing block per site expected");
    for (const auto& k : dressing)
        if (k.rows() != s.blockDim() || k.cols() != s.blockDim()) throw DimensionError("dressing block has wrong shape");
    const SiteRange r = range.value_or(SiteRange{0, static_cast<long>(s.nSites()) - 1});
    const std::size_t nd = s.nDim;
    const std::size_t md = s.mDim;
    double worst = 0.0;
    for (long n = r.first; n <= r.last; ++n) {
        const Blocks k0 = split(dressing[s.wrap(n)], nd, md);
        const Blocks k1 = split(dressing[s.wrap(n + 1)], nd, md);
        const auto& x = s.xAt(n);
        const auto& y = s.yAt(n);
        worst = std::max({worst, (k0.b + x).maxAbs(), maxAbsDiff(k1.c, y),
                          (k1.b - k0.b - x * y * k0.b - x * k0.d).maxAbs(), (k1.c - k0.c - y * k0.a).maxAbs(),
                          (k1.a - k0.a - x * y).maxAbs(), (k1.d - k0.d + y * x).maxAbs()});
    }
    return worst;
}

std::vector<SpectralMatrixPoly> dressedVFromRecursion(const DnlsState& s, const std::vector<CMatrix>& dressing,
                                                      int alpha, std::optional<SiteRange> range) {
    checkFlow({alpha}, 3);
    const double r = dressingConstraintResidual(s, dressing, range);
    if (!(r <= 1e-8)) throw InconsistentDressing("constr2b residual " + std::to_string(r));
    const CMatrix sig = sigma(s.nDim, s.mDim);
    std::vector<SpectralMatrixPoly> out;
    out.reserve(s.nSites());
    for (const CMatrix& k : dressing) {
        // w_0^(a) = (-1)^(a-1) w_0^(1) K^(a-1); coefficient of lambda^j is w_0^(alpha-j)
        std::vector<CMatrix> w0{0.5 * (k * sig - sig * k)};
        for (int a = 2; a <= alpha; ++a) w0.push_back(-(w0.back() * k));
        std::vector<CMatrix> coeffs;
        for (int j = 0; j < alpha; ++j) coeffs.push_back(w0[static_cast<std::size_t>(alpha - j - 1)]);
        coeffs.push_back(0.5 * sig);
        out.emplace_back(0, std::move(coeffs));
    }
    return out;
}

}  // namespace akns
