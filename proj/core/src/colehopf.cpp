#include "akns/colehopf.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "akns/errors.hpp"

namespace akns {

namespace {

// y jets on sites first .. first+count-1 with continuity-tracked logs
std::vector<Jet> logJets(const LinearSolution& heat, long first, std::size_t count, double t) {
    std::vector<Jet> y;
    y.reserve(count);
    Jet prev;
    for (std::size_t k = 0; k < count; ++k) {
        const long n = first + static_cast<long>(k);
        const Jet x = heat.at(n, t);
        if (std::abs(x.v) < 1e-300) throw LogBranch(n, "xhat vanishes");
        const cplx rate = x.d / x.v;
        if (k == 0) {
            prev = Jet(std::log(x.v), rate);
        } else {
            const cplx ratio = x.v / heat.at(n - 1, t).v;
            if (ratio.real() < 0.0 && std::abs(ratio.imag()) < 1e-12 * std::abs(ratio))
                throw LogBranch(n, "xhat_n / xhat_{n-1} is on the negative real axis");
            prev = Jet(prev.v + std::log(ratio), rate);
        }
        y.push_back(prev);
    }
    return y;
}

void checkHeat(const LinearSolution& heat) {
    if (heat.scheme() != LinearScheme::ForwardDnls || heat.flowAlpha() != 2)
        throw FlowUnsupported("Cole-Hopf needs a forward second-flow (discrete heat) solution");
}

double ratio(double a, double b) { return b > 0.0 ? a / b : 0.0; }

TruncationSeries withRatios(std::vector<double> r) {
    TruncationSeries s{std::move(r), {}};
    for (std::size_t k = 0; k + 1 < s.residual.size(); ++k) s.ratio.push_back(ratio(s.residual[k], s.residual[k + 1]));
    return s;
}

// remainders of the truncated Burgers and HJ equations over the window
struct Remainders {
    double burgers = 0.0;
    double hj = 0.0;
};

Remainders truncationRemainders(const LinearSolution& heat, long first, std::size_t nSites, double t) {
    const auto y = logJets(heat, first, nSites + 3, t);
    Remainders r;
    for (std::size_t k = 0; k < nSites; ++k) {
        const auto u = [&](std::size_t i) { return y[i + 1] - y[i]; };
        const Jet u0 = u(k), u1 = u(k + 1), u2 = u(k + 2);
        const cplx burgers = u0.d - (u2.v - 2.0 * u1.v + u0.v) - (u1.v * u1.v - u0.v * u0.v);
        const cplx hj = y[k].d - (y[k + 2].v - 2.0 * y[k + 1].v + y[k].v) - u0.v * u0.v;
        r.burgers = std::max(r.burgers, std::abs(burgers));
        r.hj = std::max(r.hj, std::abs(hj));
    }
    return r;
}

LinearSolution cosineData(double base, double amplitude, double phase) {
    const cplx xi = std::polar(1.0, phase);
    return LinearSolution({{base, 1.0}, {amplitude / 2.0, xi}, {amplitude / 2.0, std::conj(xi)}}, 2,
                          LinearScheme::ForwardDnls);
}

}  // namespace

ColeHopfResult coleHopfForward(const LinearSolution& heat, long firstSite, std::size_t nSites, double t) {
    checkHeat(heat);
    if (nSites == 0) throw DimensionError("lattice needs at least one site");
    const auto y = logJets(heat, firstSite, nSites + 3, t);
    ColeHopfResult out{{firstSite, {}, LatticeBoundary::Vanishing}, {firstSite, {}, LatticeBoundary::Vanishing},
                       0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < nSites; ++k) {
        const long n = firstSite + static_cast<long>(k);
        out.heatResidual = std::max(out.heatResidual, heat.residual(n, t));
        const Jet u0 = y[k + 1] - y[k], u1 = y[k + 2] - y[k + 1], u2 = y[k + 3] - y[k + 2];
        out.y.values.push_back(y[k].v);
        out.u.values.push_back(u0.v);
        const cplx hj = std::exp(u0.v) * (std::exp(u1.v) - 1.0) - (std::exp(u0.v) - 1.0);
        out.hjResidual = std::max(out.hjResidual, std::abs(y[k].d - hj));
        const cplx burgers =
            std::exp(u1.v) * (std::exp(u2.v) - std::exp(u0.v)) - 2.0 * (std::exp(u1.v) - std::exp(u0.v));
        out.burgersResidual = std::max(out.burgersResidual, std::abs(u0.d - burgers));
    }
    return out;
}

TruncationReport burgersTruncationOrder(const TruncationOptions& opt) {
    TruncationReport rep;
    rep.deltas = opt.deltas;
    std::vector<double> literal, diffusive, hj;
    for (const double delta : opt.deltas) {
        if (delta == 0.0) {
            literal.push_back(0.0);
            diffusive.push_back(0.0);
            hj.push_back(0.0);
            continue;
        }
        literal.push_back(
            truncationRemainders(cosineData(1.0, delta, opt.theta), opt.firstSite, opt.nSites, opt.t).burgers);
        const long half = std::lround(std::ceil(opt.span / delta));
        const Remainders d = truncationRemainders(cosineData(1.0, opt.amplitude, delta * opt.wave), -half,
                                                  static_cast<std::size_t>(2 * half + 1),
                                                  opt.diffusiveTime / (delta * delta));
        diffusive.push_back(d.burgers);
        hj.push_back(d.hj);
    }
    rep.literal = withRatios(std::move(literal));
    rep.diffusive = withRatios(std::move(diffusive));
    rep.hj = withRatios(std::move(hj));
    return rep;
}

ContinuumPair heatKernelPair(double x, double t, cplx g, cplx kappa) {
    if (!(t > 0.0)) throw SingularTime("t = " + std::to_string(t) + " is not positive");
    const double e = std::exp(x * x / (4.0 * t));
    return {g * std::sqrt(t) * e, 1.0 / (kappa * g * e * 2.0 * std::pow(t, 1.5))};
}

ContinuumPair generalPair(double x, double t, const SeedProfile& seed, cplx g, cplx kappa) {
    const cplx e = seed.c2 * std::exp(-seed.k * x + seed.k * seed.k * t);
    const cplx h = seed.c1 + e;
    const cplx h1 = -seed.k * e;
    const cplx h2 = seed.k * seed.k * e;
    if (std::abs(h) < 1e-300) throw SingularSoliton(0, "linear seed vanishes");
    return {g / h, -(h * h2 - h1 * h1) / (kappa * g * h)};
}

namespace {

using PairFn = std::function<ContinuumPair(double, double)>;

struct Residuals {
    double u = 0.0;
    double partner = 0.0;
};

Residuals gridResiduals(const ContinuumGrid& grid, const PairFn& pair, double hx, double ht) {
    if (!(grid.hx > 0.0) || !(grid.ht > 0.0)) throw DimensionError("grid spacings must be positive");
    if (!(grid.tMin - ht > 0.0)) throw SingularTime("stencil reaches t <= 0");
    const long nx = std::lround((grid.xMax - grid.xMin) / grid.hx);
    const long nt = std::lround((grid.tMax - grid.tMin) / grid.ht);
    Residuals r;
    for (long i = 0; i <= nx; ++i)
        for (long j = 0; j <= nt; ++j) {
            const double x = grid.xMin + static_cast<double>(i) * grid.hx;
            const double t = grid.tMin + static_cast<double>(j) * grid.ht;
            const ContinuumPair c = pair(x, t);
            const ContinuumPair xp = pair(x + hx, t), xm = pair(x - hx, t);
            const ContinuumPair tp = pair(x, t + ht), tm = pair(x, t - ht);
            const cplx ut = (tp.u - tm.u) / (2.0 * ht);
            const cplx uxx = (xp.u - 2.0 * c.u + xm.u) / (hx * hx);
            const cplx vt = (tp.uHat - tm.uHat) / (2.0 * ht);
            const cplx vxx = (xp.uHat - 2.0 * c.uHat + xm.uHat) / (hx * hx);
            r.u = std::max(r.u, std::abs(ut + uxx - 2.0 * grid.kappa * c.uHat * c.u * c.u));
            r.partner = std::max(r.partner, std::abs(-vt + vxx - 2.0 * grid.kappa * c.u * c.uHat * c.uHat));
        }
    return r;
}

ContinuumReport report(const ContinuumGrid& grid, const PairFn& pair) {
    const Residuals coarse = gridResiduals(grid, pair, grid.hx, grid.ht);
    const Residuals fine = gridResiduals(grid, pair, grid.hx / 2.0, grid.ht / 2.0);
    ContinuumReport rep;
    rep.uResidual = coarse.u;
    rep.partnerResidual = coarse.partner;
    rep.residual = std::max(coarse.u, coarse.partner);
    rep.halvedResidual = std::max(fine.u, fine.partner);
    rep.ratio = ratio(rep.residual, rep.halvedResidual);
    return rep;
}

}  // namespace

ContinuumReport verifyContinuumNls(const ContinuumGrid& grid) {
    return report(grid, [&](double x, double t) { return heatKernelPair(x, t, grid.g, grid.kappa); });
}

ContinuumReport verifyContinuumGeneral(const ContinuumGrid& grid, const SeedProfile& seed) {
    return report(grid, [&](double x, double t) { return generalPair(x, t, seed, grid.g, grid.kappa); });
}

}  // namespace akns
