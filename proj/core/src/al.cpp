#include "akns/al.hpp"

#include <algorithm>
#include <string>

#include "akns/errors.hpp"
#include "akns/jet.hpp"

namespace akns {

AlState AlState::zeros(std::size_t nSites, std::size_t nDim, std::size_t mDim, AlBoundary boundary) {
    if (nSites == 0) throw DimensionError("lattice needs at least one site");
    AlState s;
    s.nDim = nDim;
    s.mDim = mDim;
    s.boundary = boundary;
    s.bHat.assign(nSites, CMatrix(nDim, mDim));
    s.b.assign(nSites, CMatrix(mDim, nDim));
    return s;
}

CMatrix AlState::bHatAt(long n) const {
    const long len = static_cast<long>(nSites());
    if (boundary == AlBoundary::Vanishing) return (n < 0 || n >= len) ? CMatrix(nDim, mDim) : bHat[n];
    return bHat[static_cast<std::size_t>(((n % len) + len) % len)];
}

CMatrix AlState::bAt(long n) const {
    const long len = static_cast<long>(nSites());
    if (boundary == AlBoundary::Vanishing) return (n < 0 || n >= len) ? CMatrix(mDim, nDim) : b[n];
    return b[static_cast<std::size_t>(((n % len) + len) % len)];
}

void AlState::validate() const {
    if (bHat.empty()) throw DimensionError("lattice needs at least one site");
    if (bHat.size() != b.size()) throw DimensionError("bHat and b site counts differ");
    for (std::size_t n = 0; n < bHat.size(); ++n) {
        if (bHat[n].rows() != nDim || bHat[n].cols() != mDim)
            throw DimensionError("bHat block at site " + std::to_string(n) + " has wrong shape");
        if (b[n].rows() != mDim || b[n].cols() != nDim)
            throw DimensionError("b block at site " + std::to_string(n) + " has wrong shape");
    }
}

bool AlState::allFinite() const {
    return std::all_of(bHat.begin(), bHat.end(), [](const CMatrix& m) { return m.allFinite(); }) &&
           std::all_of(b.begin(), b.end(), [](const CMatrix& m) { return m.allFinite(); });
}

double AlState::edgeMagnitude() const {
    return std::max({bHat.front().maxAbs(), bHat.back().maxAbs(), b.front().maxAbs(), b.back().maxAbs()});
}

namespace {

void checkSite(const AlState& s, long site) {
    if (site < 0 || site >= static_cast<long>(s.nSites()))
        throw DimensionError("site " + std::to_string(site) + " outside [0, " + std::to_string(s.nSites()) + ")");
}

CMatrix diagBlocks(const CMatrix& a, const CMatrix& d) {
    return blockMatrix(a, CMatrix(a.rows(), d.cols()), CMatrix(d.rows(), a.cols()), d);
}

CMatrix offBlocks(const CMatrix& upper, const CMatrix& lower) {
    return blockMatrix(CMatrix(upper.rows(), upper.rows()), upper, lower, CMatrix(lower.rows(), lower.rows()));
}

}  // namespace

SpectralMatrixPoly alLaxPoly(const AlState& s, long site) {
    checkSite(s, site);
    const CMatrix in = CMatrix::identity(s.nDim);
    const CMatrix im = CMatrix::identity(s.mDim);
    const CMatrix zn(s.nDim, s.nDim);
    const CMatrix zm(s.mDim, s.mDim);
    return SpectralMatrixPoly(-1, {diagBlocks(zn, im), offBlocks(s.bHatAt(site), s.bAt(site)), diagBlocks(in, zm)});
}

CMatrix alLax(const AlState& s, long site, cplx z) {
    if (z == cplx{}) throw SpectralPole("AL Lax operator at z = 0");
    return alLaxPoly(s, site).eval(z);
}

SpectralMatrixPoly alVPoly(const AlState& s, long site, AlVariant variant) {
    checkSite(s, site);
    const CMatrix in = CMatrix::identity(s.nDim);
    const CMatrix im = CMatrix::identity(s.mDim);
    const CMatrix zn(s.nDim, s.nDim);
    const CMatrix zm(s.mDim, s.mDim);
    const CMatrix bh0 = s.bHatAt(site);
    const CMatrix bh1 = s.bHatAt(site - 1);
    const CMatrix b0 = s.bAt(site);
    const CMatrix b1 = s.bAt(site - 1);
    if (variant == AlVariant::AL) {
        return SpectralMatrixPoly(-2, {diagBlocks(zn, -im), offBlocks(-bh1, -b0),
                                       diagBlocks(-(bh0 * b1) - in, b0 * bh1 + im), offBlocks(bh0, b1),
                                       diagBlocks(in, zm)});
    }
    return SpectralMatrixPoly(-2, {diagBlocks(zn, im), offBlocks(bh1, b0), diagBlocks(-(bh0 * b1), -(b0 * bh1)),
                                   offBlocks(bh0, b1), diagBlocks(in, zm)});
}

CMatrix alVOperator(const AlState& s, long site, AlVariant variant, cplx z) {
    if (z == cplx{}) throw SpectralPole("AL V-operator at z = 0");
    return alVPoly(s, site, variant).eval(z);
}

AlDerivative alEomRhs(const AlState& s, AlVariant variant) {
    s.validate();
    const long len = static_cast<long>(s.nSites());
    AlDerivative out;
    for (long n = 0; n < len; ++n) {
        const CMatrix bh = s.bHatAt(n);
        const CMatrix bhp = s.bHatAt(n + 1);
        const CMatrix bhm = s.bHatAt(n - 1);
        const CMatrix b = s.bAt(n);
        const CMatrix bp = s.bAt(n + 1);
        const CMatrix bm = s.bAt(n - 1);
        if (variant == AlVariant::AL) {
            out.dbHat.push_back(bhp + bhm - 2.0 * bh - bh * b * bhm - bhp * b * bh);
            out.db.push_back(-bp - bm + 2.0 * b + bp * bh * b + b * bh * bm);
        } else {
            out.dbHat.push_back(bhp - bhm + bh * b * bhm - bhp * b * bh);
            out.db.push_back(bp - bm - bp * bh * b + b * bh * bm);
        }
    }
    return out;
}

std::vector<double> alZeroCurvatureResidual(const AlState& s, AlVariant variant, const std::vector<cplx>& zs) {
    const AlDerivative v = alEomRhs(s, variant);
    const long len = static_cast<long>(s.nSites());
    // V at site len is needed for the last site; build it on a state one site longer
    // only when the boundary is vanishing (the periodic case wraps).
    std::vector<double> out;
    for (const cplx z : zs) {
        if (z == cplx{}) throw SpectralPole("AL residual at z = 0");
        double r = 0.0;
        for (long n = 0; n < len; ++n) {
            const CMatrix l = alLax(s, n, z);
            CMatrix vNext(s.blockDim(), s.blockDim());
            if (s.boundary == AlBoundary::Periodic || n + 1 < len) {
                vNext = alVOperator(s, (n + 1) % len, variant, z);
            } else {
                AlState ext = s;
                ext.bHat.push_back(CMatrix(s.nDim, s.mDim));
                ext.b.push_back(CMatrix(s.mDim, s.nDim));
                vNext = alVOperator(ext, n + 1, variant, z);
            }
            const CMatrix dl = offBlocks(v.dbHat[n], v.db[n]);
            r = std::max(r, maxAbsDiff(dl, vNext * l - l * alVOperator(s, n, variant, z)));
        }
        out.push_back(r);
    }
    return out;
}

namespace {

AlState axpy(const AlState& s, cplx h, const AlDerivative& k) {
    AlState out = s;
    for (std::size_t n = 0; n < s.nSites(); ++n) {
        out.bHat[n] += h * k.dbHat[n];
        out.b[n] += h * k.db[n];
    }
    return out;
}

}  // namespace

AlTrajectory alEvolve(const AlState& s, AlVariant variant, double dt, long steps, long sampleEvery) {
    s.validate();
    if (!(dt > 0.0)) throw DimensionError("dt must be positive");
    if (steps < 0) throw DimensionError("steps must be non-negative");
    AlTrajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(s);
    AlState cur = s;
    for (long step = 1; step <= steps; ++step) {
        const AlDerivative k1 = alEomRhs(cur, variant);
        const AlDerivative k2 = alEomRhs(axpy(cur, 0.5 * dt, k1), variant);
        const AlDerivative k3 = alEomRhs(axpy(cur, 0.5 * dt, k2), variant);
        const AlDerivative k4 = alEomRhs(axpy(cur, dt, k3), variant);
        for (std::size_t n = 0; n < cur.nSites(); ++n) {
            cur.bHat[n] += (dt / 6.0) * (k1.dbHat[n] + 2.0 * k2.dbHat[n] + 2.0 * k3.dbHat[n] + k4.dbHat[n]);
            cur.b[n] += (dt / 6.0) * (k1.db[n] + 2.0 * k2.db[n] + 2.0 * k3.db[n] + k4.db[n]);
        }
        if (!cur.allFinite()) throw BlowUp(step);
        if (step == steps || (sampleEvery > 0 && step % sampleEvery == 0)) {
            traj.times.push_back(static_cast<double>(step) * dt);
            traj.states.push_back(cur);
        }
    }
    return traj;
}

cplx alHamiltonian(const AlState& s) {
    s.validate();
    cplx h = 0.0;
    const long len = static_cast<long>(s.nSites());
    for (long n = 0; n < len; ++n)
        h += (s.bHatAt(n + 1) * s.bAt(n)).trace() + (s.bAt(n + 1) * s.bHatAt(n)).trace();
    return h;
}

namespace {

void checkParams(const AlDarbouxParams& p) {
    if (p.bigQ == cplx{}) throw InconsistentDressing("Q must be nonzero");
    if (p.pair.bHat.empty()) throw DimensionError("rank-one pair not set");
    if (p.pair.tripleResidual() > 1e-12) throw InconsistentDressing("pair violates the triple closure");
}

constexpr double kSingular = 1e-12;

}  // namespace

AlFundamentalSoliton alSolitonFundamental(const AlDarbouxParams& p, std::size_t nSites) {
    checkParams(p);
    if (nSites == 0) throw DimensionError("lattice needs at least one site");
    const cplx k = p.pair.kappa;
    const cplx q2 = p.bigQ * p.bigQ;
    AlFundamentalSoliton sol;
    sol.state = AlState::zeros(nSites, p.pair.nDim(), p.pair.mDim(), AlBoundary::Vanishing);
    cplx a = p.a1, d = p.d1, bh = p.bHat1, b = p.b1;
    for (std::size_t n = 0; n < nSites; ++n) {
        sol.a.push_back(a);
        sol.d.push_back(d);
        sol.bHatScalar.push_back(bh);
        sol.bScalar.push_back(b);
        sol.state.bHat[n] = bh * p.pair.bHat;
        sol.state.b[n] = b * p.pair.b;
        const cplx aNext = a - bh * b * (1.0 + k * a);
        const cplx dNext = d - b * bh * (1.0 + k * d);
        const long site = static_cast<long>(n) + 2;
        if (std::abs(1.0 + k * aNext) < kSingular) throw SingularDressing(site, "1 + kappa a vanishes");
        if (std::abs(1.0 + k * dNext) < kSingular) throw SingularDressing(site, "1 + kappa d vanishes");
        bh = bh / (q2 * (1.0 + k * dNext));
        b = q2 * b / (1.0 + k * aNext);
        a = aNext;
        d = dNext;
    }
    if (!sol.state.allFinite()) throw SingularDressing(static_cast<long>(nSites), "non-finite field");
    return sol;
}

double alDarbouxIdentityResidual(const AlFundamentalSoliton& sol, const AlDarbouxParams& p,
                                 const std::vector<cplx>& zs) {
    const AlState& s = sol.state;
    const long len = static_cast<long>(s.nSites());
    const cplx q = p.bigQ;
    const CMatrix in = CMatrix::identity(s.nDim);
    const CMatrix im = CMatrix::identity(s.mDim);
    const CMatrix bb = p.pair.bHat * p.pair.b;
    const CMatrix bbr = p.pair.b * p.pair.bHat;
    double worst = 0.0;
    for (const cplx z : zs) {
        if (z == cplx{}) throw SpectralPole("Darboux identity at z = 0");
        const auto m = [&](long n) {
            const CMatrix a = in + sol.a[n] * bb;
            const CMatrix d = im + sol.d[n] * bbr;
            return blockMatrix(q * z * in - a * (1.0 / (q * z)), -(1.0 / q) * s.bHat[n - 1], q * s.b[n - 1],
                               q * z * d - im * (1.0 / (q * z)));
        };
        const CMatrix lhat = diagBlocks(z * in, im * (1.0 / z));
        for (long n = 1; n + 1 < len; ++n) {
            const CMatrix l = alLax(s, n, z);
            worst = std::max(worst, maxAbsDiff(m(n + 1) * lhat, l * m(n)));
        }
    }
    return worst;
}

namespace {

struct OscillatorScalars {
    long lo;
    std::vector<Jet> bHat;
    std::vector<Jet> b;
};

OscillatorScalars oscillatorScalars(const AlDarbouxParams& p, const LinearSolution& lin, long anchor, long lo,
                                    std::size_t count, double t) {
    checkParams(p);
    if (lin.scheme() != LinearScheme::SymmetricAl)
        throw InconsistentDressing("oscillator seed must solve the symmetric discrete heat equation");
    const cplx q2 = p.bigQ * p.bigQ;
    const cplx expected = p.kappa / q2;
    if (std::abs(p.zeta - expected) > 1e-8 * std::max(1.0, std::abs(expected)))
        throw InconsistentDressing("zeta must equal kappa / Q^2, got " + std::to_string(std::abs(p.zeta - expected)) +
                                   " off");
    const cplx r = p.zeta / q2;
    const cplx coef = p.kappa * p.pair.kappa / q2;
    std::vector<cplx> part;
    for (const auto& m : lin.modes()) {
        if (std::abs(m.base - r) < 1e-12) throw DegenerateMode("mode base resonates with the homogeneous ratio");
        part.push_back(coef * m.amplitude / (m.base - r));
    }
    // particular solution of v_{n+1} = r v_n + coef beta_n
    const auto particular = [&](long n, double time) {
        Jet v;
        for (std::size_t s = 0; s < part.size(); ++s)
            v += Jet(part[s] * ipow(lin.modes()[s].base, n - 1)) * expRate(lin.rates()[s], time);
        return v;
    };
    const bool bZero = p.b1 == cplx{};
    Jet vLo;
    if (!bZero) {
        const cplx mu = dispersion(r, 1, LinearScheme::SymmetricAl);
        const cplx h = (1.0 / p.b1 - particular(anchor + 1, 0.0).v) / ipow(r, anchor + 1);
        vLo = Jet(h * ipow(r, lo)) * expRate(mu, t) + particular(lo, t);
    }
    std::vector<Jet> beta;
    for (std::size_t k = 0; k <= count; ++k) beta.push_back(lin.at(lo + static_cast<long>(k), t));
    OscillatorScalars out{lo, {}, {}};
    Jet v = vLo;
    for (std::size_t k = 0; k < count; ++k) {
        const long n = lo + static_cast<long>(k);
        Jet bPrime;
        if (!bZero) {
            const Jet vNext = Jet(r) * v + Jet(coef) * beta[k];
            if (std::abs(vNext.v) < 1e-300) throw SingularDressing(n, "b diverges");
            bPrime = Jet(1.0) / vNext;
            v = vNext;
        }
        const Jet aNext = Jet(p.kappa * p.pair.kappa) * beta[k + 1] * bPrime + Jet(p.zeta);
        out.bHat.push_back(aNext * beta[k] - Jet(q2) * beta[k + 1]);
        out.b.push_back(bPrime);
    }
    return out;
}

}  // namespace

AlState alSolitonOscillator(const AlDarbouxParams& p, const LinearSolution& linear, std::size_t nSites,
                            long firstSite, double t) {
    if (nSites == 0) throw DimensionError("lattice needs at least one site");
    const OscillatorScalars f = oscillatorScalars(p, linear, firstSite, firstSite, nSites, t);
    AlState s = AlState::zeros(nSites, p.pair.nDim(), p.pair.mDim(), AlBoundary::Vanishing);
    for (std::size_t n = 0; n < nSites; ++n) {
        s.bHat[n] = f.bHat[n].v * p.pair.bHat;
        s.b[n] = f.b[n].v * p.pair.b;
    }
    if (!s.allFinite()) throw SingularDressing(firstSite, "non-finite field");
    return s;
}

double alOscillatorEomResidual(const AlDarbouxParams& p, const LinearSolution& linear, std::size_t nSites,
                               long firstSite, double t) {
    const OscillatorScalars f = oscillatorScalars(p, linear, firstSite, firstSite - 1, nSites + 2, t);
    AlState s = AlState::zeros(nSites + 2, p.pair.nDim(), p.pair.mDim(), AlBoundary::Periodic);
    for (std::size_t n = 0; n < nSites + 2; ++n) {
        s.bHat[n] = f.bHat[n].v * p.pair.bHat;
        s.b[n] = f.b[n].v * p.pair.b;
    }
    const AlDerivative rhs = alEomRhs(s, AlVariant::AL);
    double worst = 0.0;
    for (std::size_t n = 1; n <= nSites; ++n) {
        worst = std::max(worst, maxAbsDiff(rhs.dbHat[n], f.bHat[n].d * p.pair.bHat));
        worst = std::max(worst, maxAbsDiff(rhs.db[n], f.b[n].d * p.pair.b));
    }
    return worst;
}

}  // namespace akns
