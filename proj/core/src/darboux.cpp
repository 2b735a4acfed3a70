#include "akns/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "akns/errors.hpp"

namespace akns {

namespace {

constexpr double kPole = 1e-12;

Jet guardedDiv(const Jet& num, const Jet& den, long site, const char* what) {
    if (std::abs(den.v) < kPole) throw SingularSoliton(site, std::string(what) + " denominator vanishes");
    return num / den;
}

void checkSeed(const std::optional<cplx>& given, cplx derived, const char* name) {
    if (!given) return;
    if (std::abs(*given - derived) > 1e-8 * std::max(1.0, std::abs(derived)))
        throw InconsistentDressing(std::string(name) + " disagrees with the value forced by the other seeds");
}

bool isOne(cplx z) { return std::abs(z - 1.0) < 1e-14; }

}  // namespace

DerivedSeeds derivedSeeds(const SolitonParams& p) {
    if (p.kappa == cplx{}) throw InconsistentDressing("kappa must be nonzero");
    if (p.family == SolitonFamily::Type1) {
        const cplx k = p.kappa, xi = p.xi, d1 = p.d1;
        DerivedSeeds s{(1.0 - xi) / k - d1, 0.0};
        if (d1 != cplx{}) {
            if (p.x1 == cplx{}) throw InconsistentDressing("x1 must be nonzero when d1 is");
            if (std::abs(xi + k * d1) < kPole) throw SingularSoliton(2, "xi + kappa d1 vanishes");
            s.y1 = d1 * (xi - 1.0 + k * d1) / ((xi + k * d1) * p.x1);
        }
        return s;
    }
    if (p.c == cplx{}) throw DegenerateMode("c = 0 collapses both Type2 bases to 1");
    const cplx eta = 1.0 + p.c, eps = 1.0 - p.c;
    if (eta == cplx{} || eps == cplx{}) throw DegenerateMode("eta or epsilon vanishes");
    const cplx xb = eps / eta, kb = p.kappa / eta;
    DerivedSeeds s{(1.0 - xb) / kb - p.d1, 0.0};
    if (std::abs(kb * p.d1 + xb) < kPole) throw SingularSoliton(2, "kappa dhat1 + xi vanishes");
    const cplx d2 = p.d1 / (kb * p.d1 + xb);
    if (p.d1 != d2) {
        if (p.x1 == cplx{}) throw InconsistentDressing("x1 must be nonzero when dhat1 is");
        s.y1 = (p.d1 - d2) / p.x1;
    }
    return s;
}

OneSoliton::OneSoliton(SolitonParams p) : p_(std::move(p)) {
    if (p_.flowAlpha < 1) throw FlowUnsupported("flow index must be positive");
    if (p_.family == SolitonFamily::Type1) {
        if (p_.xi == cplx{}) throw DegenerateMode("xi = 0");
        if (isOne(p_.xi)) {
            if (p_.d1 != cplx{} || p_.x1 != cplx{}) throw DegenerateMode("xi = 1 only carries the trivial dressing");
            trivial_ = true;
        }
    }
    seeds_ = derivedSeeds(p_);
    checkSeed(p_.a1, seeds_.a1, "a1");
    checkSeed(p_.y1, seeds_.y1, "y1");
}

SiteJets OneSoliton::at(long n, double t) const {
    return p_.family == SolitonFamily::Type1 ? type1(n, t) : type2(n, t);
}

SiteJets OneSoliton::type1(long n, double t) const {
    if (trivial_) return {};
    const cplx xi = p_.xi, k = p_.kappa, d1 = p_.d1, x1 = p_.x1;
    const cplx a1 = seeds_.a1, y1 = seeds_.y1;
    const Jet e = expRate(dispersion(xi, p_.flowAlpha, LinearScheme::ForwardDnls), t);
    const Jet p = Jet(ipow(xi, n - 1)) * e;
    const Jet q = Jet(1.0) / p;
    const Jet qq = q / Jet(xi);
    const Jet one(1.0);
    SiteJets s;
    s.d = guardedDiv(Jet((xi - 1.0) * d1), p * Jet(xi - 1.0) + (p - one) * Jet(k * d1), n, "d");
    s.x = guardedDiv(p * Jet((xi - 1.0) * x1), p * Jet(xi - 1.0 + k * d1) - Jet(k * d1), n, "x");
    s.a = guardedDiv(Jet((xi - 1.0) * a1), q * Jet(xi - 1.0) + Jet(k * a1) * (q - one), n, "a");
    s.y = guardedDiv(qq * Jet((xi - 1.0) * (1.0 - k * a1) * y1), qq * Jet(xi - 1.0 + k * a1) - Jet(k * a1), n, "y");
    return s;
}

SiteJets OneSoliton::type2(long n, double t) const {
    const cplx c = p_.c, k = p_.kappa;
    const cplx eta = 1.0 + c, eps = 1.0 - c;
    const cplx xb = eps / eta, kb = k / eta;
    const cplx dh1 = p_.d1, ah1 = seeds_.a1, x1 = p_.x1, y1 = seeds_.y1;
    const Jet e = expRate(dispersion(eta, p_.flowAlpha, LinearScheme::ForwardDnls), t);
    const Jet eh = expRate(dispersion(eps, p_.flowAlpha, LinearScheme::ForwardDnls), t);
    const Jet one(1.0);
    SiteJets s;
    s.x = guardedDiv(Jet((xb - 1.0) * x1),
                     Jet((xb - 1.0 + kb * dh1) * ipow(eta, 1 - n)) / e - Jet(kb * dh1 * ipow(eps, 1 - n)) / eh, n,
                     "x");
    s.y = guardedDiv(Jet(eta * (xb - 1.0) * (1.0 - kb * ah1) * y1),
                     Jet((xb - 1.0 + kb * ah1) * ipow(eta, n)) * e - Jet(kb * ah1 * ipow(eps, n)) * eh, n, "y");
    const Jet p = (Jet(ipow(eps, n - 1)) * eh) / (Jet(ipow(eta, n - 1)) * e);
    const Jet dh = guardedDiv(Jet((xb - 1.0) * dh1), p * Jet(xb - 1.0) + (p - one) * Jet(kb * dh1), n, "dhat");
    const Jet ip = one / p;
    const Jet ah = guardedDiv(Jet((xb - 1.0) * ah1), ip * Jet(xb - 1.0) + Jet(kb * ah1) * (ip - one), n, "ahat");
    s.a = (Jet(k) * ah - Jet(c)) / Jet(k);
    s.d = (Jet(k) * dh - Jet(c)) / Jet(k);
    return s;
}

double OneSoliton::periodDefect(std::size_t nSites) const {
    const long len = static_cast<long>(nSites);
    if (p_.family == SolitonFamily::Type1) return trivial_ ? 0.0 : std::abs(ipow(p_.xi, len) - 1.0);
    return std::max(std::abs(ipow(1.0 + p_.c, len) - 1.0), std::abs(ipow(1.0 - p_.c, len) - 1.0));
}

DressingSequence iterateType1Dressing(const SolitonParams& p, std::size_t nSites) {
    if (p.family != SolitonFamily::Type1) throw VariantUnavailable("dressing recursion is the Type1 one");
    const DerivedSeeds seeds = derivedSeeds(p);
    DressingSequence out;
    cplx a = seeds.a1, d = p.d1;
    for (std::size_t n = 1; n <= nSites; ++n) {
        out.a.push_back(a);
        out.d.push_back(d);
        const long next = static_cast<long>(n) + 1;
        if (std::abs(p.xi + p.kappa * d) < kPole) throw SingularSoliton(next, "xi + kappa d_n vanishes");
        if (std::abs(1.0 - p.kappa * a) < kPole) throw SingularSoliton(next, "1 - kappa a_n vanishes");
        d = d / (p.xi + p.kappa * d);
        a = p.xi * a / (1.0 - p.kappa * a);
    }
    return out;
}

TodaSolution::TodaSolution(TodaParams p) : p_(std::move(p)) {
    if (p_.linear.scheme() != LinearScheme::ForwardDnls)
        throw InconsistentDressing("Toda data must solve the forward lattice equation");
    if (p_.kappa == cplx{}) throw InconsistentDressing("kappa must be nonzero");
    if (p_.y1 == cplx{}) throw InconsistentDressing("y1 must be nonzero");
    x2_ = p_.linear.at(2, 0.0).v;
    if (std::abs(x2_) < kPole) throw SingularSoliton(2, "boundary value xhat_2 vanishes");
}

SiteJets TodaSolution::at(long n, double t) const {
    if (p_.stationaryBoundary) {
        const double drift = std::abs(p_.linear.at(2, t).d);
        if (drift > 1e-10)
            throw InconsistentBoundaryTerm("d/dt xhat_2 = " + std::to_string(drift) + " under the requested flow");
    }
    const Jet h0 = p_.linear.at(n, t);
    const Jet h1 = p_.linear.at(n + 1, t);
    const Jet h2 = p_.linear.at(n + 2, t);
    if (std::abs(h0.v) < kPole) throw SingularSoliton(n, "xhat_n vanishes");
    if (std::abs(h1.v) < kPole) throw SingularSoliton(n + 1, "xhat_n vanishes");
    const cplx scale = p_.kappa * x2_ * p_.y1;
    SiteJets s;
    s.y = Jet(x2_ * p_.y1) / h1;
    s.x = -(h2 * h0 - h1 * h1) / (Jet(scale) * h0);
    s.a = (Jet(1.0) - h1 / h0) / Jet(p_.kappa);
    return s;
}

double TodaSolution::periodDefect(std::size_t nSites) const {
    double worst = 0.0;
    for (const auto& m : p_.linear.modes())
        if (m.amplitude != cplx{}) worst = std::max(worst, std::abs(ipow(m.base, static_cast<long>(nSites)) - 1.0));
    return worst;
}

namespace {

cplx spectralKey(const OneSoliton& s) {
    return s.params().family == SolitonFamily::Type1 ? s.params().xi : s.params().c;
}

}  // namespace

BianchiSolution::BianchiSolution(OneSoliton first, OneSoliton second) : s1_(std::move(first)), s2_(std::move(second)) {
    if (std::abs(s1_.kappa() - s2_.kappa()) > 1e-12) throw InconsistentDressing("the two solitons carry different kappa");
    if (s1_.flowAlpha() != s2_.flowAlpha()) throw InconsistentDressing("the two solitons follow different flows");
    if (s1_.params().family == s2_.params().family && std::abs(spectralKey(s1_) - spectralKey(s2_)) < 1e-12)
        throw DegenerateBianchi("coincident spectral parameters");
}

SiteJets BianchiSolution::at(long n, double t) const {
    if (s2_.trivial()) return s1_.at(n, t);
    if (s1_.trivial()) return s2_.at(n, t);
    const Jet k(kappa());
    const SiteJets u1 = s1_.at(n, t), u2 = s2_.at(n, t);
    const SiteJets v1 = s1_.at(n - 1, t), v2 = s2_.at(n - 1, t);
    const SiteJets w1 = s1_.at(n + 1, t), w2 = s2_.at(n + 1, t);
    SiteJets out;
    {
        const Jet da = u1.a - u2.a, dd = u1.d - u2.d, dx = u1.x - u2.x, dy = v1.y - v2.y;
        const Jet den = dx * dy + k * da * dd;
        out.x = u1.x + guardedDiv(k * u2.x * da * da + v2.y * dx * dx - k * (u2.a - u2.d) * da * dx, den, n, "x");
    }
    {
        // the closed-form y at site n + 1 gives y_n
        const Jet da = w1.a - w2.a, dd = w1.d - w2.d, dx = w1.x - w2.x, dy = u1.y - u2.y;
        const Jet den = dx * dy + k * da * dd;
        out.y = u1.y + guardedDiv(k * u2.y * dd * dd + w2.x * dy * dy + k * (w2.a - w2.d) * dd * dy, den, n + 1, "y");
    }
    return out;
}

double BianchiSolution::periodDefect(std::size_t nSites) const {
    return std::max(s1_.periodDefect(nSites), s2_.periodDefect(nSites));
}

namespace {

void checkPair(const ScalarSolution& sol, const RankOnePair& pair) {
    if (pair.bHat.empty()) throw DimensionError("rank-one pair not set");
    if (std::abs(pair.kappa - sol.kappa()) > 1e-12)
        throw InconsistentDressing("pair kappa differs from the solution kappa");
    if (pair.tripleResidual() > 1e-12) throw InconsistentDressing("pair violates the triple closure");
    if (sol.needsIdentityClosure() && (pair.nDim() != pair.mDim() || pair.identityResidual() > 1e-12))
        throw VariantUnavailable("Type2 data need a pair with bHat b = kappa I");
}

std::vector<SiteJets> sampleJets(const ScalarSolution& sol, long first, std::size_t count, double t) {
    std::vector<SiteJets> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const long n = first + static_cast<long>(i);
        SiteJets s = sol.at(n, t);
        for (const Jet* j : {&s.x, &s.y, &s.a, &s.d})
            if (!std::isfinite(std::abs(j->v)) || !std::isfinite(std::abs(j->d)))
                throw SingularSoliton(n, "non-finite profile");
        out.push_back(s);
    }
    return out;
}

DnlsState lift(const std::vector<SiteJets>& jets, const RankOnePair& pair) {
    DnlsState s = DnlsState::zeros(jets.size(), pair.nDim(), pair.mDim());
    for (std::size_t i = 0; i < jets.size(); ++i) {
        s.x[i] = jets[i].x.v * pair.bHat;
        s.y[i] = jets[i].y.v * pair.b;
    }
    return s;
}

FieldDerivative liftDerivative(const std::vector<SiteJets>& jets, const RankOnePair& pair) {
    FieldDerivative v;
    for (const auto& j : jets) {
        v.dx.push_back(j.x.d * pair.bHat);
        v.dy.push_back(j.y.d * pair.b);
    }
    return v;
}

}  // namespace

DnlsState sampleState(const ScalarSolution& sol, const RankOnePair& pair, std::size_t nSites, double t,
                      long firstSite, bool requirePeriodic) {
    if (nSites == 0) throw DimensionError("lattice needs at least one site");
    checkPair(sol, pair);
    if (requirePeriodic) {
        const double defect = sol.periodDefect(nSites);
        if (defect >= 1e-10)
            throw PeriodicityViolation("profile is not " + std::to_string(nSites) + "-periodic (defect " +
                                       std::to_string(defect) + ")");
    }
    return lift(sampleJets(sol, firstSite, nSites, t), pair);
}

FieldDerivative sampleDerivative(const ScalarSolution& sol, const RankOnePair& pair, std::size_t nSites, double t,
                                 long firstSite) {
    if (nSites == 0) throw DimensionError("lattice needs at least one site");
    checkPair(sol, pair);
    return liftDerivative(sampleJets(sol, firstSite, nSites, t), pair);
}

double eomResidual(const ScalarSolution& sol, const RankOnePair& pair, std::size_t nSites, double t, long firstSite) {
    if (sol.flowAlpha() > 2) throw FlowUnsupported("equations of motion exist for flows 1 and 2 only");
    if (nSites == 0) throw DimensionError("lattice needs at least one site");
    checkPair(sol, pair);
    constexpr long pad = 2;
    const auto jets = sampleJets(sol, firstSite - pad, nSites + 2 * pad, t);
    const DnlsState s = lift(jets, pair);
    const FieldDerivative rhs = eomRhs(s, FlowId{sol.flowAlpha()});
    double worst = 0.0;
    for (std::size_t i = pad; i < pad + nSites; ++i) {
        worst = std::max(worst, maxAbsDiff(rhs.dx[i], jets[i].x.d * pair.bHat));
        worst = std::max(worst, maxAbsDiff(rhs.dy[i], jets[i].y.d * pair.b));
    }
    return worst;
}

double zeroCurvatureWindowResidual(const ScalarSolution& sol, const RankOnePair& pair, std::size_t nSites, double t,
                                   const std::vector<cplx>& lambdas, long firstSite) {
    if (nSites == 0) throw DimensionError("lattice needs at least one site");
    if (lambdas.empty()) throw DimensionError("need at least one spectral sample");
    checkPair(sol, pair);
    constexpr long pad = 3;
    const auto jets = sampleJets(sol, firstSite - pad, nSites + 2 * pad, t);
    const DnlsState s = lift(jets, pair);
    const FieldDerivative v = liftDerivative(jets, pair);
    const FlowId flow{sol.flowAlpha()};
    double worst = 0.0;
    for (const cplx lam : lambdas) {
        for (long i = pad; i < pad + static_cast<long>(nSites); ++i) {
            const CMatrix l = laxL(s, i, lam);
            const CMatrix rhs = vOperator(s, i + 1, flow, lam) * l - l * vOperator(s, i, flow, lam);
            worst = std::max(worst, maxAbsDiff(laxTimeDerivative(s, i, v), rhs));
        }
    }
    return worst;
}

namespace {

std::vector<CMatrix> blocksFromJets(const std::vector<SiteJets>& jets, const RankOnePair& pair) {
    // jets start one site left of the window so y_{n-1} is available
    const CMatrix bb = pair.bHat * pair.b;
    const CMatrix bbr = pair.b * pair.bHat;
    std::vector<CMatrix> out;
    for (std::size_t i = 1; i < jets.size(); ++i)
        out.push_back(blockMatrix(jets[i].a.v * bb, -jets[i].x.v * pair.bHat, jets[i - 1].y.v * pair.b,
                                  jets[i].d.v * bbr));
    return out;
}

}  // namespace

std::vector<CMatrix> dressingBlocks(const OneSoliton& sol, const RankOnePair& pair, std::size_t nSites, double t,
                                    long firstSite) {
    if (nSites == 0) throw DimensionError("lattice needs at least one site");
    checkPair(sol, pair);
    return blocksFromJets(sampleJets(sol, firstSite - 1, nSites + 1, t), pair);
}

double darbouxIdentityResidual(const OneSoliton& sol, const RankOnePair& pair, std::size_t nSites, double t,
                               const std::vector<cplx>& lambdas, long firstSite) {
    if (nSites == 0) throw DimensionError("lattice needs at least one site");
    checkPair(sol, pair);
    const auto jets = sampleJets(sol, firstSite - 1, nSites + 2, t);
    const auto k = blocksFromJets(jets, pair);  // sites firstSite .. firstSite+nSites
    const std::size_t nd = pair.nDim(), md = pair.mDim();
    const CMatrix in = CMatrix::identity(nd), im = CMatrix::identity(md);
    const CMatrix eye = CMatrix::identity(nd + md);
    double worst = 0.0;
    for (const cplx lam : lambdas) {
        const CMatrix lhat = blockMatrix((lam + 1.0) * in, CMatrix(nd, md), CMatrix(md, nd), im);
        for (std::size_t i = 0; i < nSites; ++i) {
            const SiteJets& j = jets[i + 1];
            const CMatrix x = j.x.v * pair.bHat;
            const CMatrix y = j.y.v * pair.b;
            const CMatrix l = blockMatrix(lam * in + in + x * y, x, y, im);
            const CMatrix mNow = lam * eye + k[i];
            const CMatrix mNext = lam * eye + k[i + 1];
            worst = std::max(worst, maxAbsDiff(mNext * lhat, l * mNow));
        }
    }
    return worst;
}

DnlsState solitonType1(const SolitonParams& p, const RankOnePair& pair, std::size_t nSites, double t,
                       long firstSite) {
    if (p.family != SolitonFamily::Type1) throw VariantUnavailable("parameters describe a Type2 soliton");
    return sampleState(OneSoliton(p), pair, nSites, t, firstSite);
}

DnlsState solitonType2(const SolitonParams& p, const RankOnePair& pair, std::size_t nSites, double t,
                       long firstSite) {
    if (p.family != SolitonFamily::Type2) throw VariantUnavailable("parameters describe a Type1 soliton");
    return sampleState(OneSoliton(p), pair, nSites, t, firstSite);
}

DnlsState todaGeneralSolution(const TodaParams& p, const RankOnePair& pair, std::size_t nSites, double t,
                              long firstSite) {
    return sampleState(TodaSolution(p), pair, nSites, t, firstSite);
}

DnlsState bianchiTwoSoliton(const OneSoliton& s1, const OneSoliton& s2, const RankOnePair& pair,
                            std::size_t nSites, double t, long firstSite) {
    return sampleState(BianchiSolution(s1, s2), pair, nSites, t, firstSite);
}

}  // namespace akns
