#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "akns/conserved.hpp"
#include "akns/darboux.hpp"
#include "akns/random.hpp"
#include "run.hpp"

namespace akns::cli {

namespace {

cplx rootOfUnity(long k, long n) { return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / n); }

const std::vector<cplx> kDarbouxLambdas{0.3, {0.5, 0.2}, {-0.7, 0.1}};

SolitonParams onePar(SolitonFamily family, cplx base, cplx kappa, cplx x1, cplx d1, int alpha) {
    SolitonParams s;
    s.family = family;
    if (family == SolitonFamily::Type1)
        s.xi = base;
    else
        s.c = base;
    s.kappa = kappa;
    s.x1 = x1;
    s.d1 = d1;
    s.flowAlpha = alpha;
    return s;
}

RunOutcome solitonAl(Run& run, Params& p) {
    p.choice("family", "fundamental", {"fundamental"});
    const auto sites = static_cast<std::size_t>(p.integer("sites", 12, 2, 100000));
    if (p.flag("periodic", false)) throw UsageError("params.periodic: the AL soliton lives on a vanishing window");
    AlDarbouxParams d;
    d.bigQ = p.complex("big_q", 1.0);
    d.a1 = p.complex("a1", 0.0);
    d.d1 = p.complex("d1", 0.0);
    d.bHat1 = p.complex("bhat1", 0.2);
    d.b1 = p.complex("b1", 0.2);
    const cplx kappa = p.complex("kappa", 1.0);
    const auto nDim = static_cast<std::size_t>(p.integer("n_dim", 1, 1, 16));
    const auto mDim = static_cast<std::size_t>(p.integer("m_dim", 1, 1, 16));
    p.finish();
    run.setResolved(p.resolved());

    d.pair = makeRankOnePair(nDim, mDim, kappa, Closure::TripleProduct);
    const AlFundamentalSoliton sol = alSolitonFundamental(d, sites);
    CsvWriter csv(run.artifact("soliton.csv"), {"t", "site", "field", "row", "col", "re", "im"});
    writeStateRows(csv, 0.0, 1, sol.state);
    run.below("Darboux identity residual", alDarbouxIdentityResidual(sol, d, {0.7, {1.2, 0.3}, {-0.5, 0.8}}), 1e-10);
    run.add("edge_magnitude", sol.state.edgeMagnitude());
    json snap = {{"t", 0.0}, {"state", stateJson(sol.state, 1)}};
    run.writeJson("state.json", snap);
    return run.finish();
}

}  // namespace

RunOutcome runSoliton(Run& run) {
    const RunConfig& cfg = run.config();
    Params p(cfg.params, "params");
    if (cfg.model == "al") return solitonAl(run, p);

    const std::string family = p.choice("family", "type1", {"type1", "type2", "toda", "bianchi"});
    const long sites = p.integer("sites", 12, 1, 100000);
    const long first = p.integer("first_site", family == "type2" ? -4 : 1, -1000000, 1000000);
    const cplx kappa = p.complex("kappa", 1.3);
    const int flow = static_cast<int>(p.integer("flow", 1, 1, 2));
    const auto nDim = static_cast<std::size_t>(p.integer("n_dim", 1, 1, 16));
    const auto mDim = static_cast<std::size_t>(p.integer("m_dim", 1, 1, 16));
    const std::string closure =
        p.choice("closure", family == "type2" ? "identity" : "triple", {"triple", "identity"});
    const bool periodic = p.flag("periodic", false);
    const double tEnd = p.real("t_end", 1.0);
    const long samples = p.integer("samples", 4, 1, 100000);

    std::unique_ptr<ScalarSolution> sol;
    const OneSoliton* single = nullptr;
    if (family == "type1" || family == "type2") {
        const bool t1 = family == "type1";
        const cplx base = t1 ? p.complex("xi", rootOfUnity(1, sites)) : p.complex("c", 0.4);
        const cplx x1 = p.complex("x1", 0.5), d1 = p.complex("d1", 0.3);
        auto one = std::make_unique<OneSoliton>(
            onePar(t1 ? SolitonFamily::Type1 : SolitonFamily::Type2, base, kappa, x1, d1, flow));
        single = one.get();
        sol = std::move(one);
    } else if (family == "toda") {
        std::vector<LinearMode> modes;
        for (const auto& [c, xi] : p.complexPairs("modes", {{1.0, 1.0}, {0.5, rootOfUnity(1, 8)}}))
            modes.push_back({c, xi});
        const cplx y1 = p.complex("y1", 0.8);
        const bool stationary = p.flag("stationary_boundary", false);
        sol = std::make_unique<TodaSolution>(
            TodaParams{buildLinearSolution(modes, flow, LinearScheme::ForwardDnls), kappa, y1, stationary});
    } else {
        const cplx xi = p.complex("xi", rootOfUnity(1, sites)), xi2 = p.complex("xi2", rootOfUnity(2, sites));
        const cplx x1 = p.complex("x1", 0.5), d1 = p.complex("d1", 0.3);
        const cplx x12 = p.complex("x1_2", 0.4), d12 = p.complex("d1_2", 0.1);
        sol = std::make_unique<BianchiSolution>(OneSoliton(onePar(SolitonFamily::Type1, xi, kappa, x1, d1, flow)),
                                                OneSoliton(onePar(SolitonFamily::Type1, xi2, kappa, x12, d12, flow)));
    }
    p.finish();
    run.setResolved(p.resolved());

    const RankOnePair pair =
        makeRankOnePair(nDim, mDim, kappa, closure == "identity" ? Closure::Identity : Closure::TripleProduct);
    const auto n = static_cast<std::size_t>(sites);
    run.add("period_defect", sol->periodDefect(n));

    CsvWriter csv(run.artifact("soliton.csv"), {"t", "site", "field", "row", "col", "re", "im"});
    CsvWriter res(run.artifact("residuals.csv"), {"t", "eom_residual", "darboux_residual"});
    double eomWorst = 0.0, darbouxWorst = 0.0;
    DnlsState last;
    double tLast = 0.0;
    for (long k = 0; k <= samples; ++k) {
        const double t = tEnd * static_cast<double>(k) / static_cast<double>(samples);
        last = sampleState(*sol, pair, n, t, first, periodic);
        tLast = t;
        writeStateRows(csv, t, first, last);
        const double eom = eomResidual(*sol, pair, n, t, first);
        eomWorst = std::max(eomWorst, eom);
        res.cell(t).cell(eom);
        if (single) {
            const double dr = darbouxIdentityResidual(*single, pair, n, t, kDarbouxLambdas, first);
            darbouxWorst = std::max(darbouxWorst, dr);
            res.cell(dr);
        } else {
            res.cell(std::string());
        }
        res.endRow();
    }
    run.below("equation-of-motion residual over samples", eomWorst, 1e-8);
    if (single) run.below("Darboux identity residual over samples", darbouxWorst, 1e-10);
    run.writeJson("state.json", {{"t", tLast}, {"state", stateJson(last, first)}});
    return run.finish();
}

namespace {

DnlsState randomDnls(Rng& rng, std::size_t nSites, std::size_t nDim, std::size_t mDim, double scale, cplx theta) {
    DnlsState s = DnlsState::zeros(nSites, nDim, mDim, theta);
    for (std::size_t n = 0; n < nSites; ++n) {
        s.x[n] = rng.matrix(nDim, mDim, scale);
        s.y[n] = rng.matrix(mDim, nDim, scale);
    }
    return s;
}

AlState randomAl(Rng& rng, std::size_t nSites, std::size_t nDim, std::size_t mDim, double scale) {
    AlState s = AlState::zeros(nSites, nDim, mDim);
    for (std::size_t n = 0; n < nSites; ++n) {
        s.bHat[n] = rng.matrix(nDim, mDim, scale);
        s.b[n] = rng.matrix(mDim, nDim, scale);
    }
    return s;
}

double relative(cplx now, cplx before) { return std::abs(now - before) / std::max(1.0, std::abs(before)); }

// random draw or a periodic Type1 soliton sampled at t = 0
DnlsState initialDnls(Params& p, std::uint64_t seed, std::size_t& sites) {
    const std::string init = p.choice("init", "random", {"random", "type1"});
    sites = static_cast<std::size_t>(p.integer("sites", 8, 1, 100000));
    if (init == "random") {
        const auto nDim = static_cast<std::size_t>(p.integer("n_dim", 1, 1, 16));
        const auto mDim = static_cast<std::size_t>(p.integer("m_dim", 1, 1, 16));
        const double scale = p.real("scale", 0.3);
        const cplx theta = p.complex("theta", 1.0);
        Rng rng(seed);
        return randomDnls(rng, sites, nDim, mDim, scale, theta);
    }
    const cplx kappa = p.complex("kappa", 1.3);
    const OneSoliton sol(onePar(SolitonFamily::Type1, p.complex("xi", rootOfUnity(1, static_cast<long>(sites))),
                                kappa, p.complex("x1", 0.5), p.complex("d1", 0.3), 1));
    return sampleState(sol, makeRankOnePair(1, 1, kappa, Closure::TripleProduct), sites, 0.0, 1, true);
}

}  // namespace

RunOutcome runEvolve(Run& run) {
    const RunConfig& cfg = run.config();
    Params p(cfg.params, "params");
    const bool al = cfg.model == "al";
    std::size_t sites = 0;
    DnlsState d0;
    AlState a0;
    int flow = 1;
    AlVariant variant = AlVariant::AL;
    if (al) {
        sites = static_cast<std::size_t>(p.integer("sites", 8, 1, 100000));
        const auto nDim = static_cast<std::size_t>(p.integer("n_dim", 1, 1, 16));
        const auto mDim = static_cast<std::size_t>(p.integer("m_dim", 1, 1, 16));
        const double scale = p.real("scale", 0.3);
        variant = p.choice("variant", "al", {"al", "network"}) == "al" ? AlVariant::AL : AlVariant::Network;
        Rng rng(cfg.seed);
        a0 = randomAl(rng, sites, nDim, mDim, scale);
    } else {
        d0 = initialDnls(p, cfg.seed, sites);
        flow = static_cast<int>(p.integer("flow", 1, 1, 2));
    }
    const double dt = p.real("dt", 1e-3);
    const long steps = p.integer("steps", 1000, 1, 100000000);
    const long every = p.integer("sample_every", 100, 1, 100000000);
    const std::vector<cplx> lambdas = p.complexes("lambdas", {0.7, {1.3, 0.4}, {-0.6, 0.9}});
    p.finish();
    run.setResolved(p.resolved());
    if (dt <= 0.0) throw UsageError("params.dt must be positive");

    CsvWriter traj(run.artifact("trajectory.csv"), {"t", "site", "field", "row", "col", "re", "im"});
    CsvWriter cons(run.artifact("conservation.csv"), {"t", "quantity", "re", "im"});
    double traceDrift = 0.0, chargeDrift = 0.0;

    auto record = [&](double t, const std::string& q, cplx v) {
        cons.cell(t).cell(q).cell(v);
        cons.endRow();
    };
    if (al) {
        const AlTrajectory tr = alEvolve(a0, variant, dt, steps, every);
        std::vector<cplx> trace0;
        for (const cplx z : lambdas) trace0.push_back(traceAt(a0, z));
        const cplx h0 = alHamiltonian(a0);
        double hDrift = 0.0;
        for (std::size_t k = 0; k < tr.states.size(); ++k) {
            const double t = tr.times[k];
            writeStateRows(traj, t, 1, tr.states[k]);
            for (std::size_t i = 0; i < lambdas.size(); ++i) {
                const cplx tt = traceAt(tr.states[k], lambdas[i]);
                record(t, "trace_" + std::to_string(i), tt);
                traceDrift = std::max(traceDrift, std::abs(tt - trace0[i]) / std::abs(trace0[i]));
            }
            const cplx h = alHamiltonian(tr.states[k]);
            record(t, "hamiltonian", h);
            hDrift = std::max(hDrift, relative(h, h0));
        }
        run.below("relative drift of tr T", traceDrift, 1e-6);
        if (variant == AlVariant::AL) run.below("drift of the Hamiltonian", hDrift, 1e-7);
        run.writeJson("state.json", {{"t", tr.times.back()}, {"state", stateJson(tr.states.back(), 1)}});
        return run.finish();
    }

    const DnlsTrajectory tr = evolve(d0, FlowId{flow}, dt, steps, every);
    std::vector<cplx> trace0;
    for (const cplx l : lambdas) trace0.push_back(traceAt(d0, l));
    const std::vector<cplx> h0 = localCharges(d0).h;
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
        const double t = tr.times[k];
        writeStateRows(traj, t, 1, tr.states[k]);
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            const cplx tt = traceAt(tr.states[k], lambdas[i]);
            record(t, "trace_" + std::to_string(i), tt);
            traceDrift = std::max(traceDrift, std::abs(tt - trace0[i]) / std::abs(trace0[i]));
        }
        const std::vector<cplx> h = localCharges(tr.states[k]).h;
        for (std::size_t i = 0; i < h.size(); ++i) {
            record(t, "H" + std::to_string(i + 1), h[i]);
            chargeDrift = std::max(chargeDrift, relative(h[i], h0[i]));
        }
    }
    run.below("relative drift of tr T", traceDrift, 1e-6);
    run.below("drift of H_1..H_4", chargeDrift, 1e-7);
    run.writeJson("state.json", {{"t", tr.times.back()}, {"state", stateJson(tr.states.back(), 1)}});
    return run.finish();
}

RunOutcome runCharges(Run& run) {
    const RunConfig& cfg = run.config();
    if (cfg.model != "dnls") throw UsageError("charges: only model dnls has local charges");
    Params p(cfg.params, "params");
    std::size_t sites = 0;
    const DnlsState s = initialDnls(p, cfg.seed, sites);
    const std::vector<cplx> samples = p.complexes("lambdas", {0.7, {1.3, 0.4}, {-0.6, 0.9}});
    p.finish();
    run.setResolved(p.resolved());
    if (s.nDim != 1) throw UsageError("params.n_dim: the trace normalization needs n_dim = 1");

    const ChargeReport rep = localCharges(s, samples);
    const std::vector<cplx> rec = chargeRecursion(rep.tau, 4);
    CsvWriter csv(run.artifact("charges.csv"),
                  {"k", "closed_re", "closed_im", "recursion_re", "recursion_im", "tau_re", "tau_im", "rel_diff"});
    double worst = 0.0;
    for (std::size_t k = 0; k < rep.h.size(); ++k) {
        const double rd = relative(rec[k], rep.h[k]);
        csv.cell(static_cast<long>(k + 1)).cell(rep.h[k]).cell(rec[k]).cell(rep.tau[k + 1]).cell(rd);
        csv.endRow();
        if (k + 1 < sites)
            worst = std::max(worst, rd);
        else
            run.note("H_" + std::to_string(k + 1) + " not compared: the lattice needs more than " +
                     std::to_string(k + 1) + " sites");
    }
    CsvWriter tr(run.artifact("trace_samples.csv"), {"lambda_re", "lambda_im", "trace_re", "trace_im"});
    for (const auto& [l, v] : rep.traceSamples) {
        tr.cell(l).cell(v);
        tr.endRow();
    }
    run.below("closed-form charges vs trace expansion", worst, 1e-10);
    return run.finish();
}

}  // namespace akns::cli
