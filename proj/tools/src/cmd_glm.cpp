#include <algorithm>
#include <cmath>
#include <cstdio>

#include "akns/colehopf.hpp"
#include "akns/glm.hpp"
#include "akns/suites.hpp"
#include "run.hpp"

namespace akns::cli {

namespace {

std::string shortNum(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

void blockRows(CsvWriter& csv, long i, long j, const char* block, const CMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            csv.cell(i).cell(j).cell(std::string(block)).cell(static_cast<long>(r)).cell(static_cast<long>(c));
            csv.cell(m(r, c));
            csv.endRow();
        }
}

}  // namespace

RunOutcome runGlm(Run& run) {
    const RunConfig& cfg = run.config();
    Params p(cfg.params, "params");
    GlmConfig gc;
    gc.scheme = p.choice("scheme", "forward-backward", {"forward-backward", "symmetric"}) == "symmetric"
                    ? GlmScheme::Symmetric
                    : GlmScheme::ForwardBackward;
    const long nModes = p.integer("modes", 1, 1, 2);
    gc.windowN = p.integer("window", 12, 1, 2000);
    gc.firstIndex = p.integer("first_index", 0, -1000000, 1000000);
    gc.time = p.real("t", 0.4);
    gc.w = p.complex("w", 1.0);
    gc.alpha = static_cast<int>(p.integer("alpha", 1, 1, 8));
    const cplx kappa = p.complex("kappa", 1.0);
    const auto nDim = static_cast<std::size_t>(p.integer("n_dim", 1, 1, 16));
    const auto mDim = static_cast<std::size_t>(p.integer("m_dim", nModes == 2 ? 2 : 1, 1, 16));
    const cplx lam = p.complex("lambda", 0.5), lamHat = p.complex("lambda_hat", nModes == 2 ? 0.6 : 0.5);
    const RankOnePair pair = makeRankOnePair(nDim, mDim, kappa, Closure::TripleProduct);
    std::vector<GlmMode> modes{{lam, lamHat, pair.b, pair.bHat}};
    if (nModes == 2) {
        const cplx lam2 = p.complex("lambda2", 0.8), lamHat2 = p.complex("lambda_hat2", cplx(0.7, 0.2));
        modes.push_back({lam2, lamHat2, p.complex("amplitude2", 0.5) * pair.b, pair.bHat});
    }
    p.finish();
    run.setResolved(p.resolved());

    const GlmSystem sys = buildHankelData(modes, gc);
    const GlmSolution sol = solveGlm(sys);
    json modeList = json::array();
    for (const auto& m : modes) modeList.push_back({{"lambda", complexJson(m.lambda)}, {"lambda_hat", complexJson(m.lambdaHat)}});
    run.writeJson("glm_system.json",
                  {{"scheme", gc.scheme == GlmScheme::Symmetric ? "symmetric" : "forward-backward"},
                   {"w", complexJson(gc.w)},
                   {"alpha", gc.alpha},
                   {"window", gc.windowN},
                   {"first_index", gc.firstIndex},
                   {"t", gc.time},
                   {"modes", modeList},
                   {"edge_decay", sys.edgeDecay()}});

    const long last = gc.firstIndex + 2 * gc.windowN;
    CsvWriter csv(run.artifact("glm_bc.csv"), {"i", "j", "block", "row", "col", "re", "im"});
    for (long i = gc.firstIndex; i <= last; ++i)
        for (long j = i; j <= last; ++j) {
            blockRows(csv, i, j, "B", sol.b(i, j));
            blockRows(csv, i, j, "C", sol.c(i, j));
        }
    const LocalFields lf = extractLocalFields(sol);
    CsvWriter loc(run.artifact("glm_local.csv"), {"n", "field", "row", "col", "re", "im"});
    for (std::size_t k = 0; k < lf.x.size(); ++k) {
        const long n = lf.firstIndex + static_cast<long>(k);
        for (const auto& [name, m] : {std::pair{"x", &lf.x[k]}, std::pair{"y", &lf.y[k]}})
            for (std::size_t r = 0; r < m->rows(); ++r)
                for (std::size_t c = 0; c < m->cols(); ++c) {
                    loc.cell(n).cell(std::string(name)).cell(static_cast<long>(r)).cell(static_cast<long>(c));
                    loc.cell((*m)(r, c));
                    loc.endRow();
                }
    }

    run.add("edge_decay", sys.edgeDecay());
    run.below("factorization residual", sol.factorizationResidual(), 1e-10);
    run.below("discrete GLM residual", sol.dglmResidual(), 1e-10);
    if (nModes == 1) {
        const GlmClosedForm cf = oneSolitonClosedForm(lam, lamHat, pair, gc);
        double worst = 0.0;
        for (long i = gc.firstIndex; i <= last; ++i)
            for (long j = i; j <= last; ++j)
                worst = std::max({worst, maxAbsDiff(sol.b(i, j), cf.b.at(i, j)), maxAbsDiff(sol.c(i, j), cf.c.at(i, j))});
        run.below("closed-form delta for B and C", worst, 1e-10);
    }
    return run.finish();
}

RunOutcome runBurgers(Run& run) {
    const RunConfig& cfg = run.config();
    if (cfg.model != "dnls") throw UsageError("burgers: the Cole-Hopf map is built on model dnls");
    Params p(cfg.params, "params");
    std::vector<LinearMode> modes;
    for (const auto& [c, xi] : p.complexPairs("modes", {{1.0, 1.0}, {0.7, cplx(1.2, 0.3)}})) modes.push_back({c, xi});
    const long first = p.integer("first_site", -5, -1000000, 1000000);
    const auto sites = static_cast<std::size_t>(p.integer("sites", 10, 2, 100000));
    const double t = p.real("t", 0.3);
    const bool truncation = p.flag("truncation", true);
    p.finish();
    run.setResolved(p.resolved());

    const ColeHopfResult ch = coleHopfForward(buildLinearSolution(modes, 2, LinearScheme::ForwardDnls), first, sites, t);
    CsvWriter csv(run.artifact("burgers.csv"), {"site", "y_re", "y_im", "u_re", "u_im"});
    for (std::size_t k = 0; k < ch.u.values.size(); ++k) {
        csv.cell(ch.u.firstSite + static_cast<long>(k)).cell(ch.y.values[k]).cell(ch.u.values[k]);
        csv.endRow();
    }
    run.below("linear heat residual", ch.heatResidual, 1e-10);
    run.below("y-equation residual", ch.hjResidual, 1e-10);
    run.below("discrete Burgers residual", ch.burgersResidual, 1e-10);

    if (truncation) {
        const TruncationReport rep = burgersTruncationOrder();
        CsvWriter tr(run.artifact("truncation.csv"), {"series", "delta", "residual", "ratio"});
        for (const auto& [name, s] : {std::pair{"literal", &rep.literal}, std::pair{"diffusive", &rep.diffusive},
                                      std::pair{"hj", &rep.hj}})
            for (std::size_t k = 0; k < rep.deltas.size(); ++k) {
                tr.cell(std::string(name)).cell(rep.deltas[k]).cell(s->residual[k]);
                tr.cell(k < s->ratio.size() ? num(s->ratio[k]) : std::string());
                tr.endRow();
            }
        for (std::size_t k = 0; k < rep.literal.ratio.size(); ++k)
            run.inRange("truncation ratio delta " + shortNum(rep.deltas[k]) + " -> " + shortNum(rep.deltas[k + 1]),
                        rep.literal.ratio[k], 6.0, 10.0);
        for (std::size_t k = 0; k < rep.diffusive.ratio.size(); ++k)
            run.note("diffusive scaling: u ratio " + shortNum(rep.diffusive.ratio[k]) + ", y-equation ratio " +
                     shortNum(rep.hj.ratio[k]));
    }
    return run.finish();
}

RunOutcome runContinuum(Run& run) {
    const RunConfig& cfg = run.config();
    if (cfg.model != "dnls") throw UsageError("continuum: the limit is taken from model dnls");
    Params p(cfg.params, "params");
    ContinuumGrid g;
    g.xMin = p.real("x_min", g.xMin);
    g.xMax = p.real("x_max", g.xMax);
    g.hx = p.real("hx", g.hx);
    g.tMin = p.real("t_min", g.tMin);
    g.tMax = p.real("t_max", g.tMax);
    g.ht = p.real("ht", g.ht);
    g.g = p.complex("g", g.g);
    g.kappa = p.complex("kappa", g.kappa);
    p.finish();
    run.setResolved(p.resolved());
    if (g.hx <= 0.0 || g.ht <= 0.0 || g.xMax < g.xMin || g.tMax < g.tMin)
        throw UsageError("params: the grid needs positive steps and ordered bounds");

    const ContinuumReport rep = verifyContinuumNls(g);
    CsvWriter csv(run.artifact("continuum.csv"), {"x", "t", "u_re", "u_im", "uhat_re", "uhat_im"});
    const auto nx = static_cast<long>(std::floor((g.xMax - g.xMin) / g.hx + 1e-9));
    const auto nt = static_cast<long>(std::floor((g.tMax - g.tMin) / g.ht + 1e-9));
    for (long a = 0; a <= nt; ++a)
        for (long b = 0; b <= nx; ++b) {
            const double x = g.xMin + static_cast<double>(b) * g.hx, t = g.tMin + static_cast<double>(a) * g.ht;
            const ContinuumPair u = heatKernelPair(x, t, g.g, g.kappa);
            csv.cell(x).cell(t).cell(u.u).cell(u.uHat);
            csv.endRow();
        }
    run.add("residual", rep.residual);
    run.add("halved_residual", rep.halvedResidual);
    run.add("u_residual", rep.uResidual);
    run.add("partner_residual", rep.partnerResidual);
    run.inRange("residual ratio under h-halving", rep.ratio, 3.5, 4.5);
    return run.finish();
}

RunOutcome runVerifyAll(Run& run) {
    const RunConfig& cfg = run.config();
    Params p(cfg.params, "params");
    p.finish();
    run.setResolved(p.resolved());

    const auto results = suites::runAll({cfg.seed, cfg.toleranceScale}, std::max(1U, cfg.threads));
    CsvWriter csv(run.artifact("verify_residuals.csv"), {"suite", "check", "value", "lower", "upper", "pass"});
    json list = json::array();
    for (const auto& r : results) {
        json checks = json::array();
        for (const auto& c : r.checks) {
            csv.cell(static_cast<long>(r.id)).cell("\"" + c.label + "\"").cell(c.value);
            csv.cell(c.ranged ? num(c.lower) : std::string()).cell(c.upper).cell(std::string(c.pass ? "1" : "0"));
            csv.endRow();
            json jc = {{"label", c.label}, {"value", c.value}, {"upper", c.upper}, {"pass", c.pass}};
            if (c.ranged) jc["lower"] = c.lower;
            if (!c.error.empty()) jc["error"] = c.error;
            checks.push_back(jc);
        }
        list.push_back({{"id", r.id},
                        {"key", suites::registry()[static_cast<std::size_t>(r.id - 1)].key},
                        {"name", r.name},
                        {"pass", r.pass()},
                        {"max_residual", r.maxResidual()},
                        {"checks", checks},
                        {"notes", r.notes}});
        run.verdict(std::to_string(r.id) + " " + r.name, r.pass(), r.maxResidual());
        run.note(suites::summaryLine(r));
    }
    run.add("suites", list);
    return run.finish();
}

}  // namespace akns::cli
