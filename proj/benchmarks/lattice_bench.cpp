#include <benchmark/benchmark.h>

#include "akns/al.hpp"
#include "akns/conserved.hpp"
#include "akns/dnls.hpp"
#include "akns/glm.hpp"
#include "akns/random.hpp"

using namespace akns;

namespace {

DnlsState randomState(std::size_t sites, std::size_t dim) {
    Rng rng(42);
    DnlsState s = DnlsState::zeros(sites, dim, dim);
    for (std::size_t n = 0; n < sites; ++n) {
        s.x[n] = rng.matrix(dim, dim, 0.3);
        s.y[n] = rng.matrix(dim, dim, 0.3);
    }
    return s;
}

void BM_TransferMatrix(benchmark::State& st) {
    const DnlsState s = randomState(static_cast<std::size_t>(st.range(0)), 1);
    for (auto _ : st) benchmark::DoNotOptimize(transferMatrix(s));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_TransferMatrix)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_TraceAt(benchmark::State& st) {
    const DnlsState s = randomState(static_cast<std::size_t>(st.range(0)), 2);
    for (auto _ : st) benchmark::DoNotOptimize(traceAt(s, cplx(0.7, 0.2)));
}
BENCHMARK(BM_TraceAt)->Arg(16)->Arg(256);

// 100 RK4 steps of the t1 flow
void BM_Rk4Dnls(benchmark::State& st) {
    const DnlsState s = randomState(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(evolve(s, FlowId{1}, 1e-3, 100));
}
BENCHMARK(BM_Rk4Dnls)->Args({16, 1})->Args({64, 1})->Args({16, 3});

void BM_Rk4Al(benchmark::State& st) {
    Rng rng(42);
    const auto sites = static_cast<std::size_t>(st.range(0));
    AlState s = AlState::zeros(sites, 1, 1);
    for (std::size_t n = 0; n < sites; ++n) {
        s.bHat[n] = rng.matrix(1, 1, 0.3);
        s.b[n] = rng.matrix(1, 1, 0.3);
    }
    for (auto _ : st) benchmark::DoNotOptimize(alEvolve(s, AlVariant::AL, 1e-3, 100));
}
BENCHMARK(BM_Rk4Al)->Arg(16)->Arg(64);

void BM_GlmSolve(benchmark::State& st) {
    const auto pair = makeRankOnePair(1, 2, 1.0, Closure::TripleProduct);
    GlmConfig cfg;
    cfg.windowN = st.range(0);
    cfg.time = 0.2;
    const GlmSystem sys = buildHankelData({{0.5, 0.6, pair.b, pair.bHat}, {0.8, {0.7, 0.2}, 0.5 * pair.b, pair.bHat}}, cfg);
    for (auto _ : st) benchmark::DoNotOptimize(solveGlm(sys));
}
BENCHMARK(BM_GlmSolve)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
