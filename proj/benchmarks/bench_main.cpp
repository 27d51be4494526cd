#include <benchmark/benchmark.h>

#include "cfchroma/experiments.hpp"
#include "cfchroma/random_models.hpp"
#include "cfchroma/solvers.hpp"
#include "cfchroma/verify.hpp"

namespace {

void BM_SampleGnp(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    uint64_t seed = 1;
    for (auto _ : state) {
        cfc::Graph g = cfc::sample_gnp({n, 0.1, seed++});
        benchmark::DoNotOptimize(g.edge_count());
    }
    state.SetItemsProcessed(state.iterations() * (static_cast<int64_t>(n) * (n - 1) / 2));
}
BENCHMARK(BM_SampleGnp)->Arg(500)->Arg(2000);

void BM_AlgorithmCfc(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    cfc::Graph g = cfc::sample_gnp({n, 0.05, 7});
    cfc::CfcParams params;
    params.p = 0.05;
    for (auto _ : state) {
        cfc::CfcRun run = cfc::algorithm_cfc(g, params);
        benchmark::DoNotOptimize(run.trace.colors_used);
    }
}
BENCHMARK(BM_AlgorithmCfc)->Arg(500)->Arg(2000);

void BM_VerifyConflictFree(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    cfc::Graph g = cfc::sample_gnp({n, 0.05, 7});
    cfc::CfcParams params;
    params.p = 0.05;
    cfc::Coloring coloring = cfc::algorithm_cfc(g, params).coloring;
    for (auto _ : state) {
        auto verdict = cfc::is_conflict_free(g, coloring, true);
        benchmark::DoNotOptimize(verdict.ok);
    }
}
BENCHMARK(BM_VerifyConflictFree)->Arg(2000);

void BM_ExactDomination(benchmark::State& state) {
    cfc::Graph g = cfc::sample_gnp({static_cast<int>(state.range(0)), 0.5, 11});
    for (auto _ : state) {
        int d = cfc::exact_domination(g, 6);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_ExactDomination)->Arg(150)->Arg(300);

void BM_SpoilingDecision(benchmark::State& state) {
    cfc::Graph g = cfc::sample_gnp({12, 0.5, 13});
    for (auto _ : state) {
        auto verdict = cfc::is_kf_spoiling(g, {2, 3});
        benchmark::DoNotOptimize(verdict.spoiling);
    }
}
BENCHMARK(BM_SpoilingDecision);

} // namespace

BENCHMARK_MAIN();
