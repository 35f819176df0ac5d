#include <benchmark/benchmark.h>

#include "discrim/sweep.hpp"

using namespace discrim;

namespace {

Scenario bench_scenario() {
    return parse_scenario(R"(family = two-pure
grid = 0.5
N = 50
k_t = 300
repetitions = 32
gain_a = 10
gain_b = 1
)");
}

void BM_RepetitionsSerial(benchmark::State& state) {
    const auto sc = bench_scenario();
    const auto point = build_grid_point(sc, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(run_repetitions_serial(sc, point, false));
    state.SetItemsProcessed(state.iterations() * sc.repetitions);
}

void BM_RepetitionsParallel(benchmark::State& state) {
    const auto sc = bench_scenario();
    const auto point = build_grid_point(sc, 0.5);
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_repetitions_parallel(sc, point, false, jobs));
    state.SetItemsProcessed(state.iterations() * sc.repetitions);
}

}  // namespace

BENCHMARK(BM_RepetitionsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RepetitionsParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
