// Serial reference vs OpenMP campaign kernels. Run with
//   ./build/bench/defprobe_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "defprobe/evolver.hpp"
#include "defprobe/oracle.hpp"
#include "defprobe/sampler.hpp"

using namespace defprobe;

namespace {

SampleConfig sample_config(int n, int m) {
    SampleConfig cfg;
    cfg.measure = Measure::Insert;
    cfg.n = n;
    cfg.m = m;
    cfg.t = 2000;
    cfg.repeats = 1;
    cfg.seed = 99;
    return cfg;
}

void BM_SampleProbeSerial(benchmark::State& state) {
    const SampleConfig cfg = sample_config(static_cast<int>(state.range(0)),
                                           static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(sample_probe_serial(cfg));
    state.SetItemsProcessed(state.iterations() * cfg.t * cfg.repeats);
}

void BM_SampleProbeParallel(benchmark::State& state) {
    const SampleConfig cfg = sample_config(static_cast<int>(state.range(0)),
                                           static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(sample_probe(cfg, Exec::Parallel));
    state.SetItemsProcessed(state.iterations() * cfg.t * cfg.repeats);
}

void BM_BruteForceSerial(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_force_probe_serial(Measure::Insert,
                                                          static_cast<int>(state.range(0)), 4));
}

void BM_BruteForceParallel(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            brute_force_probe(Measure::Insert, static_cast<int>(state.range(0)), 4));
}

const Matrix& oracle_matrix() {
    static const Matrix d = distance_matrix(
        Measure::Insert,
        std::vector<Permutation>{Permutation({1, 2, 3, 4}), Permutation({1, 3, 4, 2}),
                                 Permutation({2, 3, 4, 1}), Permutation({3, 4, 1, 2}),
                                 Permutation({4, 1, 2, 3})});
    return d;
}

void BM_OracleSerial(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            quadratic_form_cnsd(oracle_matrix(), state.range(0), 1e-10, 7, Exec::Serial));
}

void BM_OracleParallel(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            quadratic_form_cnsd(oracle_matrix(), state.range(0), 1e-10, 7, Exec::Parallel));
}

void BM_EaSerial(benchmark::State& state) {
    EaConfig cfg;
    cfg.population_size = 50;
    cfg.budget = 2000;
    cfg.seed = 13;
    for (auto _ : state)
        benchmark::DoNotOptimize(ea_probe(Measure::Euclidean, 8, 8, cfg, Exec::Serial));
}

void BM_EaParallel(benchmark::State& state) {
    EaConfig cfg;
    cfg.population_size = 50;
    cfg.budget = 2000;
    cfg.seed = 13;
    for (auto _ : state)
        benchmark::DoNotOptimize(ea_probe(Measure::Euclidean, 8, 8, cfg, Exec::Parallel));
}

}  // namespace

BENCHMARK(BM_SampleProbeSerial)->Args({6, 4})->Args({12, 8})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleProbeParallel)->Args({6, 4})->Args({12, 8})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceSerial)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceParallel)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSerial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EaSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EaParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
