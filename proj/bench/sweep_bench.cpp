#include <benchmark/benchmark.h>

#include "dyncon/trial.hpp"

namespace {

dyncon::TrialConfig bench_config(int n) {
  dyncon::TrialConfig cfg;
  cfg.n = n;
  cfg.diameter = n - 1;
  cfg.seed = 1;
  return cfg;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto cfg = bench_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dyncon::sweep_serial(cfg, 16));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto cfg = bench_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dyncon::sweep_parallel(cfg, 16));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
