#include <benchmark/benchmark.h>

#include "mlpark/simulator.hpp"

namespace {

mlpark::LatticeConfig timed(int width, double horizon) {
  mlpark::LatticeConfig config;
  config.active_width = width;
  config.horizon_time = horizon;
  config.seed = 1;
  return config;
}

// Depositions per second for a full trial without recording.
void BM_TrialThroughput(benchmark::State& state) {
  const auto config = timed(static_cast<int>(state.range(0)), 200.0);
  std::uint64_t trial = 0;
  std::uint64_t particles = 0;
  for (auto _ : state) {
    const auto s = mlpark::simulate_trial(config, trial++, [](const mlpark::Deposition&) {});
    particles += s.particles;
  }
  state.counters["depositions/s"] =
      benchmark::Counter(static_cast<double>(particles), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_TrialThroughput)->Arg(3)->Arg(9)->Arg(33);

void BM_EstimateEndDensity(benchmark::State& state) {
  const auto config = timed(3, mlpark::suggested_horizon(4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlpark::estimate_end_density(
        config, 0, 4, 10000, mlpark::RunOptions{static_cast<unsigned>(state.range(0))}));
  }
}
BENCHMARK(BM_EstimateEndDensity)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CollectRunStats(benchmark::State& state) {
  const auto config = timed(3, 200.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlpark::collect_run_stats(config, 200, mlpark::RunOptions{1}));
  }
}
BENCHMARK(BM_CollectRunStats)->Unit(benchmark::kMillisecond);

}  // namespace
