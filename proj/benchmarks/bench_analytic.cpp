#include <benchmark/benchmark.h>

#include "mlpark/analytic.hpp"

namespace {

void BM_EndDensities(benchmark::State& state) {
  const auto r_max = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlpark::end_densities(r_max));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EndDensities)->RangeMultiplier(2)->Range(16, 512)->Complexity();

void BM_RenewalWeights(benchmark::State& state) {
  const auto r = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlpark::renewal_weights(r));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RenewalWeights)->RangeMultiplier(2)->Range(8, 128)->Complexity();

// Exponential in r; kept small.
void BM_RenewalWeightsNaive(benchmark::State& state) {
  const auto r = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlpark::renewal_weights_naive(r));
  }
}
BENCHMARK(BM_RenewalWeightsNaive)->DenseRange(8, 14, 2);

void BM_DensityProfileEval(benchmark::State& state) {
  const auto profile = mlpark::density_profile(static_cast<std::uint32_t>(state.range(0)));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(profile(t));
    t = t < 30.0 ? t + 0.01 : 0.0;
  }
}
BENCHMARK(BM_DensityProfileEval)->Arg(4)->Arg(64);

void BM_ExpectedRun(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlpark::expected_run(1e-12));
  }
}
BENCHMARK(BM_ExpectedRun);

}  // namespace
