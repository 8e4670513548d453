#include <benchmark/benchmark.h>

// Spelled out instead of BENCHMARK_MAIN(): the distro's prebuilt
// libbenchmark_main carries LTO bytecode from a different compiler release.
int main(int argc, char** argv) {
  ::benchmark::Initialize(&argc, argv);
  if (::benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  ::benchmark::RunSpecifiedBenchmarks();
  ::benchmark::Shutdown();
  return 0;
}
