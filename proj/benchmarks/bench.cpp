#include <benchmark/benchmark.h>

#include <string>

#include "schrodet/asymptotics.hpp"
#include "schrodet/matrix.hpp"
#include "schrodet/piecewise.hpp"
#include "schrodet/sweep.hpp"

namespace {

using namespace schrodet;

const char* kFf =
    "piece [0, 0.5]: 3.3 + x^2/2 + sin(3*x)\n"
    "piece [0.5, 1]: 3.5 - x\n"
    "jump at 0.5 side right\n";

void BM_ParsePotential(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_potential(kFf));
  }
}
BENCHMARK(BM_ParsePotential);

void BM_DetLog(benchmark::State& state) {
  const PiecewisePotential f = parse_potential(kFf);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const SchrodingerMatrix m = build_matrix(f, n);
    benchmark::DoNotOptimize(det_log(m).log_det);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_DetLog)->Arg(64)->Arg(512)->Arg(4096)->Arg(32768)->Complexity(benchmark::oN);

void BM_Eigenvalues(benchmark::State& state) {
  const PiecewisePotential f = parse_potential(kFf);
  const SchrodingerMatrix m = build_matrix(f, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenvalues(m));
  }
}
BENCHMARK(BM_Eigenvalues)->Arg(256)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_GeometricMean(benchmark::State& state) {
  const PiecewisePotential f = parse_potential(kFf);
  for (auto _ : state) {
    benchmark::DoNotOptimize(geometric_mean_log(f));
  }
}
BENCHMARK(BM_GeometricMean);

void BM_Sweep(benchmark::State& state) {
  const Scenario s = parse_scenario(std::string(kFf) + "n 10..200\n");
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(s, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
