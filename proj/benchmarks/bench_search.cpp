#include <benchmark/benchmark.h>

#include "fadenet/oracle.hpp"
#include "fadenet/threshold.hpp"

namespace {

void BM_ExhaustiveOracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const fadenet::GainMatrix gains =
      fadenet::sample_gain_matrix(fadenet::FadingSpec::rayleigh(), n, {7, 0});
  const fadenet::NetworkParams params{n, 1.0};
  for (auto _ : state) {
    const auto result = fadenet::max_throughput_exhaustive(gains, params);
    benchmark::DoNotOptimize(result.best_throughput);
  }
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ExhaustiveOracle)->DenseRange(12, 18, 2)->Complexity();

void BM_OptimizeThreshold(benchmark::State& state) {
  const double n = static_cast<double>(state.range(0));
  const fadenet::ThresholdPolicy policy;
  for (auto _ : state) {
    const auto sol = fadenet::optimize_threshold(n, policy);
    benchmark::DoNotOptimize(sol.delta);
  }
}
BENCHMARK(BM_OptimizeThreshold)->Arg(1000)->Arg(1000000)->Arg(1000000000);

void BM_ZeroOrderSolver(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(fadenet::solve_zero_order(1e12));
  }
}
BENCHMARK(BM_ZeroOrderSolver);

}  // namespace
