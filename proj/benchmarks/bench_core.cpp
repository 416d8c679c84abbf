#include <benchmark/benchmark.h>

#include "fadenet/fading.hpp"
#include "fadenet/montecarlo.hpp"

namespace {

void BM_ExponentialDraws(benchmark::State& state) {
  fadenet::Pcg32 rng(1, 0);
  for (auto _ : state) {
    double x = 0.0;
    for (int i = 0; i < 1024; ++i) x += rng.next_exponential();
    benchmark::DoNotOptimize(x);
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_ExponentialDraws);

void BM_SampleGainMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const fadenet::FadingSpec spec = fadenet::FadingSpec::rayleigh();
  std::uint64_t stream = 0;
  for (auto _ : state) {
    const fadenet::GainMatrix g =
        fadenet::sample_gain_matrix(spec, n, {1, stream++});
    benchmark::DoNotOptimize(g(0, 0));
  }
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SampleGainMatrix)->RangeMultiplier(4)->Range(64, 1024)->Complexity();

void BM_BinomialSampler(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const double p = 50.0 / static_cast<double>(n);
  fadenet::Pcg32 rng(2, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fadenet::sample_binomial(n, p, rng));
  }
}
BENCHMARK(BM_BinomialSampler)->Arg(10000)->Arg(1000000)->Arg(1000000000);

void BM_VirtualTrial(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  fadenet::ThresholdPolicy policy;
  policy.delta =
      fadenet::optimize_threshold(static_cast<double>(n), policy).delta;
  const fadenet::NetworkParams params{n, 1.0};
  std::uint64_t stream = 0;
  for (auto _ : state) {
    const auto record = fadenet::run_trial(
        params, policy, fadenet::TrialMode::Virtual, {3, stream++});
    benchmark::DoNotOptimize(record.throughput);
  }
}
BENCHMARK(BM_VirtualTrial)->Arg(10000)->Arg(1000000)->Arg(100000000);

void BM_DenseTrial(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  fadenet::ThresholdPolicy policy;
  policy.delta =
      fadenet::optimize_threshold(static_cast<double>(n), policy).delta;
  const fadenet::NetworkParams params{n, 1.0};
  std::uint64_t stream = 0;
  for (auto _ : state) {
    const auto record = fadenet::run_trial(
        params, policy, fadenet::TrialMode::Dense, {4, stream++});
    benchmark::DoNotOptimize(record.throughput);
  }
}
BENCHMARK(BM_DenseTrial)->Arg(300)->Arg(1000)->Arg(3000);

}  // namespace
