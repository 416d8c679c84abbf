#include "fadenet/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "fadenet/oracle.hpp"
#include "fadenet/stats.hpp"

namespace fadenet {

namespace {

constexpr std::uint64_t kDenseLimit = 30000;
constexpr std::uint64_t kVirtualActiveLimit = 30000;

}  // namespace

std::uint64_t sample_binomial(std::uint64_t n, double p, Pcg32& rng) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("sample_binomial: p must be in [0, 1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - sample_binomial(n, 1.0 - p, rng);

  // Second waiting-time method: geometric gaps between successes.
  const double log_q = std::log1p(-p);
  std::uint64_t count = 0;
  double position = 0.0;
  const double nd = static_cast<double>(n);
  while (true) {
    const double u = 1.0 - rng.next_double();  // u in (0, 1]
    position += std::floor(std::log(u) / log_q) + 1.0;
    if (position > nd) break;
    ++count;
  }
  return count;
}

namespace {

double bound_or_nan(double n, double delta, const ThresholdPolicy& policy) {
  const double q = policy.fading.ccdf(delta);
  if (!(q > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  const double nq = n * q;
  const double effective = nq - policy.xi(n) * std::sqrt(nq);
  if (!(effective > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return effective *
         std::log1p(delta / (policy.fading.mean() * effective + policy.psi(n)));
}

TrialRecord finish_record(const NetworkParams& params,
                          const ThresholdPolicy& policy, SeedSpec seed,
                          const ThroughputReport& report) {
  TrialRecord rec;
  rec.n = params.n;
  rec.seed = seed.seed;
  rec.stream = seed.stream;
  rec.delta = policy.delta;
  rec.active_count = report.active_count;
  rec.throughput = report.throughput;
  rec.rate_per_link = report.rate_per_link;
  rec.bound = bound_or_nan(static_cast<double>(params.n), policy.delta, policy);
  rec.bound_satisfied = rec.throughput > rec.bound;  // false when bound is NaN
  return rec;
}

}  // namespace

TrialRecord run_trial(const NetworkParams& params,
                      const ThresholdPolicy& policy, TrialMode mode,
                      SeedSpec seed, bool with_oracle) {
  params.validate();
  if (!(policy.delta >= 0.0))
    throw std::domain_error("run_trial: delta must be >= 0");

  if (mode == TrialMode::Dense) {
    if (params.n > kDenseLimit)
      throw std::invalid_argument(
          "run_trial: dense mode is limited to n <= 30000");
    const GainMatrix gains =
        sample_gain_matrix(policy.fading, params.n, seed);
    const ActiveSet active = activate(gains.diagonal(), policy.delta);
    TrialRecord rec =
        finish_record(params, policy, seed, throughput(gains, active, params));
    if (with_oracle) {
      if (params.n > 20)
        throw std::invalid_argument("run_trial: oracle requires n <= 20");
      rec.oracle_throughput =
          max_throughput_exhaustive(gains, params).best_throughput;
    }
    return rec;
  }

  // Virtual mode: active count first, then exactly the gains that matter.
  if (with_oracle)
    throw std::invalid_argument("run_trial: oracle requires dense mode");
  const double q = policy.fading.ccdf(policy.delta);
  if (!(q > 0.0))
    throw std::runtime_error(
        "run_trial: virtual mode needs a positive activation probability");
  Pcg32 rng(seed);
  const std::uint64_t k = sample_binomial(params.n, q, rng);
  if (k > kVirtualActiveLimit)
    throw std::runtime_error(
        "run_trial: active set too large for the virtual path");
  if (k == 0) {
    ThroughputReport empty;
    empty.rate_per_link = std::numeric_limits<double>::quiet_NaN();
    return finish_record(params, policy, seed, empty);
  }

  GainMatrix gains(static_cast<std::size_t>(k));
  for (std::uint64_t i = 0; i < k; ++i)
    gains.entry(i, i) = policy.fading.sample_truncated(policy.delta, rng);
  for (std::uint64_t tx = 0; tx < k; ++tx)
    for (std::uint64_t rx = 0; rx < k; ++rx)
      if (tx != rx) gains.entry(tx, rx) = policy.fading.sample(rng);

  const NetworkParams sub{k, params.rho};
  const ThroughputReport report =
      throughput(gains, ActiveSet::all(k), sub);
  return finish_record(params, policy, seed, report);
}

SweepRow summarize(std::span<const TrialRecord> records) {
  if (records.empty())
    throw std::invalid_argument("summarize: no records");
  for (const TrialRecord& r : records)
    if (r.n != records.front().n || r.delta != records.front().delta)
      throw std::invalid_argument(
          "summarize: records mix different n or delta");

  std::vector<double> throughputs, counts, rates;
  throughputs.reserve(records.size());
  counts.reserve(records.size());
  for (const TrialRecord& r : records) {
    throughputs.push_back(r.throughput);
    counts.push_back(static_cast<double>(r.active_count));
    if (r.active_count > 0) rates.push_back(r.rate_per_link);
  }
  const MomentSummary t = moments(throughputs);
  const MomentSummary k = moments(counts);
  const double mean_rate =
      rates.empty() ? std::numeric_limits<double>::quiet_NaN()
                    : moments(rates).mean;

  SweepRow row;
  row.n = records.front().n;
  row.trials = records.size();
  row.delta = records.front().delta;
  row.mean_throughput = t.mean;
  row.sd_throughput = t.stdev;
  row.mean_active = k.mean;
  row.sd_active = k.stdev;
  row.mean_rate_per_link = mean_rate;
  const double log_n = std::log(static_cast<double>(row.n));
  const double log_log_n = std::log(log_n);
  row.ratio_throughput =
      t.mean / (log_n - 2.0 * log_log_n + std::log(2.0) - 1.0);
  row.ratio_active = k.mean / (0.5 * log_n * log_n);
  row.ratio_rate_per_link = mean_rate / (2.0 / log_n);
  row.ci95_throughput =
      1.96 * t.stdev / std::sqrt(static_cast<double>(records.size()));
  return row;
}

std::vector<TrialRecord> run_trials(const NetworkParams& params,
                                    const ThresholdPolicy& policy,
                                    TrialMode mode, SeedSpec seed,
                                    std::uint64_t count, unsigned threads) {
  if (count == 0) throw std::invalid_argument("run_trials: count must be >= 1");
  std::vector<TrialRecord> records(count);
  const unsigned workers = std::max(
      1u, std::min(threads, static_cast<unsigned>(
                                std::min<std::uint64_t>(count, 1024))));
  if (workers == 1) {
    for (std::uint64_t t = 0; t < count; ++t)
      records[t] =
          run_trial(params, policy, mode, SeedSpec{seed.seed, seed.stream + t});
    return records;
  }
  // Each trial owns its stream; workers race only on the ticket, so the
  // record vector is identical for any worker count.
  std::atomic<std::uint64_t> ticket{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::uint64_t t = ticket.fetch_add(1);
        if (t >= count) return;
        try {
          records[t] = run_trial(params, policy, mode,
                                 SeedSpec{seed.seed, seed.stream + t});
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

ScalingReport scaling_sweep(const SweepConfig& config, SeedSpec seed) {
  if (config.n_list.empty())
    throw std::invalid_argument("scaling_sweep: empty n list");
  if (config.trials < 30)
    throw std::invalid_argument("scaling_sweep: needs at least 30 trials");

  ScalingReport report;
  for (std::size_t j = 0; j < config.n_list.size(); ++j) {
    const std::uint64_t n = config.n_list[j];
    ThresholdPolicy policy = config.policy;
    policy.delta = resolve_threshold(config.threshold_mode,
                                     static_cast<double>(n), policy,
                                     config.fixed_delta);
    const NetworkParams params{n, config.rho};
    const SeedSpec base{seed.seed,
                        seed.stream + static_cast<std::uint64_t>(j) *
                                          config.trials};
    report.rows.push_back(summarize(run_trials(params, policy, config.mode,
                                               base, config.trials,
                                               config.threads)));
  }
  return report;
}

}  // namespace fadenet
