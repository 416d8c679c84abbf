#ifndef FADENET_MONTECARLO_HPP
#define FADENET_MONTECARLO_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fadenet/netmodel.hpp"
#include "fadenet/threshold.hpp"

namespace fadenet {

/// Exact Binomial(n, p) sampler by geometric waiting times (second
/// waiting-time method), O(n p + 1) per draw. Never approximated: the
/// active-link count enters ratio statistics directly.
std::uint64_t sample_binomial(std::uint64_t n, double p, Pcg32& rng);

enum class TrialMode {
  Dense,    ///< materialize the full n x n gain matrix
  Virtual,  ///< sample only the active submatrix (statistically identical)
};

struct TrialRecord {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double delta = 0.0;
  std::uint64_t active_count = 0;
  double throughput = 0.0;
  double rate_per_link = 0.0;  ///< NaN when no link is active
  double bound = 0.0;          ///< achievable-throughput bound at delta (NaN out of regime)
  bool bound_satisfied = false;
  std::optional<double> oracle_throughput;  ///< filled on request, n <= 20
};

/// One seeded realization of threshold activation at policy.delta.
///
/// Dense mode samples the full matrix (guarded to n <= 3e4). Virtual mode
/// draws the active count from the exact binomial law, direct gains from
/// the truncated fading distribution and only the active cross gains;
/// since silent transmitters contribute nothing to any SINR, the observed
/// statistics match dense mode in distribution while memory stays
/// O(active^2), which is what makes n up to 1e9 tractable.
TrialRecord run_trial(const NetworkParams& params,
                      const ThresholdPolicy& policy, TrialMode mode,
                      SeedSpec seed, bool with_oracle = false);

struct SweepRow {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  double delta = 0.0;
  double mean_throughput = 0.0;
  double sd_throughput = 0.0;
  double mean_active = 0.0;
  double sd_active = 0.0;
  double mean_rate_per_link = 0.0;  ///< over trials with at least one link
  double ratio_throughput = 0.0;    ///< mean T / (log n - 2 log log n + log(2/e))
  double ratio_active = 0.0;        ///< mean k / (log^2(n) / 2)
  double ratio_rate_per_link = 0.0; ///< mean rbar / (2 / log n)
  double ci95_throughput = 0.0;     ///< 1.96 sd / sqrt(trials)
};

struct ScalingReport {
  std::vector<SweepRow> rows;
};

struct SweepConfig {
  std::vector<std::uint64_t> n_list;
  std::uint64_t trials = 100;
  double rho = 1.0;
  ThresholdMode threshold_mode = ThresholdMode::Optimize;
  double fixed_delta = 0.0;
  ThresholdPolicy policy;  ///< slack rules and fading; delta resolved per n
  TrialMode mode = TrialMode::Virtual;
  unsigned threads = 1;
};

/// `count` independent trials; trial t draws from stream seed.stream + t,
/// so the records are identical for any worker count.
std::vector<TrialRecord> run_trials(const NetworkParams& params,
                                    const ThresholdPolicy& policy,
                                    TrialMode mode, SeedSpec seed,
                                    std::uint64_t count, unsigned threads = 1);

/// Mean / sample stdev / 95% half-width over homogeneous records (same n
/// and delta). The per-link mean skips empty-activation trials.
SweepRow summarize(std::span<const TrialRecord> records);

/// Per-n aggregates across decades of n; trial t of the j-th n uses stream
/// j * trials + t, so reports are bit-stable for any worker count.
ScalingReport scaling_sweep(const SweepConfig& config, SeedSpec seed);

}  // namespace fadenet

#endif
