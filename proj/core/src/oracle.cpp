#include "fadenet/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fadenet/threshold.hpp"

namespace fadenet {

namespace {

std::vector<std::uint32_t> mask_indices(std::uint32_t mask) {
  std::vector<std::uint32_t> idx;
  while (mask != 0) {
    const auto i = static_cast<std::uint32_t>(std::countr_zero(mask));
    idx.push_back(i);
    mask &= mask - 1;
  }
  return idx;
}

// Ascending index sequences compared lexicographically; the empty set is
// the smallest.
bool lexicographically_smaller(std::uint32_t a, std::uint32_t b) {
  const auto ia = mask_indices(a);
  const auto ib = mask_indices(b);
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(),
                                      ib.end());
}

}  // namespace

OracleResult max_throughput_exhaustive(const GainMatrix& gains,
                                       const NetworkParams& params) {
  params.validate();
  const std::size_t n = gains.size();
  if (n > 20)
    throw std::runtime_error(
        "max_throughput_exhaustive: n > 20 exceeds the enumeration guard");
  if (params.n != n)
    throw std::invalid_argument(
        "max_throughput_exhaustive: params.n does not match the matrix");

  const double noise = 1.0 / params.rho;
  // column_sum[i] = sum over active transmitters j of g(j, i)
  std::vector<double> column_sum(n, 0.0);
  std::uint32_t mask = 0;
  double best_throughput = 0.0;  // empty set
  std::uint32_t best_mask = 0;

  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t counter = 1; counter < subsets; ++counter) {
    const auto toggled =
        static_cast<std::uint32_t>(std::countr_zero(counter));
    const std::uint32_t bit = std::uint32_t{1} << toggled;
    if (mask & bit) {
      for (std::size_t i = 0; i < n; ++i) column_sum[i] -= gains(toggled, i);
      mask ^= bit;
    } else {
      for (std::size_t i = 0; i < n; ++i) column_sum[i] += gains(toggled, i);
      mask ^= bit;
    }

    double total = 0.0;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      const auto i = static_cast<std::uint32_t>(std::countr_zero(rest));
      const double interference = column_sum[i] - gains(i, i);
      total += std::log1p(gains(i, i) / (noise + interference));
    }
    if (total > best_throughput ||
        (total == best_throughput &&
         lexicographically_smaller(mask, best_mask))) {
      best_throughput = total;
      best_mask = mask;
    }
  }

  OracleResult result;
  result.best = ActiveSet(mask_indices(best_mask));
  // Report the compensated-summation value so the recompute check is exact.
  result.best_throughput = throughput(gains, result.best, params).throughput;
  result.subsets_evaluated = subsets;
  return result;
}

GapReport threshold_optimality_gap(const GainMatrix& gains,
                                   const NetworkParams& params,
                                   std::span<const double> deltas) {
  if (deltas.empty())
    throw std::invalid_argument("threshold_optimality_gap: empty grid");
  const OracleResult oracle = max_throughput_exhaustive(gains, params);
  const auto diag = gains.diagonal();

  GapReport report;
  report.oracle_throughput = oracle.best_throughput;
  report.oracle_active = oracle.best.size();
  report.best_ratio = -1.0;
  for (double delta : deltas) {
    const ActiveSet set = activate(diag, delta);
    const double t = throughput(gains, set, params).throughput;
    const double ratio = oracle.best_throughput > 0.0
                             ? t / oracle.best_throughput
                             : (t == 0.0 ? 1.0 : 0.0);
    if (ratio > report.best_ratio) {
      report.best_ratio = ratio;
      report.best_delta = delta;
      report.threshold_active = set.size();
    }
  }
  return report;
}

}  // namespace fadenet
