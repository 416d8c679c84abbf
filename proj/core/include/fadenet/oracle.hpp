#ifndef FADENET_ORACLE_HPP
#define FADENET_ORACLE_HPP

#include <cstdint>
#include <span>

#include "fadenet/netmodel.hpp"

namespace fadenet {

struct OracleResult {
  ActiveSet best;
  double best_throughput = 0.0;        ///< recomputed via throughput()
  std::uint64_t subsets_evaluated = 0; ///< always 2^n
};

/// Exhaustive throughput maximization over all 2^n activation subsets.
/// Subsets are walked in Gray-code order with incremental interference
/// updates (O(2^n n) total); ties go to the lexicographically smallest
/// index set. Guarded to n <= 20.
OracleResult max_throughput_exhaustive(const GainMatrix& gains,
                                       const NetworkParams& params);

struct GapReport {
  double best_ratio = 0.0;        ///< max over the grid of T(threshold) / T*
  double best_delta = 0.0;
  double oracle_throughput = 0.0;
  std::size_t oracle_active = 0;     ///< k in the optimal subset
  std::size_t threshold_active = 0;  ///< k of the best threshold set
};

/// Quality of threshold activation against the exhaustive optimum on one
/// instance, maximized over a grid of candidate thresholds.
GapReport threshold_optimality_gap(const GainMatrix& gains,
                                   const NetworkParams& params,
                                   std::span<const double> deltas);

}  // namespace fadenet

#endif
