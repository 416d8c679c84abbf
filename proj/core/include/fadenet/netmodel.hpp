#ifndef FADENET_NETMODEL_HPP
#define FADENET_NETMODEL_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fadenet/fading.hpp"

namespace fadenet {

struct NetworkParams {
  std::uint64_t n = 1;  ///< link count
  double rho = 1.0;     ///< transmit SNR P/eta

  void validate() const;
};

/// Sorted set of distinct 0-based link indices: the links transmitting at
/// power P, everyone else silent.
class ActiveSet {
 public:
  ActiveSet() = default;
  explicit ActiveSet(std::vector<std::uint32_t> indices);

  static ActiveSet all(std::size_t n);

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::uint32_t link) const;
  std::uint32_t max_index() const;  // requires non-empty

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  const std::vector<std::uint32_t>& indices() const { return indices_; }

  bool operator==(const ActiveSet&) const = default;

 private:
  std::vector<std::uint32_t> indices_;
};

struct LinkMetrics {
  std::uint32_t link = 0;
  double interference = 0.0;  ///< sum of active cross gains into this receiver
  double sinr = 0.0;
  double rate = 0.0;          ///< log(1 + sinr), nats per channel use
};

struct ThroughputReport {
  std::vector<LinkMetrics> links;  ///< one entry per active link, ascending
  std::size_t active_count = 0;
  double throughput = 0.0;         ///< sum of rates, nats per channel use
  double rate_per_link = 0.0;      ///< NaN when no link is active
};

/// SINR of active link i: g_ii / (1/rho + sum over other active j of g_ji).
double link_sinr(const GainMatrix& gains, const ActiveSet& active,
                 const NetworkParams& params, std::uint32_t link);

/// Shannon rate log(1 + sinr) in nats.
double link_rate(double sinr);

/// Per-link metrics plus totals for one active-set realization. An empty
/// set yields zero throughput with the per-link mean flagged as NaN.
ThroughputReport throughput(const GainMatrix& gains, const ActiveSet& active,
                            const NetworkParams& params);

/// Mean rate over active links; throws for an empty active set.
double rate_per_link(const ThroughputReport& report);

}  // namespace fadenet

#endif
