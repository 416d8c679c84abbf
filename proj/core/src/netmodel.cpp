#include "fadenet/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fadenet/stats.hpp"

namespace fadenet {

void NetworkParams::validate() const {
  if (n == 0) throw std::invalid_argument("NetworkParams: n must be >= 1");
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("NetworkParams: rho must be positive finite");
}

ActiveSet::ActiveSet(std::vector<std::uint32_t> indices)
    : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw std::invalid_argument("ActiveSet: duplicate link index");
}

ActiveSet ActiveSet::all(std::size_t n) {
  std::vector<std::uint32_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
  return ActiveSet(std::move(idx));
}

bool ActiveSet::contains(std::uint32_t link) const {
  return std::binary_search(indices_.begin(), indices_.end(), link);
}

std::uint32_t ActiveSet::max_index() const {
  if (indices_.empty()) throw std::logic_error("ActiveSet: empty");
  return indices_.back();
}

namespace {

void check_in_range(const GainMatrix& gains, const ActiveSet& active) {
  if (!active.empty() && active.max_index() >= gains.size())
    throw std::invalid_argument("active link index out of range");
}

double interference_at(const GainMatrix& gains, const ActiveSet& active,
                       std::uint32_t link) {
  CompensatedSum sum;
  for (std::uint32_t tx : active)
    if (tx != link) sum.add(gains(tx, link));
  return sum.value();
}

}  // namespace

double link_sinr(const GainMatrix& gains, const ActiveSet& active,
                 const NetworkParams& params, std::uint32_t link) {
  params.validate();
  check_in_range(gains, active);
  if (!active.contains(link))
    throw std::invalid_argument("link_sinr: link is not active");
  const double denom = 1.0 / params.rho + interference_at(gains, active, link);
  return gains(link, link) / denom;
}

double link_rate(double sinr) {
  if (!(sinr >= 0.0))
    throw std::domain_error("link_rate: sinr must be >= 0");
  return std::log1p(sinr);
}

ThroughputReport throughput(const GainMatrix& gains, const ActiveSet& active,
                            const NetworkParams& params) {
  params.validate();
  check_in_range(gains, active);
  ThroughputReport report;
  report.active_count = active.size();
  report.links.reserve(active.size());
  CompensatedSum total;
  const double noise = 1.0 / params.rho;
  for (std::uint32_t link : active) {
    LinkMetrics m;
    m.link = link;
    m.interference = interference_at(gains, active, link);
    m.sinr = gains(link, link) / (noise + m.interference);
    m.rate = std::log1p(m.sinr);
    total.add(m.rate);
    report.links.push_back(m);
  }
  report.throughput = active.empty() ? 0.0 : total.value();
  report.rate_per_link =
      active.empty() ? std::numeric_limits<double>::quiet_NaN()
                     : report.throughput / static_cast<double>(active.size());
  return report;
}

double rate_per_link(const ThroughputReport& report) {
  if (report.active_count == 0)
    throw std::domain_error("rate_per_link: undefined mean, no active links");
  return report.throughput / static_cast<double>(report.active_count);
}

}  // namespace fadenet
