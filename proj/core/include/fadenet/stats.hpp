#ifndef FADENET_STATS_HPP
#define FADENET_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "fadenet/special.hpp"

namespace fadenet {

/// Neumaier compensated accumulator. Keeps sums of ~1e4 terms exact enough
/// that additivity checks can compare bitwise.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct MomentSummary {
  double mean = 0.0;
  double stdev = 0.0;  // sample standard deviation (n-1)
  std::size_t count = 0;
};

inline MomentSummary moments(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("moments: empty sample");
  CompensatedSum s;
  for (double x : xs) s.add(x);
  const double mean = s.value() / static_cast<double>(xs.size());
  if (xs.size() == 1) return {mean, 0.0, 1};
  CompensatedSum sq;
  for (double x : xs) sq.add((x - mean) * (x - mean));
  const double var = sq.value() / static_cast<double>(xs.size() - 1);
  return {mean, std::sqrt(std::max(0.0, var)), xs.size()};
}

/// One-sample Kolmogorov-Smirnov statistic against a model cdf.
/// Equals the sup deviation between the empirical and model ccdf as well.
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

inline double ks_statistic_two_sample(std::vector<double> a,
                                      std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_statistic_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

/// Asymptotic KS critical value: c(alpha) / sqrt(n), c = sqrt(-ln(alpha/2)/2).
inline double ks_critical_value(double alpha, std::size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0) || n == 0)
    throw std::invalid_argument("ks_critical_value: bad arguments");
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) /
         std::sqrt(static_cast<double>(n));
}

inline double ks_critical_value_two_sample(double alpha, std::size_t n,
                                           std::size_t m) {
  if (!(alpha > 0.0 && alpha < 1.0) || n == 0 || m == 0)
    throw std::invalid_argument("ks_critical_value_two_sample: bad arguments");
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) *
         std::sqrt((nn + mm) / (nn * mm));
}

inline double binomial_log_pmf(std::uint64_t n, double p, std::uint64_t k) {
  if (k > n || !(p >= 0.0 && p <= 1.0))
    throw std::domain_error("binomial_log_pmf: bad arguments");
  if (p == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p == 1.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  return std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) -
         std::lgamma(nn - kk + 1.0) + kk * std::log(p) +
         (nn - kk) * std::log1p(-p);
}

struct GofResult {
  double statistic = 0.0;
  std::size_t bins = 0;
  double p_value = 0.0;
};

/// Pearson chi-squared goodness of fit of integer draws against
/// Binomial(n, p). Cells with expected count below `min_expected` are merged
/// into the tails.
inline GofResult binomial_chi_squared_gof(std::span<const std::uint64_t> draws,
                                          std::uint64_t n, double p,
                                          double min_expected = 5.0) {
  if (draws.empty())
    throw std::invalid_argument("binomial_chi_squared_gof: empty sample");
  const double total = static_cast<double>(draws.size());
  const double mu = static_cast<double>(n) * p;
  const double sigma = std::sqrt(mu * (1.0 - p));
  const auto lo_d = std::max(0.0, std::floor(mu - 10.0 * sigma - 1.0));
  const auto hi_d = std::min(static_cast<double>(n),
                             std::ceil(mu + 10.0 * sigma + 1.0));
  const auto lo = static_cast<std::uint64_t>(lo_d);
  const auto hi = static_cast<std::uint64_t>(hi_d);

  std::vector<double> hist(static_cast<std::size_t>(hi - lo) + 1, 0.0);
  double below_obs = 0.0;
  for (auto d : draws) {
    if (d < lo)
      below_obs += 1.0;
    else if (d <= hi)
      hist[static_cast<std::size_t>(d - lo)] += 1.0;
  }
  double below_exp = 0.0;  // model mass below lo (merged into first cell)
  for (std::uint64_t k = 0; k < lo; ++k)
    below_exp += std::exp(binomial_log_pmf(n, p, k));

  std::vector<double> expected;
  std::vector<double> observed;
  double cum_exp = below_exp * total;
  double cum_obs = below_obs;
  for (std::uint64_t k = lo; k <= hi; ++k) {
    cum_exp += std::exp(binomial_log_pmf(n, p, k)) * total;
    cum_obs += hist[static_cast<std::size_t>(k - lo)];
    if (cum_exp >= min_expected) {
      expected.push_back(cum_exp);
      observed.push_back(cum_obs);
      cum_exp = 0.0;
      cum_obs = 0.0;
    }
  }
  // everything above hi plus any unflushed remainder goes into the last cell
  double above_exp = total;
  for (double e : expected) above_exp -= e;
  above_exp -= cum_exp;
  double above_obs = total;
  for (double o : observed) above_obs -= o;
  above_obs -= cum_obs;
  expected.push_back(cum_exp + std::max(0.0, above_exp));
  observed.push_back(cum_obs + above_obs);
  if (expected.back() < min_expected && expected.size() >= 2) {
    expected[expected.size() - 2] += expected.back();
    observed[observed.size() - 2] += observed.back();
    expected.pop_back();
    observed.pop_back();
  }

  if (expected.size() < 2)
    throw std::invalid_argument("binomial_chi_squared_gof: too few cells");
  double stat = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  const double dof = static_cast<double>(expected.size() - 1);
  return {stat, expected.size(), chi_squared_tail(dof, stat)};
}

}  // namespace fadenet

#endif
