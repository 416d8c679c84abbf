#include "fadenet/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "fadenet/stats.hpp"

namespace fadenet {

double sinr_ccdf(double x, double k, double rho) {
  if (!(x >= 0.0)) throw std::domain_error("sinr_ccdf: x must be >= 0");
  if (!(k >= 1.0)) throw std::domain_error("sinr_ccdf: k must be >= 1");
  if (!(rho > 0.0)) throw std::domain_error("sinr_ccdf: rho must be > 0");
  return std::exp(-x / rho - (k - 1.0) * std::log1p(x));
}

double rate_ccdf(double x, double k, double rho) {
  if (!(x >= 0.0)) throw std::domain_error("rate_ccdf: x must be >= 0");
  if (!(k >= 1.0)) throw std::domain_error("rate_ccdf: k must be >= 1");
  if (!(rho > 0.0)) throw std::domain_error("rate_ccdf: rho must be > 0");
  return std::exp(-std::expm1(x) / rho - (k - 1.0) * x);
}

double xi_transform(double rate, double k, double rho) {
  if (!(rate >= 0.0)) throw std::domain_error("xi_transform: rate must be >= 0");
  if (!(k >= 2.0)) throw std::domain_error("xi_transform: k must be >= 2");
  if (!(rho > 0.0)) throw std::domain_error("xi_transform: rho must be > 0");
  return rate + std::expm1(rate) / (rho * (k - 1.0));
}

double xi_inverse(double x, double k, double rho) {
  if (!(x >= 0.0)) throw std::domain_error("xi_inverse: x must be >= 0");
  if (!(k >= 2.0)) throw std::domain_error("xi_inverse: k must be >= 2");
  if (!(rho > 0.0)) throw std::domain_error("xi_inverse: rho must be > 0");
  if (x == 0.0) return 0.0;
  // Monotone increasing with slope >= 1, so r lies in [0, x]; Newton from
  // the midpoint with a bisection safeguard.
  double lo = 0.0, hi = x;
  double r = 0.5 * x;
  for (int i = 0; i < 200; ++i) {
    const double f = r + std::expm1(r) / (rho * (k - 1.0)) - x;
    if (f > 0.0)
      hi = r;
    else
      lo = r;
    const double fp = 1.0 + std::exp(r) / (rho * (k - 1.0));
    double next = r - f / fp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 1e-15 * std::max(1.0, std::abs(r))) return next;
    r = next;
  }
  return r;
}

double throughput_tail_exponent(double x, double k, double n) {
  if (!(x > 0.0))
    throw std::domain_error("throughput_tail_exponent: x must be > 0");
  if (!(k >= 2.0))
    throw std::domain_error("throughput_tail_exponent: k must be >= 2");
  if (!(n >= k))
    throw std::domain_error("throughput_tail_exponent: n must be >= k");
  if (!(x >= k / (k - 1.0)))
    throw std::domain_error(
        "throughput_tail_exponent: x must be at least k/(k-1) for the bound"
        " to be valid");
  return k * (std::log(n) - x - std::log(k) + std::log(x) + 2.0) +
         0.5 * std::log(k) + x;
}

double tail_exponent_asymptotic_bound(double n) {
  if (!(n >= 16.0))
    throw std::domain_error("tail_exponent_asymptotic_bound: n must be >= 16");
  const double log_n = std::log(n);
  const double log_log_n = std::log(log_n);
  const double log_log_log_n = std::log(log_log_n);
  return -(log_log_log_n / log_log_n) * log_n;
}

double k_star_lower_bound(double n, double rho, double phi) {
  if (!(n >= 16.0))
    throw std::domain_error("k_star_lower_bound: n must be >= 16");
  if (!(rho > 0.0))
    throw std::domain_error("k_star_lower_bound: rho must be > 0");
  if (!(phi >= 0.0))
    throw std::domain_error("k_star_lower_bound: phi must be >= 0");
  const double log_n = std::log(n);
  const double numerator =
      log_n - 2.0 * std::log(log_n) + std::log(2.0) - 1.0;  // + log(2/e)
  return numerator / std::log1p(rho * (log_n + phi));
}

std::vector<double> sample_sinr(std::size_t k, double rho, std::size_t count,
                                SeedSpec seed) {
  if (k < 1) throw std::domain_error("sample_sinr: k must be >= 1");
  if (!(rho > 0.0)) throw std::domain_error("sample_sinr: rho must be > 0");
  Pcg32 rng(seed);
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double direct = rng.next_exponential();
    double interference = 0.0;
    for (std::size_t j = 1; j < k; ++j) interference += rng.next_exponential();
    out.push_back(direct / (1.0 / rho + interference));
  }
  return out;
}

std::pair<TailCheckReport, TailCheckReport> concentration_check(
    std::uint64_t n, double delta, std::size_t trials, SeedSpec seed,
    const ConcentrationOptions& options) {
  if (n == 0 || trials == 0)
    throw std::invalid_argument("concentration_check: n and trials >= 1");
  const double nd = static_cast<double>(n);
  const double q = std::exp(-delta);
  if (!(nd * q >= 1.0))
    throw std::runtime_error(
        "concentration_check: out of regime, n q < 1 at this delta");
  const double xi = options.xi(nd);
  const double psi = options.psi(nd);
  const double count_bound = nd * q - xi * std::sqrt(nd * q);

  std::size_t interference_violations = 0;
  std::size_t interference_trials = 0;
  std::size_t count_violations = 0;
  CompensatedSum mean_count;

  for (std::size_t t = 0; t < trials; ++t) {
    Pcg32 rng(seed.seed, seed.stream + t);
    // Count threshold exceedances among the n direct gains.
    std::uint64_t k = 0;
    for (std::uint64_t i = 0; i < n; ++i)
      if (rng.next_exponential() > delta) ++k;
    mean_count.add(static_cast<double>(k));
    if (!(static_cast<double>(k) > count_bound)) ++count_violations;

    if (k >= 2) {
      // Mean interference over the k active links: k(k-1) cross gains.
      CompensatedSum total;
      for (std::uint64_t i = 0; i < k * (k - 1); ++i)
        total.add(rng.next_exponential());
      const double mean_interference =
          total.value() / static_cast<double>(k);
      ++interference_trials;
      if (!(mean_interference < (static_cast<double>(k) - 1.0) + psi))
        ++interference_violations;
    }
  }

  TailCheckReport interference_report;
  interference_report.samples = interference_trials;
  interference_report.statistic =
      interference_trials == 0
          ? 0.0
          : static_cast<double>(interference_violations) /
                static_cast<double>(interference_trials);
  interference_report.reference = options.tolerance;
  interference_report.pass =
      interference_report.statistic <= options.tolerance;

  TailCheckReport count_report;
  count_report.samples = trials;
  count_report.statistic =
      static_cast<double>(count_violations) / static_cast<double>(trials);
  count_report.reference = options.tolerance;
  count_report.sample_mean = mean_count.value() / static_cast<double>(trials);
  count_report.target_mean = nd * q;
  count_report.pass = count_report.statistic <= options.tolerance;
  return {interference_report, count_report};
}

TailCheckReport max_gain_check(std::uint64_t n, std::size_t trials, double phi,
                               SeedSpec seed) {
  if (n == 0 || trials == 0)
    throw std::invalid_argument("max_gain_check: n and trials >= 1");
  const double nd = static_cast<double>(n);
  const double level = std::log(nd) + phi;
  std::size_t exceedances = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Pcg32 rng(seed.seed, seed.stream + t);
    bool exceeded = false;
    for (std::uint64_t i = 0; i < n; ++i)
      if (rng.next_exponential() > level) exceeded = true;
    if (exceeded) ++exceedances;
  }
  TailCheckReport report;
  report.samples = trials;
  report.statistic =
      static_cast<double>(exceedances) / static_cast<double>(trials);
  // Exact benchmark for the max of n i.i.d. Exp(1): 1 - (1 - e^{-level})^n.
  report.reference = -std::expm1(nd * std::log1p(-std::exp(-level)));
  const double se =
      std::sqrt(report.reference * (1.0 - report.reference) /
                static_cast<double>(trials));
  report.pass = std::abs(report.statistic - report.reference) <= 3.0 * se;
  return report;
}

}  // namespace fadenet
