#include "fadenet/threshold.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fadenet {

namespace slack {

SlackRule zero() {
  return [](double) { return 0.0; };
}

SlackRule constant(double value) {
  if (!(value >= 0.0))
    throw std::invalid_argument("slack::constant: value must be >= 0");
  return [value](double) { return value; };
}

SlackRule sqrt_log_log() {
  return [](double n) { return std::sqrt(std::log(std::log(n))); };
}

SlackRule log_log() {
  return [](double n) { return std::log(std::log(n)); };
}

SlackRule log_n() {
  return [](double n) { return std::log(n); };
}

}  // namespace slack

ActiveSet activate(std::span<const double> direct_gains, double delta) {
  std::vector<std::uint32_t> idx;
  for (std::size_t i = 0; i < direct_gains.size(); ++i) {
    if (!(direct_gains[i] >= 0.0))
      throw std::domain_error("activate: direct gains must be >= 0");
    if (direct_gains[i] > delta) idx.push_back(static_cast<std::uint32_t>(i));
  }
  return ActiveSet(std::move(idx));
}

namespace {

// Bound evaluation that reports out-of-regime as nullopt, for grid scans.
std::optional<double> bound_value(double n, double delta,
                                  const ThresholdPolicy& policy) {
  const double q = policy.fading.ccdf(delta);
  if (!(q > 0.0)) return std::nullopt;
  const double nq = n * q;
  const double effective = nq - policy.xi(n) * std::sqrt(nq);
  if (!(effective > 0.0)) return std::nullopt;
  const double denom = policy.fading.mean() * effective + policy.psi(n);
  return effective * std::log1p(delta / denom);
}

constexpr double kGoldenRatio = 0.6180339887498949;  // (sqrt(5) - 1) / 2

// Golden-section maximization on [lo, hi]; f must be defined there.
double golden_max(double lo, double hi,
                  const std::function<double(double)>& f) {
  double a = lo, b = hi;
  double x1 = b - kGoldenRatio * (b - a);
  double x2 = a + kGoldenRatio * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-12 * std::max(1.0, std::abs(b))) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGoldenRatio * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGoldenRatio * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double achievable_throughput(double n, double delta,
                             const ThresholdPolicy& policy) {
  if (!(n >= 1.0))
    throw std::invalid_argument("achievable_throughput: n must be >= 1");
  if (!(delta >= 0.0))
    throw std::domain_error("achievable_throughput: delta must be >= 0");
  const double q = policy.fading.ccdf(delta);
  if (!(q > 0.0))
    throw std::runtime_error(
        "achievable_throughput: out of regime, ccdf vanishes at delta");
  const auto v = bound_value(n, delta, policy);
  if (!v)
    throw std::runtime_error(
        "achievable_throughput: out of regime, effective link count <= 0");
  return *v;
}

ThresholdSolution optimize_threshold(double n, const ThresholdPolicy& policy,
                                     std::size_t grid_points) {
  if (!(n >= 3.0))
    throw std::invalid_argument("optimize_threshold: n must be >= 3");
  if (grid_points < 8)
    throw std::invalid_argument("optimize_threshold: grid too coarse");

  const double delta_max = std::log(n) + 3.0;
  const double delta_min = delta_max * 1e-6;
  const double step = std::log(delta_max / delta_min) /
                      static_cast<double>(grid_points - 1);
  std::vector<double> grid(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i)
    grid[i] = delta_min * std::exp(step * static_cast<double>(i));
  grid.back() = delta_max;

  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_i = grid_points;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const auto v = bound_value(n, grid[i], policy);
    if (v && *v > best) {
      best = *v;
      best_i = i;
    }
  }
  if (best_i == grid_points)
    throw std::runtime_error(
        "optimize_threshold: every grid point is out of regime");

  // Refine inside the bracket around the best grid point, clamped to the
  // in-regime neighbours.
  double lo = best_i > 0 ? grid[best_i - 1] : grid[best_i];
  double hi = best_i + 1 < grid_points ? grid[best_i + 1] : grid[best_i];
  const auto objective = [&](double d) {
    const auto v = bound_value(n, d, policy);
    return v ? *v : -std::numeric_limits<double>::infinity();
  };
  double delta_star = grid[best_i];
  if (hi > lo) {
    const double refined = golden_max(lo, hi, objective);
    if (objective(refined) >= best) delta_star = refined;
  }

  ThresholdSolution sol;
  sol.delta = delta_star;
  sol.throughput = achievable_throughput(n, delta_star, policy);
  const double q = policy.fading.ccdf(delta_star);
  const double nq = n * q;
  const double effective = nq - policy.xi(n) * std::sqrt(nq);
  sol.predicted_active = nq;
  sol.predicted_rate_per_link = std::log1p(
      delta_star / (policy.fading.mean() * effective + policy.psi(n)));
  sol.method = "grid+golden";
  return sol;
}

double solve_zero_order(double n) {
  if (!(n >= 3.0))
    throw std::invalid_argument("solve_zero_order: n must be >= 3");
  // Scale-free form: sign of log(2n) - delta - log(delta (2 + delta)),
  // strictly decreasing on (0, inf), so bisection is safe up to n ~ 1e300.
  const auto sign_positive = [n](double d) {
    return std::log(2.0 * n) - d - std::log(d * (2.0 + d)) > 0.0;
  };
  double lo = 1e-12;
  double hi = std::log(n) + 3.0;
  if (!sign_positive(lo) || sign_positive(hi))
    throw std::runtime_error("solve_zero_order: no sign change in bracket");
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at machine resolution
    if (sign_positive(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

RayleighAsymptotics rayleigh_asymptotics(double n) {
  if (!(n >= 16.0))
    throw std::domain_error("rayleigh_asymptotics: n must be >= 16");
  const double log_n = std::log(n);
  const double log_log_n = std::log(log_n);
  RayleighAsymptotics a;
  a.delta = log_n - 2.0 * log_log_n + std::log(2.0);
  a.throughput = log_n - 2.0 * log_log_n + std::log(2.0) - 1.0;  // log(2/e)
  a.active_count = 0.5 * log_n * log_n;
  a.rate_per_link = 2.0 / log_n;
  return a;
}

FirstOrderThreshold first_order_correction(double n, double xi_value) {
  if (!(n >= 16.0))
    throw std::domain_error("first_order_correction: n must be >= 16");
  if (!(xi_value >= 0.0))
    throw std::domain_error("first_order_correction: xi must be >= 0");
  const double log_n = std::log(n);
  const double log_log_n = std::log(log_n);
  FirstOrderThreshold f;
  f.delta = log_n - 2.0 * log_log_n + std::log(2.0) +
            4.0 * log_log_n / log_n;
  f.error_bar = xi_value / log_n;
  return f;
}

double resolve_threshold(ThresholdMode mode, double n,
                         const ThresholdPolicy& policy, double fixed_delta) {
  switch (mode) {
    case ThresholdMode::Fixed:
      if (!(fixed_delta >= 0.0))
        throw std::invalid_argument("resolve_threshold: fixed delta < 0");
      return fixed_delta;
    case ThresholdMode::Optimize:
      return optimize_threshold(n, policy).delta;
    case ThresholdMode::ZeroOrder:
      return solve_zero_order(n);
    case ThresholdMode::Asymptotic:
      return rayleigh_asymptotics(n).delta;
  }
  throw std::logic_error("resolve_threshold: unknown mode");
}

}  // namespace fadenet
