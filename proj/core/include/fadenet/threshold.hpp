#ifndef FADENET_THRESHOLD_HPP
#define FADENET_THRESHOLD_HPP

#include <functional>
#include <span>
#include <string>

#include "fadenet/fading.hpp"
#include "fadenet/netmodel.hpp"

namespace fadenet {

/// Slack term as a function of the link count n.
using SlackRule = std::function<double(double)>;

namespace slack {
SlackRule zero();
SlackRule constant(double value);
SlackRule sqrt_log_log();  ///< sqrt(log log n)
SlackRule log_log();       ///< log log n
SlackRule log_n();         ///< log n
}  // namespace slack

/// Threshold activation policy: a link transmits iff its direct gain
/// strictly exceeds delta. The xi and psi slack rules enter the
/// deterministic achievable-throughput bound; both may be zero for the
/// idealized objective.
struct ThresholdPolicy {
  double delta = 0.0;
  SlackRule xi = slack::sqrt_log_log();
  SlackRule psi = slack::log_n();
  FadingSpec fading = FadingSpec::rayleigh();
};

inline ThresholdPolicy idealized_policy(double delta = 0.0) {
  return ThresholdPolicy{delta, slack::zero(), slack::zero(),
                         FadingSpec::rayleigh()};
}

/// Active set selected by the local rule g_ii > delta (strict: ties stay
/// silent). Link i's membership depends on nothing but its own direct gain.
ActiveSet activate(std::span<const double> direct_gains, double delta);

/// Deterministic achievable throughput at threshold delta:
///   m log(1 + delta / (mu m + psi(n))),  m = n q - xi(n) sqrt(n q),
/// with q the gain ccdf at delta. Throws out-of-regime when the effective
/// link count m is not positive.
double achievable_throughput(double n, double delta,
                             const ThresholdPolicy& policy);

struct ThresholdSolution {
  double delta = 0.0;             ///< maximizing threshold
  double throughput = 0.0;        ///< bound value at delta
  double predicted_active = 0.0;  ///< n q_delta
  double predicted_rate_per_link = 0.0;
  std::string method;             ///< "grid+golden" | "zero-order" | "first-order"
};

/// Maximizes the achievable-throughput bound over delta in (0, log n + 3].
/// A log-uniform grid scan (no unimodality assumed) locates the best
/// bracket, then golden-section search refines it.
ThresholdSolution optimize_threshold(double n, const ThresholdPolicy& policy,
                                     std::size_t grid_points = 2048);

/// Root of 2 n e^{-delta} = 2 delta + delta^2 by bisection, the stationary
/// point of the quadratic-log approximation of the idealized Rayleigh
/// objective. Residual at the root is below 1e-9 for n up to 1e12.
double solve_zero_order(double n);

struct RayleighAsymptotics {
  double delta = 0.0;
  double throughput = 0.0;
  double active_count = 0.0;
  double rate_per_link = 0.0;
};

/// Leading-term Rayleigh values at the optimum threshold:
/// delta = log n - 2 log log n + log 2, throughput with log(2/e) instead,
/// active count log^2(n)/2, rate per link 2/log n. Lower-order corrections
/// are deliberately omitted; n may be as large as 1e300.
RayleighAsymptotics rayleigh_asymptotics(double n);

struct FirstOrderThreshold {
  double delta = 0.0;
  double error_bar = 0.0;  ///< magnitude xi / log n of the dropped remainder
};

/// Zero-order asymptotic threshold plus the explicit first-order term
/// 4 log log n / log n. The order-xi/log n remainder is reported as an
/// error bar, not added in.
FirstOrderThreshold first_order_correction(double n, double xi_value);

/// How a run decides its activation threshold.
enum class ThresholdMode { Fixed, Optimize, ZeroOrder, Asymptotic };

double resolve_threshold(ThresholdMode mode, double n,
                         const ThresholdPolicy& policy, double fixed_delta);

}  // namespace fadenet

#endif
