#ifndef FADENET_SPECIAL_HPP
#define FADENET_SPECIAL_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace fadenet {

namespace detail {

// Lower regularized incomplete gamma by power series, for x < a + 1.
inline double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by Lentz continued fraction, x >= a + 1.
inline double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace detail

/// Lower regularized incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
inline double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(x))
    throw std::domain_error("regularized_gamma_p: need a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return detail::gamma_p_series(a, x);
  return 1.0 - detail::gamma_q_cf(a, x);
}

/// Upper regularized incomplete gamma Q(a, x) = 1 - P(a, x).
inline double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(x))
    throw std::domain_error("regularized_gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
  return detail::gamma_q_cf(a, x);
}

/// Tail of a sum of m i.i.d. unit exponentials (an Erlang(m) variable,
/// equivalently chi-squared with 2m degrees of freedom scaled by 1/2):
/// P(sum > x) = Q(m, x) = e^{-x} sum_{j<m} x^j / j!.
inline double erlang_tail(std::size_t m, double x) {
  if (m == 0) throw std::domain_error("erlang_tail: need m >= 1");
  if (x < 0.0) throw std::domain_error("erlang_tail: need x >= 0");
  return regularized_gamma_q(static_cast<double>(m), x);
}

/// Survival function of a chi-squared variable: P(X > x), dof > 0.
inline double chi_squared_tail(double dof, double x) {
  return regularized_gamma_q(0.5 * dof, 0.5 * x);
}

}  // namespace fadenet

#endif
