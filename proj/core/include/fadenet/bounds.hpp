#ifndef FADENET_BOUNDS_HPP
#define FADENET_BOUNDS_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "fadenet/rng.hpp"
#include "fadenet/threshold.hpp"

namespace fadenet {

/// Tail law of the SINR of one link in a size-k active set under unit-mean
/// exponential gains: P(sinr > x) = e^{-x/rho} / (1 + x)^{k-1}. The
/// interference of the k-1 other links is an Erlang(k-1) sum, whose
/// Laplace transform gives the closed form.
double sinr_ccdf(double x, double k, double rho);

/// Rate tail P(rate > x) = P(sinr > e^x - 1), i.e.
/// e^{-(e^x - 1)/rho} / e^{(k-1) x}.
double rate_ccdf(double x, double k, double rho);

/// The exponential transform X = r + (e^r - 1) / (rho (k - 1)). Under the
/// rate tail law above, X is exponential with mean 1/(k-1) and dominates r.
double xi_transform(double rate, double k, double rho);

/// Inverse of xi_transform in its first argument (strictly increasing
/// bijection of [0, inf) onto itself).
double xi_inverse(double x, double k, double rho);

/// Union-bound exponent for the throughput tail over all size-k subsets of
/// n links: k (log n - x - log k + log x + 2) + log(k)/2 + x. Refuses
/// x < k/(k-1), below which the summand-maximum step behind the formula
/// fails.
double throughput_tail_exponent(double x, double k, double n);

/// Leading-order value of that exponent after substituting the minimum
/// optimal active-set size k = log n / log log n at the critical level
/// x = log n + log log n + 2 log log log n and dropping vanishing terms:
///   -(log log log n / log log n) log n.
/// Negative and decreasing once log log log n > 0; the exact exponent at
/// the same substitutions stays positive until astronomically large n
/// because of the dropped +2k term.
double tail_exponent_asymptotic_bound(double n);

/// Lower bound on the number of active links in the optimal activation,
/// (log n - 2 log log n + log(2/e)) / log(1 + rho (log n + phi)); leading
/// behavior log n / log log n.
double k_star_lower_bound(double n, double rho, double phi);

/// Monte Carlo SINR draws for a random active set of size k under Rayleigh
/// fading: direct gain Exp(1) against 1/rho plus an Erlang(k-1) sum.
std::vector<double> sample_sinr(std::size_t k, double rho, std::size_t count,
                                SeedSpec seed);

struct TailCheckReport {
  double statistic = 0.0;    ///< KS distance or empirical frequency
  double reference = 0.0;    ///< tolerance or exact benchmark probability
  double sample_mean = 0.0;
  double target_mean = 0.0;
  bool pass = false;
  std::size_t samples = 0;
};

struct ConcentrationOptions {
  SlackRule xi = slack::sqrt_log_log();
  SlackRule psi = slack::log_n();
  double tolerance = 0.05;  ///< pass threshold on the violation frequencies
};

/// Empirical violation frequencies, over seeded Rayleigh trials, of
/// (a) the mean-interference bound  (1/k) sum_i I_i < (k - 1) + psi(n) and
/// (b) the active-count lower bound k > n q - xi(n) sqrt(n q).
/// first = (a), second = (b).
std::pair<TailCheckReport, TailCheckReport> concentration_check(
    std::uint64_t n, double delta, std::size_t trials, SeedSpec seed,
    const ConcentrationOptions& options = {});

/// Frequency of max_i g_ii > log n + phi over seeded Rayleigh trials,
/// reported against the exact order-statistic benchmark
/// 1 - (1 - e^{-(log n + phi)})^n; passes within 3 standard errors.
TailCheckReport max_gain_check(std::uint64_t n, std::size_t trials, double phi,
                               SeedSpec seed);

}  // namespace fadenet

#endif
