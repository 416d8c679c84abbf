#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fadenet/threshold.hpp"

using namespace fadenet;

TEST_CASE("activation rule") {
  const std::vector<double> gains{0.5, 2.0, 1.5};
  CHECK(activate(gains, 1.0).indices() == std::vector<std::uint32_t>{1, 2});
  CHECK(activate(gains, 0.0).size() == 3);          // all strictly positive
  CHECK(activate(gains, 2.0).empty());              // strict at the max
  CHECK_THROWS_AS(activate(std::vector<double>{-1.0}, 0.0), std::domain_error);
}

TEST_CASE("activation is monotone in the threshold and purely local") {
  Pcg32 rng(61, 0);
  std::vector<double> gains;
  for (int i = 0; i < 200; ++i) gains.push_back(rng.next_exponential());

  const ActiveSet loose = activate(gains, 0.4);
  const ActiveSet tight = activate(gains, 1.7);
  for (std::uint32_t i : tight) CHECK(loose.contains(i));

  // Membership of link i survives arbitrary changes elsewhere.
  std::vector<double> tampered = gains;
  for (int j = 0; j < 200; j += 2) tampered[j] += 10.0;
  const ActiveSet after = activate(tampered, 1.7);
  for (std::uint32_t i = 1; i < 200; i += 2)
    CHECK(after.contains(i) == tight.contains(i));
}

TEST_CASE("achievable throughput bound") {
  const ThresholdPolicy ideal = idealized_policy();

  SUBCASE("pinned Rayleigh value at n=1000, delta=4.3") {
    const double m = 1000.0 * std::exp(-4.3);
    CHECK(m == doctest::Approx(13.569).epsilon(1e-4));
    const double direct = m * std::log1p(4.3 / m);
    CHECK(direct == doctest::Approx(3.7353).epsilon(1e-4));
    CHECK(achievable_throughput(1000.0, 4.3, ideal) ==
          doctest::Approx(direct).epsilon(1e-12));
  }

  SUBCASE("matches n e^{-d} log(1 + d e^d / n) term for term") {
    for (double d : {0.5, 2.0, 4.0, 6.0}) {
      const double alt = 1000.0 * std::exp(-d) *
                         std::log1p(d * std::exp(d) / 1000.0);
      CHECK(achievable_throughput(1000.0, d, ideal) ==
            doctest::Approx(alt).epsilon(1e-12));
    }
  }

  SUBCASE("zero threshold degenerates to zero") {
    CHECK(achievable_throughput(1000.0, 0.0, ideal) == 0.0);
  }

  SUBCASE("vanishing activation probability is out of regime") {
    ThresholdPolicy defaults;  // xi = sqrt(log log n), psi = log n
    CHECK_THROWS_AS(
        achievable_throughput(1000.0, 2.0 * std::log(1000.0), defaults),
        std::runtime_error);
  }
}

TEST_CASE("zero-order threshold solver") {
  SUBCASE("pinned roots") {
    CHECK(solve_zero_order(1000.0) == doctest::Approx(4.300).epsilon(1e-3));
    CHECK(solve_zero_order(1e6) == doctest::Approx(9.765).epsilon(1e-3));
    CHECK(solve_zero_order(1e9) == doctest::Approx(15.78).epsilon(1e-3));
  }

  SUBCASE("residual contract over ten decades") {
    for (double n = 1e3; n <= 1e12; n *= 10.0) {
      const double d = solve_zero_order(n);
      const double residual =
          std::abs(2.0 * n * std::exp(-d) - 2.0 * d - d * d);
      CHECK(residual < 1e-9);
    }
  }

  SUBCASE("asymptotic consistency: bounded scaled error, shrinking raw error") {
    double prev_raw = 1e9;
    for (double n = 1e3; n <= 1e12; n *= 10.0) {
      const double log_n = std::log(n);
      const double log_log_n = std::log(log_n);
      const double approx = log_n - 2.0 * log_log_n + std::log(2.0);
      const double raw = std::abs(solve_zero_order(n) - approx);
      CHECK(raw * log_n / log_log_n < 10.0);
      CHECK(raw < prev_raw);
      prev_raw = raw;
    }
  }

  SUBCASE("domain") {
    CHECK_THROWS_AS(solve_zero_order(2.0), std::invalid_argument);
  }
}

namespace {

// Independent dense-scan maximizer of the same bound, linear grid.
double brute_force_argmax(double n, const ThresholdPolicy& policy) {
  const double hi = std::log(n) + 3.0;
  double best = -1.0, best_d = 0.0;
  for (int i = 1; i <= 400000; ++i) {
    const double d = hi * static_cast<double>(i) / 400000.0;
    double v = -1.0;
    try {
      v = achievable_throughput(n, d, policy);
    } catch (const std::runtime_error&) {
      continue;
    }
    if (v > best) {
      best = v;
      best_d = d;
    }
  }
  return best_d;
}

}  // namespace

TEST_CASE("grid+golden optimizer agrees with a dense-scan oracle") {
  SUBCASE("idealized objective") {
    const ThresholdPolicy ideal = idealized_policy();
    for (double n : {100.0, 1000.0, 31623.0}) {
      const ThresholdSolution sol = optimize_threshold(n, ideal);
      const double oracle = brute_force_argmax(n, ideal);
      CHECK(std::abs(sol.delta - oracle) < 2e-3);
      CHECK(sol.throughput ==
            doctest::Approx(achievable_throughput(n, sol.delta, ideal))
                .epsilon(1e-12));
      CHECK(sol.method == "grid+golden");
    }
  }

  SUBCASE("default slacks") {
    const ThresholdPolicy defaults;
    const ThresholdSolution sol = optimize_threshold(10000.0, defaults);
    const double oracle = brute_force_argmax(10000.0, defaults);
    CHECK(std::abs(sol.delta - oracle) < 2e-3);
    CHECK(sol.predicted_active ==
          doctest::Approx(10000.0 * std::exp(-sol.delta)).epsilon(1e-12));
  }

  SUBCASE("argmax dominates every grid point") {
    const ThresholdPolicy ideal = idealized_policy();
    const ThresholdSolution sol = optimize_threshold(2000.0, ideal);
    const double hi = std::log(2000.0) + 3.0;
    for (int i = 1; i <= 64; ++i) {
      const double d = hi * static_cast<double>(i) / 65.0;
      CHECK(sol.throughput >=
            achievable_throughput(2000.0, d, ideal) * (1.0 - 1e-12));
    }
  }

  SUBCASE("every grid point out of regime") {
    ThresholdPolicy impossible;
    impossible.xi = slack::constant(1e9);
    CHECK_THROWS_AS(optimize_threshold(1000.0, impossible),
                    std::runtime_error);
  }

  SUBCASE("domain") {
    CHECK_THROWS_AS(optimize_threshold(2.0, idealized_policy()),
                    std::invalid_argument);
  }
}

TEST_CASE("rayleigh asymptotic optimum values") {
  const double n = std::exp(10.0);
  const RayleighAsymptotics a = rayleigh_asymptotics(n);
  CHECK(a.delta == doctest::Approx(6.0879769945718543).epsilon(1e-12));
  CHECK(a.throughput == doctest::Approx(5.0879769945718543).epsilon(1e-12));
  CHECK(a.active_count == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(a.rate_per_link == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_THROWS_AS(rayleigh_asymptotics(15.0), std::domain_error);

  // log-domain stability at huge n
  const RayleighAsymptotics big = rayleigh_asymptotics(1e300);
  CHECK(std::isfinite(big.delta));
  CHECK(big.active_count == doctest::Approx(0.5 * 690.77552789821 * 690.77552789821)
                                .epsilon(1e-10));
}

TEST_CASE("first-order corrected threshold") {
  const double n = std::exp(10.0);
  const FirstOrderThreshold f = first_order_correction(n, 0.0);
  CHECK(f.delta == doctest::Approx(7.0090110317694727).epsilon(1e-12));
  CHECK(f.error_bar == 0.0);

  const FirstOrderThreshold g = first_order_correction(n, 1.0);
  CHECK(g.error_bar == doctest::Approx(0.1).epsilon(1e-12));

  // correction term positive: always above the zero-order asymptote
  for (double m : {16.0, 1e3, 1e8, 1e20}) {
    const double base = rayleigh_asymptotics(m).delta;
    CHECK(first_order_correction(m, 0.0).delta > base);
  }
  CHECK_THROWS_AS(first_order_correction(10.0, 0.0), std::domain_error);
}

TEST_CASE("threshold mode resolution") {
  const ThresholdPolicy ideal = idealized_policy();
  CHECK(resolve_threshold(ThresholdMode::Fixed, 1000.0, ideal, 2.5) == 2.5);
  CHECK(resolve_threshold(ThresholdMode::ZeroOrder, 1000.0, ideal, 0.0) ==
        doctest::Approx(solve_zero_order(1000.0)));
  CHECK(resolve_threshold(ThresholdMode::Asymptotic, 22026.0, ideal, 0.0) ==
        doctest::Approx(rayleigh_asymptotics(22026.0).delta));
  CHECK(resolve_threshold(ThresholdMode::Optimize, 1000.0, ideal, 0.0) ==
        doctest::Approx(optimize_threshold(1000.0, ideal).delta));
  CHECK_THROWS_AS(resolve_threshold(ThresholdMode::Fixed, 1000.0, ideal, -1.0),
                  std::invalid_argument);
}
