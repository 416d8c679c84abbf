#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fadenet/montecarlo.hpp"
#include "fadenet/rng.hpp"
#include "fadenet/special.hpp"
#include "fadenet/stats.hpp"

using namespace fadenet;

TEST_CASE("pcg32 streams are deterministic and distinct") {
  Pcg32 a(42, 7), b(42, 7), c(42, 8);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u32();
    all_equal = all_equal && (va == b.next_u32());
    any_diff = any_diff || (va != c.next_u32());
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("uniform and exponential draws stay in range") {
  Pcg32 rng(1, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(rng.next_exponential() > 0.0);
  }
}

TEST_CASE("regularized incomplete gamma closed forms") {
  // Q(1, x) = e^{-x}
  for (double x : {0.1, 1.0, 3.0, 10.0})
    CHECK(regularized_gamma_q(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
  // P + Q = 1
  for (double a : {0.5, 2.0, 7.5})
    for (double x : {0.2, 2.0, 9.0})
      CHECK(regularized_gamma_p(a, x) + regularized_gamma_q(a, x) ==
            doctest::Approx(1.0).epsilon(1e-12));
  // Erlang(3) tail: e^{-x} (1 + x + x^2/2), independent arithmetic route
  for (double x : {0.5, 2.0, 6.0}) {
    const double direct = std::exp(-x) * (1.0 + x + 0.5 * x * x);
    CHECK(erlang_tail(3, x) == doctest::Approx(direct).epsilon(1e-12));
  }
  // chi-squared with 2 dof is Exp(mean 2)
  CHECK(chi_squared_tail(2.0, 3.0) ==
        doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
  CHECK_THROWS_AS(erlang_tail(0, 1.0), std::domain_error);
  CHECK_THROWS_AS(regularized_gamma_q(-1.0, 1.0), std::domain_error);
}

TEST_CASE("compensated summation keeps tiny terms") {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);  // plain doubles lose the middle term
}

TEST_CASE("moment summary") {
  std::vector<double> xs{1.0, 3.0};
  const MomentSummary m = moments(xs);
  CHECK(m.mean == doctest::Approx(2.0));
  CHECK(m.stdev == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(moments(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("ks statistic and critical values") {
  // 1% asymptotic constant: sqrt(-ln(0.005)/2) = 1.62762...
  CHECK(ks_critical_value(0.01, 10000) ==
        doctest::Approx(0.016276236).epsilon(1e-6));

  // A perfect uniform grid has D = 1/(2n) against U(0,1).
  std::vector<double> grid;
  const std::size_t n = 1000;
  for (std::size_t i = 0; i < n; ++i)
    grid.push_back((static_cast<double>(i) + 0.5) / static_cast<double>(n));
  const auto uniform_cdf = [](double x) { return x; };
  CHECK(ks_statistic(grid, uniform_cdf) ==
        doctest::Approx(0.0005).epsilon(1e-9));

  // A compressed sample is flagged far beyond the critical value.
  std::vector<double> shifted;
  for (double x : grid) shifted.push_back(0.5 * x);
  CHECK(ks_statistic(shifted, uniform_cdf) > 5 * ks_critical_value(0.01, n));

  // Two-sample: identical samples have D = 0.
  CHECK(ks_statistic_two_sample(grid, grid) == 0.0);
  CHECK(ks_statistic_two_sample(grid, shifted) > 0.2);
}

TEST_CASE("exact binomial sampler") {
  Pcg32 rng(99, 0);
  CHECK(sample_binomial(100, 0.0, rng) == 0);
  CHECK(sample_binomial(100, 1.0, rng) == 100);
  CHECK(sample_binomial(0, 0.3, rng) == 0);
  for (int i = 0; i < 200; ++i) CHECK(sample_binomial(5, 0.5, rng) <= 5);

  SUBCASE("moments at moderate np") {
    const std::uint64_t n = 100;
    const double p = 0.3;
    const std::size_t reps = 40000;
    std::vector<double> xs;
    xs.reserve(reps);
    Pcg32 gen(7, 1);
    for (std::size_t i = 0; i < reps; ++i)
      xs.push_back(static_cast<double>(sample_binomial(n, p, gen)));
    const MomentSummary m = moments(xs);
    const double mu = static_cast<double>(n) * p;
    const double sigma = std::sqrt(mu * (1.0 - p));
    CHECK(std::abs(m.mean - mu) < 4.0 * sigma / std::sqrt(double(reps)));
    CHECK(m.stdev == doctest::Approx(sigma).epsilon(0.03));
  }

  SUBCASE("goodness of fit, small activation probability") {
    const std::uint64_t n = 10000;
    const double p = 0.0067;
    std::vector<std::uint64_t> draws;
    Pcg32 gen(11, 2);
    for (int i = 0; i < 20000; ++i) draws.push_back(sample_binomial(n, p, gen));
    const GofResult gof = binomial_chi_squared_gof(draws, n, p);
    CHECK(gof.p_value > 0.01);
  }

  SUBCASE("goodness of fit, flipped branch p > 1/2") {
    const std::uint64_t n = 50;
    const double p = 0.7;
    std::vector<std::uint64_t> draws;
    Pcg32 gen(13, 3);
    for (int i = 0; i < 20000; ++i) draws.push_back(sample_binomial(n, p, gen));
    const GofResult gof = binomial_chi_squared_gof(draws, n, p);
    CHECK(gof.p_value > 0.01);
  }

  SUBCASE("goodness of fit rejects a wrong model") {
    const std::uint64_t n = 10000;
    std::vector<std::uint64_t> draws;
    Pcg32 gen(17, 4);
    for (int i = 0; i < 20000; ++i)
      draws.push_back(sample_binomial(n, 0.0067, gen) + 3);
    const GofResult gof = binomial_chi_squared_gof(draws, n, 0.0067);
    CHECK(gof.p_value < 1e-6);
  }
}
