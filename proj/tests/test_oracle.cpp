#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fadenet/oracle.hpp"
#include "fadenet/threshold.hpp"

using namespace fadenet;

TEST_CASE("single-link oracle") {
  GainMatrix g(1);
  g.entry(0, 0) = 2.0;
  const OracleResult r = max_throughput_exhaustive(g, NetworkParams{1, 1.0});
  CHECK(r.best.indices() == std::vector<std::uint32_t>{0});
  CHECK(r.best_throughput ==
        doctest::Approx(1.0986122886681098).epsilon(1e-12));  // log 3
  CHECK(r.subsets_evaluated == 2);
}

TEST_CASE("two-link oracle enumerates all four subsets") {
  GainMatrix g(2);
  g.entry(0, 0) = 2.0;
  g.entry(1, 1) = 3.0;
  g.entry(0, 1) = 10.0;
  g.entry(1, 0) = 10.0;
  const NetworkParams params{2, 1.0};
  const OracleResult r = max_throughput_exhaustive(g, params);
  // by hand: {} -> 0, {0} -> log 3, {1} -> log 4, {0,1} -> 0.4082
  CHECK(r.best.indices() == std::vector<std::uint32_t>{1});
  CHECK(r.best_throughput ==
        doctest::Approx(1.3862943611198906).epsilon(1e-12));  // log 4
  CHECK(r.subsets_evaluated == 4);
}

TEST_CASE("recompute check is exact") {
  const GainMatrix g =
      sample_gain_matrix(FadingSpec::rayleigh(), 10, SeedSpec{3001, 0});
  const NetworkParams params{10, 1.0};
  const OracleResult r = max_throughput_exhaustive(g, params);
  CHECK(r.best_throughput == throughput(g, r.best, params).throughput);
  CHECK(r.subsets_evaluated == 1024);
}

TEST_CASE("oracle dominates random subsets and every threshold choice") {
  const GainMatrix g =
      sample_gain_matrix(FadingSpec::rayleigh(), 11, SeedSpec{3002, 0});
  const NetworkParams params{11, 1.0};
  const OracleResult r = max_throughput_exhaustive(g, params);

  Pcg32 rng(3002, 99);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<std::uint32_t> subset;
    for (std::uint32_t i = 0; i < 11; ++i)
      if (rng.next_double() < 0.5) subset.push_back(i);
    const double t = throughput(g, ActiveSet(std::move(subset)), params).throughput;
    CHECK(t <= r.best_throughput);
  }

  const auto diag = g.diagonal();
  for (double delta = 0.0; delta < 6.0; delta += 0.25) {
    const double t = throughput(g, activate(diag, delta), params).throughput;
    CHECK(t <= r.best_throughput);
  }
}

TEST_CASE("permutation equivariance of the optimum") {
  const std::size_t n = 9;
  const GainMatrix g =
      sample_gain_matrix(FadingSpec::rayleigh(), n, SeedSpec{3003, 0});
  const NetworkParams params{n, 2.0};
  const OracleResult base = max_throughput_exhaustive(g, params);

  GainMatrix permuted(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      permuted.entry(n - 1 - j, n - 1 - i) = g(j, i);
  const OracleResult moved = max_throughput_exhaustive(permuted, params);

  CHECK(moved.best_throughput ==
        doctest::Approx(base.best_throughput).epsilon(1e-12));
  std::vector<std::uint32_t> mapped;
  for (std::uint32_t i : base.best)
    mapped.push_back(static_cast<std::uint32_t>(n - 1 - i));
  CHECK(ActiveSet(std::move(mapped)) == moved.best);
}

TEST_CASE("enumeration guard") {
  GainMatrix g(21);
  for (std::size_t i = 0; i < 21; ++i) g.entry(i, i) = 1.0;
  CHECK_THROWS_AS(max_throughput_exhaustive(g, NetworkParams{21, 1.0}),
                  std::runtime_error);
}

TEST_CASE("threshold gap report") {
  SUBCASE("interference-free instances are solved by threshold zero") {
    GainMatrix g(6);
    for (std::size_t i = 0; i < 6; ++i) g.entry(i, i) = 2.0 + double(i);
    const NetworkParams params{6, 1.0};
    const std::vector<double> grid{0.0, 1.0, 3.0};
    const GapReport gap = threshold_optimality_gap(g, params, grid);
    CHECK(gap.best_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gap.best_delta == 0.0);
  }

  SUBCASE("two-link instance: the right threshold silences the weak link") {
    GainMatrix g(2);
    g.entry(0, 0) = 2.0;
    g.entry(1, 1) = 3.0;
    g.entry(0, 1) = 10.0;
    g.entry(1, 0) = 10.0;
    const NetworkParams params{2, 1.0};
    const std::vector<double> grid{0.0, 1.0, 2.5};
    const GapReport gap = threshold_optimality_gap(g, params, grid);
    CHECK(gap.best_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gap.best_delta == 2.5);
    CHECK(gap.threshold_active == 1);
    CHECK(gap.oracle_active == 1);
  }

  SUBCASE("ratio is normalized into (0, 1]") {
    const GainMatrix g =
        sample_gain_matrix(FadingSpec::rayleigh(), 9, SeedSpec{3004, 0});
    const NetworkParams params{9, 1.0};
    const std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 4.0};
    const GapReport gap = threshold_optimality_gap(g, params, grid);
    CHECK(gap.best_ratio > 0.0);
    CHECK(gap.best_ratio <= 1.0 + 1e-12);
  }
}
