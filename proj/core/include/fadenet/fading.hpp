#ifndef FADENET_FADING_HPP
#define FADENET_FADING_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fadenet/rng.hpp"

namespace fadenet {

enum class FadingKind { Rayleigh, Exponential, Table };

/// Distribution of the i.i.d. channel power gains. Rayleigh fading is
/// represented in the power domain: unit-mean exponential gains with
/// pdf e^{-x}. General distributions are given as a monotone piecewise-linear
/// cdf table; sampling accuracy is the table's responsibility.
class FadingSpec {
 public:
  static FadingSpec rayleigh();
  static FadingSpec exponential(double mean);
  static FadingSpec table(std::vector<double> x, std::vector<double> cdf);

  FadingKind kind() const { return kind_; }
  double mean() const { return mean_; }
  double variance() const { return variance_; }

  /// ccdf q_x = 1 - F(x); nonincreasing, q_0 = 1 for nonnegative support.
  double ccdf(double x) const;

  /// Inverse cdf for u in [0, 1).
  double quantile(double u) const;

  double sample(Pcg32& rng) const;

  /// Draw conditioned on exceeding `floor`. For exponential kinds this is
  /// the memoryless shift floor + Exp(mean); the table kind inverts the cdf
  /// restricted to (floor, inf). Throws if q_floor is numerically zero.
  double sample_truncated(double floor, Pcg32& rng) const;

 private:
  FadingSpec() = default;

  FadingKind kind_ = FadingKind::Rayleigh;
  double mean_ = 1.0;
  double variance_ = 1.0;
  std::vector<double> table_x_;
  std::vector<double> table_cdf_;
};

/// Square matrix of channel power gains; entry(j, i) is the gain from
/// transmitter j to receiver i.
class GainMatrix {
 public:
  explicit GainMatrix(std::size_t n);

  std::size_t size() const { return n_; }

  double operator()(std::size_t tx, std::size_t rx) const {
    return data_[tx * n_ + rx];
  }
  double& entry(std::size_t tx, std::size_t rx) { return data_[tx * n_ + rx]; }

  std::vector<double> diagonal() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// n x n matrix of i.i.d. draws, filled transmitter-major so that equal
/// (spec, n, seed) give bit-identical matrices on any schedule.
GainMatrix sample_gain_matrix(const FadingSpec& spec, std::size_t n,
                              SeedSpec seed);

/// q_x = 1 - F(x) for x >= 0.
double gain_ccdf(const FadingSpec& spec, double x);

/// Single conditional draw above `floor` from a fresh substream.
double sample_truncated_gain(const FadingSpec& spec, double floor,
                             SeedSpec seed);

}  // namespace fadenet

#endif
