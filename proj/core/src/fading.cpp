#include "fadenet/fading.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fadenet {

FadingSpec FadingSpec::rayleigh() {
  FadingSpec s;
  s.kind_ = FadingKind::Rayleigh;
  s.mean_ = 1.0;
  s.variance_ = 1.0;
  return s;
}

FadingSpec FadingSpec::exponential(double mean) {
  if (!(mean > 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("FadingSpec: exponential mean must be > 0");
  FadingSpec s;
  s.kind_ = FadingKind::Exponential;
  s.mean_ = mean;
  s.variance_ = mean * mean;
  return s;
}

FadingSpec FadingSpec::table(std::vector<double> x, std::vector<double> cdf) {
  if (x.size() != cdf.size() || x.size() < 2)
    throw std::invalid_argument("FadingSpec: table needs >= 2 matching nodes");
  if (x.front() < 0.0)
    throw std::invalid_argument("FadingSpec: table support must be >= 0");
  if (cdf.front() != 0.0 || cdf.back() != 1.0)
    throw std::invalid_argument("FadingSpec: table cdf must run from 0 to 1");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1]) || cdf[i] < cdf[i - 1])
      throw std::invalid_argument("FadingSpec: table must be strictly "
                                  "increasing in x and monotone in cdf");
  }
  FadingSpec s;
  s.kind_ = FadingKind::Table;
  s.table_x_ = std::move(x);
  s.table_cdf_ = std::move(cdf);
  // Piecewise-constant density: closed-form first and second moments.
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 1; i < s.table_x_.size(); ++i) {
    const double a = s.table_x_[i - 1], b = s.table_x_[i];
    const double mass = s.table_cdf_[i] - s.table_cdf_[i - 1];
    m1 += mass * 0.5 * (a + b);
    m2 += mass * (a * a + a * b + b * b) / 3.0;
  }
  s.mean_ = m1;
  s.variance_ = std::max(0.0, m2 - m1 * m1);
  if (!(s.mean_ > 0.0))
    throw std::invalid_argument("FadingSpec: table mean must be > 0");
  return s;
}

double FadingSpec::ccdf(double x) const {
  if (x < 0.0) throw std::domain_error("FadingSpec::ccdf: x must be >= 0");
  switch (kind_) {
    case FadingKind::Rayleigh:
      return std::exp(-x);
    case FadingKind::Exponential:
      return std::exp(-x / mean_);
    case FadingKind::Table: {
      if (x <= table_x_.front()) return 1.0 - table_cdf_.front();
      if (x >= table_x_.back()) return 0.0;
      const auto it =
          std::upper_bound(table_x_.begin(), table_x_.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - table_x_.begin());
      const double t = (x - table_x_[i - 1]) / (table_x_[i] - table_x_[i - 1]);
      const double f = table_cdf_[i - 1] + t * (table_cdf_[i] - table_cdf_[i - 1]);
      return 1.0 - f;
    }
  }
  return 0.0;
}

double FadingSpec::quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0))
    throw std::domain_error("FadingSpec::quantile: u must be in [0, 1)");
  switch (kind_) {
    case FadingKind::Rayleigh:
      return -std::log1p(-u);
    case FadingKind::Exponential:
      return -mean_ * std::log1p(-u);
    case FadingKind::Table: {
      const auto it =
          std::upper_bound(table_cdf_.begin(), table_cdf_.end(), u);
      if (it == table_cdf_.begin()) return table_x_.front();
      if (it == table_cdf_.end()) return table_x_.back();
      const std::size_t i = static_cast<std::size_t>(it - table_cdf_.begin());
      const double span = table_cdf_[i] - table_cdf_[i - 1];
      const double t = span > 0.0 ? (u - table_cdf_[i - 1]) / span : 1.0;
      return table_x_[i - 1] + t * (table_x_[i] - table_x_[i - 1]);
    }
  }
  return 0.0;
}

double FadingSpec::sample(Pcg32& rng) const {
  switch (kind_) {
    case FadingKind::Rayleigh:
      return rng.next_exponential();
    case FadingKind::Exponential:
      return mean_ * rng.next_exponential();
    case FadingKind::Table:
      return quantile(rng.next_double());
  }
  return 0.0;
}

double FadingSpec::sample_truncated(double floor, Pcg32& rng) const {
  if (floor < 0.0)
    throw std::domain_error("FadingSpec::sample_truncated: floor must be >= 0");
  const double q = ccdf(floor);
  if (!(q > 0.0))
    throw std::runtime_error(
        "FadingSpec::sample_truncated: ccdf underflows to zero at floor");
  switch (kind_) {
    case FadingKind::Rayleigh:
      return floor + rng.next_exponential();
    case FadingKind::Exponential:
      return floor + mean_ * rng.next_exponential();
    case FadingKind::Table: {
      const double f = 1.0 - q;
      double u = f + rng.next_double() * q;
      double g = quantile(std::min(u, std::nextafter(1.0, 0.0)));
      // Interpolation can land exactly on the floor; nudge into (floor, inf).
      if (g <= floor) g = std::nextafter(floor, table_x_.back() + 1.0);
      return g;
    }
  }
  return floor;
}

GainMatrix::GainMatrix(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("GainMatrix: empty network (n = 0)");
  data_.assign(n * n, 0.0);
}

std::vector<double> GainMatrix::diagonal() const {
  std::vector<double> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

GainMatrix sample_gain_matrix(const FadingSpec& spec, std::size_t n,
                              SeedSpec seed) {
  if (n == 0)
    throw std::invalid_argument("sample_gain_matrix: empty network (n = 0)");
  GainMatrix g(n);
  Pcg32 rng(seed);
  for (std::size_t tx = 0; tx < n; ++tx)
    for (std::size_t rx = 0; rx < n; ++rx) g.entry(tx, rx) = spec.sample(rng);
  return g;
}

double gain_ccdf(const FadingSpec& spec, double x) { return spec.ccdf(x); }

double sample_truncated_gain(const FadingSpec& spec, double floor,
                             SeedSpec seed) {
  Pcg32 rng(seed);
  return spec.sample_truncated(floor, rng);
}

}  // namespace fadenet
