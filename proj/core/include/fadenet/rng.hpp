#ifndef FADENET_RNG_HPP
#define FADENET_RNG_HPP

#include <cmath>
#include <cstdint>

namespace fadenet {

/// Identifies one reproducible random substream: a master seed plus a
/// stream index. Distinct stream indices under the same master seed give
/// statistically independent, non-overlapping sequences, so trials can be
/// scheduled on any number of workers without changing results.
struct SeedSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// PCG32 with the stream selected through the increment, seeded from a
/// SeedSpec via splitmix64 so that (seed, stream) pairs map to scattered
/// (state, increment) pairs.
class Pcg32 {
 public:
  explicit Pcg32(SeedSpec s) : Pcg32(s.seed, s.stream) {}

  Pcg32(std::uint64_t seed, std::uint64_t stream) {
    const std::uint64_t initstate =
        detail::splitmix64(seed ^ detail::splitmix64(stream));
    const std::uint64_t initseq =
        detail::splitmix64(stream + 0xda3e39cb94b95bdbULL);
    state_ = 0;
    inc_ = (initseq << 1u) | 1u;
    next_u32();
    state_ += initstate;
    next_u32();
  }

  std::uint32_t next_u32() {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const auto xorshifted =
        static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Strictly positive Exp(1) variate by inversion. The uniform is offset
  /// to the cell midpoint so the log argument can be neither 0 nor 1.
  double next_exponential() {
    const double u = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    return -std::log(u);
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 1;
};

}  // namespace fadenet

#endif
