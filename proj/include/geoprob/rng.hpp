// Reproducible random streams. A stream is identified by (seed, stream_id);
// its sequence is a pure function of that pair.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace geoprob {

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t mix64(std::uint64_t x) { return splitmix64(x); }

/// xoshiro256** with uniform and Gaussian helpers. Platform-independent: no
/// standard-library distributions are involved.
class Xoshiro256 {
 public:
  explicit constexpr Xoshiro256(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  constexpr std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_positive() { return 1.0 - uniform(); }

  /// Two independent standard normals (Box-Muller).
  std::array<double, 2> normal_pair() {
    const double r = std::sqrt(-2.0 * std::log(uniform_positive()));
    const double a = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(a), r * std::sin(a)};
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_{};
};

/// Immutable stream descriptor; `engine()` yields a fresh generator positioned
/// at the start of the stream.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  Xoshiro256 engine() const {
    return Xoshiro256(mix64(seed) ^ mix64(stream_id + 0x632BE59BD9B4E019ULL));
  }
};

}  // namespace geoprob
