#pragma once

// Platform-independent pseudo-random sources. Everything random in the
// library is a pure function of a 64-bit seed and a few counters, so results
// are bit-identical across runs, compilers, and worker counts.

#include <cmath>
#include <cstdint>
#include <string_view>

namespace hdc {

struct RngSeed {
  std::uint64_t value = 0;

  friend constexpr bool operator==(RngSeed, RngSeed) = default;
};

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// Counter-based hash: word `position` of stream `index` under `seed`.
constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index,
                                     std::uint64_t position) noexcept {
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h + kGolden * (index + 1));
  return mix64(h ^ (kGolden * (position + 1)));
}

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Domain-separated child seed, so independent consumers of one user seed
/// never draw overlapping streams.
constexpr RngSeed derive_seed(RngSeed seed, std::string_view domain) noexcept {
  return RngSeed{mix64(seed.value ^ mix64(fnv1a(domain)))};
}

/// Sequential SplitMix64 generator.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGolden;
    return mix64(state_);
  }

  /// Uniform integer in [0, bound); Lemire's multiply-shift with rejection.
  std::uint64_t bounded(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    __uint128_t m = static_cast<__uint128_t>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<__uint128_t>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; std::normal_distribution is not
  /// reproducible across standard libraries.
  double normal() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace hdc
