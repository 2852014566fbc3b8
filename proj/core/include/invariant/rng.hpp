#pragma once

#include <cstdint>

namespace invariant {

__extension__ using uint128_t = unsigned __int128;

/// SplitMix64 (Steele, Lea, Flood 2014). Fixed constants so that a seed
/// yields the same stream in any implementation:
///
///   state += 0x9E3779B97F4A7C15
///   z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// Bounded draws use the multiply-shift reduction
/// lo + ((next() * (hi - lo + 1)) >> 64) over 128-bit products.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi]; requires lo <= hi.
  constexpr std::int64_t uniform(std::int64_t lo, std::int64_t hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
    const auto scaled = static_cast<uint128_t>(next()) * span;
    return lo + static_cast<std::int64_t>(static_cast<std::uint64_t>(scaled >> 64));
  }

  /// True with probability numerator / denominator.
  constexpr bool chance(std::uint64_t numerator, std::uint64_t denominator) noexcept {
    return static_cast<std::uint64_t>(uniform(0, static_cast<std::int64_t>(denominator) - 1)) < numerator;
  }

 private:
  std::uint64_t state_;
};

}  // namespace invariant
