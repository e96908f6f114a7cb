#pragma once

#include <cstdint>

namespace aqc::rng {

// sm64ctr-v1: a counter-based generator built on the splitmix64 finalizer.
// word(seed, t) is a pure function of (seed, t) with no hidden state, so
// consumers can be evaluated out of order and in parallel while staying
// reproducible across machines.

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t word(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * kGamma;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Fair coin: bit 63 of the output word.
inline constexpr bool coin(std::uint64_t seed, std::uint64_t counter) {
  return (word(seed, counter) >> 63) != 0;
}

/// Uniform double in [0, 1) with 53 random mantissa bits.
inline constexpr double uniform01(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(word(seed, counter) >> 11) * 0x1.0p-53;
}

/// Child-seed derivation; distinct tags keep unrelated consumers apart.
inline constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
  return word(seed, tag);
}

}  // namespace aqc::rng
