#pragma once

#include <cstdint>

namespace zirho::rng {

// Counter-based pseudo-random generator built on the splitmix64 finalizer.
//
// There is no sequential state: the value of a stream at any position is a
// pure function of (key, counter), so draws can be evaluated in any order,
// in parallel, and are reproducible across platforms. Independent streams
// are derived by nesting, e.g. at(at(seed, scenario), replication).

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer (Steele, Lea, Flood 2014); bijective on 64-bit ints.
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Value of stream `key` at position `counter`.
constexpr std::uint64_t at(std::uint64_t key, std::uint64_t counter) noexcept {
  return mix(key + kGolden * (counter + 1));
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double uniform01(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace zirho::rng
