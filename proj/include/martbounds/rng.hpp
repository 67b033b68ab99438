#pragma once

#include <cstdint>

#include "martbounds/numeric.hpp"

namespace martbounds {

// Counter-based random streams. Every draw is a pure function of
// (seed, stream, replicate, step), so parallel generation over replicates is
// order-independent and reproducible across thread counts.

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

enum Stream : std::uint64_t {
  kDifferences = 0x11,
  kMultipliers = 0x22,
  kTableEstimation = 0x33,
  kAux = 0x44,
  kGeneric = 0x55,
};

inline std::uint64_t counter(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t rep, std::uint64_t step) {
  std::uint64_t h = splitmix64(seed ^ (stream * 0xD1B54A32D192ED03ull));
  h = splitmix64(h ^ (rep * 0x9E3779B97F4A7C15ull));
  h = splitmix64(h ^ (step * 0x2545F4914F6CDD1Dull));
  return h;
}

/// Uniform on [0, 1).
inline double uniform(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t rep, std::uint64_t step) {
  return static_cast<double>(counter(seed, stream, rep, step) >> 11) *
         0x1.0p-53;
}

/// Uniform on (0, 1]; safe under log().
inline double uniform_pos(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t rep, std::uint64_t step) {
  return (static_cast<double>(counter(seed, stream, rep, step) >> 11) + 1.0) *
         0x1.0p-53;
}

/// Standard normal via the inverse CDF of a counter draw.
inline double gaussian(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t rep, std::uint64_t step) {
  return normal_quantile(uniform_pos(seed, stream, rep, step));
}

/// +1 or -1 with equal probability.
inline double rademacher(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t rep, std::uint64_t step) {
  return (counter(seed, stream, rep, step) & 1ull) ? 1.0 : -1.0;
}

}  // namespace rng

}  // namespace martbounds
