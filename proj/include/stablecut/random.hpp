#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "stablecut/errors.hpp"

namespace stablecut {

// Seeded streams must reproduce bit-for-bit across platforms, so raw
// mt19937_64 output is mapped to uniforms by hand instead of going through
// std::uniform_*_distribution (whose mapping is implementation-defined).

// Uniform draw from (0, 1].  The open lower end matters for threshold tests
// of the form r <= x: a coordinate that is exactly zero must never match.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>((g() >> 11) + 1) * 0x1p-53;
}

// Uniform draw from [lo, hi).
inline double uniform_real(std::mt19937_64& g, double lo, double hi) {
  const double u = static_cast<double>(g() >> 11) * 0x1p-53;
  return lo + u * (hi - lo);
}

// Unbiased uniform draw from [0, n) by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t n) {
  if (n == 0) throw internal_error("uniform_below: empty range");
  constexpr std::uint64_t umax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t rem = (umax % n + 1) % n;  // 2^64 mod n
  const std::uint64_t bound = umax - rem;        // accept x <= bound
  std::uint64_t x = g();
  while (x > bound) x = g();
  return x % n;
}

// Uniform integer in [lo, hi], inclusive.
inline int uniform_int(std::mt19937_64& g, int lo, int hi) {
  if (lo > hi) throw internal_error("uniform_int: empty range");
  return lo + static_cast<int>(uniform_below(
                  g, static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1));
}

// Stream derivation rule used by every fan-out sampler: stream s of base
// seed b is seeded with b xor s.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) { return base ^ stream; }

// Bit-mixing finalizer; used to derive well-separated per-round seeds where a
// plain xor would correlate nearby streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace stablecut
