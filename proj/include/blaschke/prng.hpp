#pragma once

#include <cstdint>

namespace blaschke {

/// Deterministic 64-bit PRNG (splitmix64, public domain).
///
/// Chosen over <random> engines because its output stream is fully specified
/// by the algorithm itself: the same seed yields bit-identical samples on
/// every platform and standard library, which the sampling and verification
/// commands rely on for byte-reproducible output.  std::mt19937 would do for
/// the raw stream, but the standard distributions on top of it are
/// implementation-defined.
class splitmix64 {
 public:
  explicit constexpr splitmix64(std::uint64_t seed) : state_(seed) {}

  /// Next raw 64-bit word.
  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 mantissa bits.
  constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).  Uses rejection-free modulo; the bias for
  /// n << 2^64 is below 2^-50 and irrelevant for sampling purposes, but the
  /// result is still fully deterministic, which is what matters here.
  constexpr std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace blaschke
