#pragma once

#include <cstdint>
#include <random>

#include "isokd/types.hpp"

namespace isokd {

/// Seeded random stream with hand-rolled distributions. std::* distributions
/// are implementation-defined, which would break bit-reproducible runs across
/// toolchains, so only the raw mt19937_64 engine is taken from the standard
/// library.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  /// Independent stream derived from this source's seed and a tag.
  RandomSource fork(std::uint64_t tag) const;

  /// Uniform draw strictly inside (0, 1).
  double uniform();

  /// Uniform draw in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n).
  Index uniform_index(Index n);

  /// Standard normal via Box-Muller.
  double normal();

  /// Gamma(alpha, 1), alpha > 0 (Marsaglia-Tsang).
  double gamma(double alpha);

  /// Beta(a, b) via two gamma draws, clamped strictly inside (0, 1).
  double beta(double a, double b);

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace isokd
