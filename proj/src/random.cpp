#include "isokd/random.hpp"

#include <cmath>
#include <stdexcept>

namespace isokd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

RandomSource RandomSource::fork(std::uint64_t tag) const {
  return RandomSource(splitmix64(seed_ ^ splitmix64(tag)));
}

double RandomSource::uniform() {
  // 53 random bits, offset by half a step: never exactly 0 or 1.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RandomSource::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

Index RandomSource::uniform_index(Index n) {
  if (n <= 0) throw std::invalid_argument("uniform_index: n must be positive");
  const auto k = static_cast<Index>(uniform() * static_cast<double>(n));
  return k < n ? k : n - 1;
}

double RandomSource::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double RandomSource::gamma(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("gamma: alpha must be positive");
  if (alpha < 1.0) {
    // Boost: Gamma(a) = Gamma(a+1) * U^(1/a).
    const double u = uniform();
    return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RandomSource::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  double r = x / (x + y);
  // Keep the draw strictly inside (0, 1) even when one gamma underflows.
  if (!(r > 0.0)) r = 0x1.0p-53;
  if (!(r < 1.0)) r = 1.0 - 0x1.0p-53;
  return r;
}

}  // namespace isokd
