#pragma once

#include <cstdint>
#include <random>

#include "crlab/gaussian.hpp"

namespace crlab {

// Deterministic random source. mt19937_64 has a standardized sequence and all
// derived values below use explicit integer mappings, so streams are
// bit-identical across platforms for a given seed.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // [0, 1)
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // inclusive range; modulo mapping (bias is irrelevant at these range sizes)
  long uniform_long(long a, long b) {
    std::uint64_t range = static_cast<std::uint64_t>(b - a) + 1;
    return a + static_cast<long>(gen_() % range);
  }

  Rational rational(long span) { return rat(uniform_long(-span, span), uniform_long(1, span)); }

  // in [0, 1] with denominator up to span
  Rational rational01(long span) {
    long den = uniform_long(1, span);
    long num = uniform_long(0, den);
    return rat(num, den);
  }

  Rational rational_positive(long span) { return rat(uniform_long(1, span), uniform_long(1, span)); }

  GaussianRational gaussian(long span) { return {rational(span), rational(span)}; }

private:
  std::mt19937_64 gen_;
};

// Stream splitting for worker parallelism (splitmix64 of seed and index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace crlab
