#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace pzero {

// splitmix64 finalizer; full-avalanche scramble of a 64-bit word.
inline std::uint64_t scramble64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds (seed, tag words...) into one stream seed. Streams for distinct
// word sequences are independent for all practical purposes.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words) {
  std::uint64_t s = 0x5851f42d4c957f2dULL;
  for (std::uint64_t w : words) s = scramble64(s ^ w);
  return s;
}

// Seeded uniform/normal source. The engine is mt19937_64, so the raw
// stream is identical on every conforming platform. Derived draws:
//   uniform01: top 53 bits scaled to [0, 1)
//   normal:    Box-Muller on consecutive uniforms (pairs cached)
//   below:     modulo rejection, no bias
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pzero
