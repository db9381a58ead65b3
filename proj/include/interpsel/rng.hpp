#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Seeded randomness helpers. Everything here is built from fully specified
// arithmetic (mt19937_64 plus explicit transforms), so streams are
// bit-identical across platforms and standard libraries. In particular we do
// not use std::normal_distribution, whose output sequence is
// implementation-defined.
namespace interpsel::rng {

// SplitMix64 finalizer.
inline std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed for substream `stream` of `master`. Derived seeds do not depend on
// the order in which streams are consumed, so parallel and sequential
// execution see identical randomness.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix(master + 0x9E3779B97F4A7C15ull * (stream + 1));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// Uniform index in [0, n). Lemire multiply-shift; bias is below n / 2^64.
inline std::size_t uniform_index(std::mt19937_64& engine, std::size_t n) {
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(engine()) * n) >> 64);
}

// Standard normal deviates via the Box-Muller transform.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    constexpr double kTwoPi = 6.28318530717958647692528676655900577;
    const double u1 = uniform_unit(engine_);  // 1 - u1 is in (0, 1]
    const double u2 = uniform_unit(engine_);
    const double radius = std::sqrt(-2.0 * std::log1p(-u1));
    const double angle = kTwoPi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace interpsel::rng
