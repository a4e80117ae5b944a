#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace regmcts {

// SplitMix64 step; used both as a seed mixer and to derive independent
// stream seeds from a master seed plus key fields.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds a sequence of integers into one 64-bit seed. Order-sensitive.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t field) {
  return splitmix64(seed ^ splitmix64(field));
}

template <typename... Fields>
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t field,
                                 Fields... rest) {
  return mix_seed(mix_seed(seed, field), static_cast<std::uint64_t>(rest)...);
}

// Seeded random stream. The engine is std::mt19937_64 (bit-exact across
// platforms); the uniform/gaussian transforms are implemented here rather
// than with std::*_distribution, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log() argument.
  double next_double_open() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform index in [0, n). n must be positive.
  int next_index(int n) {
    int i = static_cast<int>(next_double() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  // Box-Muller without caching: two uniforms per draw, deterministic stream.
  double next_gaussian(double mean, double stddev) {
    const double u1 = next_double_open();
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 6.283185307179586476925286766559;
    return mean + stddev * radius * std::cos(two_pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace regmcts
