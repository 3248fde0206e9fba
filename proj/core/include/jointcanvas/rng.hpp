#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace jointcanvas {

// FNV-1a 64-bit hash; used for content fingerprints (palette, rig, files).
inline std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

// splitmix64 step; the standard finalizer, used for seed derivation so that
// nearby seeds produce unrelated streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Mixes an ordered list of values into one 64-bit seed. Order matters:
// mix_seed(a, b) != mix_seed(b, a) in general.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t state = 0x853C49E6748FEA9BULL;
  for (std::uint64_t p : parts) {
    state ^= p + 0x9E3779B97F4A7C15ULL + (state << 6) + (state >> 2);
    (void)splitmix64(state);
  }
  return splitmix64(state);
}

// Deterministic RNG wrapper. Every random draw in the library flows through
// an explicitly seeded instance of this type; nothing reads entropy from the
// environment.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal(double stddev) {
    return std::normal_distribution<double>(0.0, stddev)(engine_);
  }
  // Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace jointcanvas
