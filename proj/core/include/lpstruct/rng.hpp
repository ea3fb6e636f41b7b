#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lpstruct {

std::uint64_t splitmix64(std::uint64_t x) noexcept;
// FNV-1a over bytes; used for config hashes and stream salts.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

// Seeded generator with a platform-independent uniform mapping.
//
// Streams are derived counter-style from (seed, salt, index) so that row i of a
// dataset draws the same numbers whether rows are produced serially or in
// parallel.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t salt, std::uint64_t index) {
    return Rng(splitmix64(splitmix64(seed ^ 0x9e3779b97f4a7c15ULL) ^ splitmix64(salt) ^
                          splitmix64(index + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  bool bernoulli(double p) { return unit() < p; }
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace lpstruct
