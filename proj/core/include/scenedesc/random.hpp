#pragma once

#include <cstdint>
#include <random>

namespace scenedesc {

// Seeded random source shared by planning, realization, and synthesis.
//
// Only the raw mt19937_64 stream is consumed; uniform doubles and bounded
// indices are derived with fixed arithmetic instead of std::*_distribution,
// whose output is implementation-defined. Identical seeds therefore give
// identical draws on every platform, which the golden-output tests rely on.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n); n must be positive.
  std::size_t next_index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace scenedesc
