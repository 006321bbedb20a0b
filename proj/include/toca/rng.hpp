#pragma once

#include <cstdint>

namespace toca {

/// SplitMix64. Small, fast, and fully specified, so seeded runs are
/// reproducible across platforms and stdlib implementations (the standard
/// distributions are not).
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() { return (next() >> 11) * 0x1.0p-53; }

  static uint64_t mix(uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

 private:
  uint64_t state_;
};

/// Stable substream seed for (master_seed, index). Part of the determinism
/// contract: prompt attempt k always sees the same stream, regardless of
/// worker count or scheduling.
inline uint64_t derive_stream(uint64_t master_seed, uint64_t index) {
  return SplitMix64::mix(master_seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

}  // namespace toca
