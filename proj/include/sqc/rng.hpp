#pragma once

// Counter-based pseudo-random source. Output depends only on (seed, counter),
// so draws are reproducible bit-for-bit regardless of call interleaving and
// streams can be split by offsetting the counter.

#include <cstdint>

namespace sqc {

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t counter = 0)
      : seed_(seed), counter_(counter) {}

  std::uint64_t next_u64() { return mix(seed_, counter_++); }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  std::uint64_t counter() const { return counter_; }

 private:
  // SplitMix64 finalizer applied to seed ^ golden-ratio-spread counter.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + counter * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace sqc
