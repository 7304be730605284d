// Counter-based deterministic random numbers.
//
// Every variate is a pure function of (seed, counter, slot), so sample i never
// depends on how many samples were drawn before it. Growing a sample set keeps
// its prefix bit-identical, and evaluation order (or thread partitioning)
// cannot change results.
#pragma once

#include <cmath>
#include <cstdint>

namespace subgrad {

/// SplitMix64 finalizer; full-period mixing of a 64-bit counter.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t raw(std::uint64_t counter, std::uint64_t slot) const {
    // Three rounds decorrelate (seed, counter, slot) triples.
    return mix64(mix64(mix64(seed_ ^ 0x5851f42d4c957f2dULL) ^ counter) ^ slot);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01(std::uint64_t counter, std::uint64_t slot) const {
    return static_cast<double>(raw(counter, slot) >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; consumes slots (2*slot_pair, 2*slot_pair+1).
  double gaussian(std::uint64_t counter, std::uint64_t slot_pair) const {
    double u1 = uniform01(counter, 2 * slot_pair);
    const double u2 = uniform01(counter, 2 * slot_pair + 1);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace subgrad
