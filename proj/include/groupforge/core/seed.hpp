// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace gf {

// splitmix64 finalizer (Steele, Lea, Flood). Bijective on 64-bit words.
constexpr uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// Derived stream seed. Injective in `stream` for a fixed `base`: the affine
// map stream -> base + gamma*(stream+1) is a bijection mod 2^64 (gamma odd)
// and mix64 is bijective.
constexpr uint64_t derive_seed(uint64_t base, uint64_t stream) {
  return mix64(base + kGoldenGamma * (stream + 1));
}

// Identifies one sample of one run. The per-sample seed is
// mix64(globalSeed + gamma*(sampleIndex+1)); identical inputs give identical
// seeds on every platform.
struct SeedSpec {
  uint64_t globalSeed = 0;
  uint64_t sampleIndex = 0;

  constexpr uint64_t mixed() const { return derive_seed(globalSeed, sampleIndex); }

  // Derived sub-seed for a named purpose (augmentation, brush, retries, ...).
  constexpr SeedSpec sub(uint64_t stream) const { return SeedSpec{mixed(), stream}; }
};

// splitmix64 stream. Every draw below is fully specified (no reliance on
// libstdc++ distribution internals) so recorded draws can be replayed by an
// independent harness:
//   next_u64: state += 0x9E3779B97F4A7C15; return mix64(state)
//   next_double: (next_u64() >> 11) * 2^-53
//   below(n): Lemire multiply-shift with rejection
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  explicit Rng(SeedSpec seed) : state_(seed.mixed()) {}

  uint64_t next_u64() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53 random mantissa bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Unbiased draw in [0, n). n must be nonzero.
  uint64_t below(uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto lo = static_cast<uint64_t>(m);
    if (lo < n) {
      const uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo) + 1));
  }

  bool bernoulli(double p) { return next_double() < p; }

  double sign() { return (next_u64() & 1u) ? 1.0 : -1.0; }

 private:
  uint64_t state_;
};

}  // namespace gf
