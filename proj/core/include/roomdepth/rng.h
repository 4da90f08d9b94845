#pragma once

#include <array>
#include <cstdint>

namespace roomdepth {

// SplitMix64, used to expand a 64-bit seed into generator state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 seeded with four SplitMix64 outputs. The output sequence
// is fully specified, so scenes are reproducible across implementations.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t next();
  // (next() >> 11) * 2^-53, uniform in [0, 1).
  double uniform();
  // lo + (hi - lo) * uniform().
  double uniform(double lo, double hi);
  // Uniform integer in [lo, hi] by rejection (no modulo bias).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::array<std::uint64_t, 4> s_;
};

}  // namespace roomdepth
