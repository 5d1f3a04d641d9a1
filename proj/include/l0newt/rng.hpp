#pragma once

#include <cstdint>
#include <initializer_list>

namespace l0newt {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// Order-dependent combination of several 64-bit words into one seed.
std::uint64_t hash_seed(std::initializer_list<std::uint64_t> words);

/// Counter-based generator: the i-th 64-bit output is mix64(key + (i + 1) * golden),
/// i.e. the SplitMix64 sequence started at the mixed seed. Normals come from the
/// Box-Muller transform on pairs of 53-bit uniforms, both values of a pair being
/// used in order (cos branch first).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix64(seed)) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal.
  double normal();
  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace l0newt
