#pragma once

#include <cstdint>

#include "quadric/core.hpp"

namespace quadric {

/// Counter-based generator: draw i is splitmix64(seed + i * golden gamma).
/// Copies are independent streams; there is no shared state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Uniformly distributed rotation (Shoemake's unit quaternion method).
Mat3 random_rotation(CounterRng& rng);

}  // namespace quadric
