#include "quadric/random.hpp"

#include <cmath>
#include <numbers>

namespace quadric {

std::uint64_t CounterRng::next_u64() {
  std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

Mat3 random_rotation(CounterRng& rng) {
  const double u1 = rng.uniform(), u2 = rng.uniform(), u3 = rng.uniform();
  const double s1 = std::sqrt(1.0 - u1), s2 = std::sqrt(u1);
  const double w = s1 * std::sin(2.0 * std::numbers::pi * u2);
  const double x = s1 * std::cos(2.0 * std::numbers::pi * u2);
  const double y = s2 * std::sin(2.0 * std::numbers::pi * u3);
  const double z = s2 * std::cos(2.0 * std::numbers::pi * u3);
  Mat3 r;
  r.m = {{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
          {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
          {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
  return r;
}

}  // namespace quadric
