#pragma once
// Deterministic random numbers. splitmix64 is fully pinned by the seed, so
// every platform and compiler reproduces the same streams (std:: distributions
// are implementation-defined and must not be used here).

#include <cmath>
#include <cstdint>

namespace boltzlab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // standard normal, polar Box-Muller without caching (keeps streams simple)
  double gaussian() {
    for (;;) {
      double u = 2.0 * uniform() - 1.0;
      double v = 2.0 * uniform() - 1.0;
      double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) {
        double m = std::sqrt(-2.0 * std::log(s) / s);
        return u * m;
      }
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace boltzlab
