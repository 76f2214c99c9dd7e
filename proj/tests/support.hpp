#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace testsupport {

// Deterministic across platforms: mt19937_64 output mapped to doubles via
// ldexp, no distribution objects involved.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  double sign() { return (eng_() & 1) ? 1.0 : -1.0; }

  // Log-uniform magnitude in [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) {
    return lo * std::exp(uniform01() * std::log(hi / lo));
  }

  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace testsupport
