#pragma once

#include <cmath>
#include <cstdint>

#include "dynlforge/matrix.hpp"

namespace dynlforge {

/// 64-bit splitmix generator; the stream is fully determined by the seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal by Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  VecD normal_vector(int n) {
    VecD v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }
  /// Random skew matrix with standard normal upper entries.
  MatD skew(int n) {
    MatD m = MatD::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        m(i, j) = normal();
        m(j, i) = -m(i, j);
      }
    return m;
  }
  /// Uniform point in the closed ball of the given radius.
  VecD ball(int n, double radius) {
    VecD v = normal_vector(n);
    const double nv = v.norm();
    if (nv == 0.0) return VecD::Zero(n);
    return v * (radius * std::pow(uniform(), 1.0 / n) / nv);
  }

 private:
  std::uint64_t state_;
};

}  // namespace dynlforge
