#pragma once

#include "merit/core.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace merit {

/// mt19937_64 with explicit floating-point mappings, so sample streams are
/// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Vector uniform_vector(const Vector& lo, const Vector& hi) {
    Vector v(lo.size());
    for (Index j = 0; j < lo.size(); ++j) v[j] = uniform(lo[j], hi[j]);
    return v;
  }

  Vector normal_vector(Index n) {
    Vector v(n);
    for (Index j = 0; j < n; ++j) v[j] = normal();
    return v;
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace merit
