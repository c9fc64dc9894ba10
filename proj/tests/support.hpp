#pragma once

// Small helpers shared by the test suites.

#include <random>

#include "osc/geometry.hpp"

namespace support {

using osc::Vec3;

inline Vec3 random_unit(std::mt19937& rng, int dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 w(n(rng), n(rng), dim == 3 ? n(rng) : 0.0);
  return w.normalized();
}

// Random point of the cavity around a: a step along a random ray, at most
// `frac` of the way to the first zero (capped at `cap` for unbounded cavities).
inline Vec3 random_cavity_point(const osc::Polynomial& p, const Vec3& a, std::mt19937& rng, double frac = 0.7,
                                double cap = 1.0) {
  std::uniform_real_distribution<double> u(0.0, frac);
  const Vec3 w = random_unit(rng, p.dim());
  double first = cap / frac;
  for (double t : osc::ray_roots(p, a, w).roots) {
    if (t > 0) first = std::min(first, t);
  }
  return a + u(rng) * first * w;
}

}  // namespace support
