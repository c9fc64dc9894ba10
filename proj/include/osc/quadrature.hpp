#pragma once

#include <vector>

#include "osc/poly.hpp"

namespace osc {

// Gauss-Legendre nodes and weights on [lo, hi].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

// Direction rule on a half-circle (n = 2) or a hemisphere (n = 3).
//
// Lines through a point are parametrized by one representative direction
// each, so every integral over Z in this code runs over these nodes with
// both root branches t > 0 and t < 0.
//
//   n = 2: theta_j = (j + 1/2) pi / N on [0, pi), weights pi / N. Exact for
//          even trigonometric polynomials of degree < 2N.
//   n = 3: Gauss-Legendre in z = cos(theta) on (0, 1] times a uniform grid
//          in phi. Exact for even polynomials of degree
//          <= min(2 n_polar - 1, n_azimuth - 1).
struct QuadratureRule {
  int dim = 2;
  int n_polar = 0;    // n = 3 only
  int n_azimuth = 0;  // number of angles (n = 2) or phi samples (n = 3)
  std::vector<Vec3> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  // Degree of even polynomials integrated exactly.
  int order() const;
  double total_weight() const;
  // Same family at half the resolution, for dyadic error estimates.
  QuadratureRule coarsened() const;

  static QuadratureRule half_circle(int n_angles);
  static QuadratureRule hemisphere(int n_polar, int n_azimuth);
  // Default rule with roughly `directions` nodes in dimension dim.
  static QuadratureRule with_directions(int dim, int directions);
};

// |S^{n-1}|.
double sphere_area(int dim);

}  // namespace osc
