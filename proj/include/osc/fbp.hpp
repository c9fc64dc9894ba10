#pragma once

#include <span>
#include <vector>

#include "osc/forward.hpp"
#include "osc/grid.hpp"

namespace osc {

struct ReconstructionConfig {
  double normalization = 0.0;  // c_n; zero selects default_normalization(n)
  double pv_epsilon = -1.0;    // negative selects 2 * d_sigma
  int interpolation = 3;       // 1 or 3

  void validate() const;
};

// c_3 = 1/(4 pi^2) and c_2 = 1/(2 pi^2).
double default_normalization(int dim);

// h = (2 d/dsigma)^{n-1} (Rf / r) for every column.
Sinogram radial_filter(const Sinogram& s);
std::vector<double> radial_filter_column(const std::vector<double>& rf, double d_sigma, int dim);

// Principal value of int_0^{N h} col(sigma) / (s2 - sigma) dsigma for a
// column sampled at sigma_i = i h.
double pv_transform(std::span<const double> col, double h, double s2, double epsilon);
// The same transform evaluated at every node; the two end values are
// extrapolated from the interior.
std::vector<double> pv_nodes(const std::vector<double>& col, double h);

ScalarGrid reconstruct(const Sinogram& s, const Polynomial& p, const Vec3& a, const GridSpec& grid,
                       const ReconstructionConfig& cfg = {});

}  // namespace osc
