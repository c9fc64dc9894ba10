#pragma once

#include <vector>

// Discrete operators on columns sampled uniformly in sigma = r^2,
// sigma_i = i*h for i = 0..N. Shared by the filtered back projection and the
// time-reversal pipeline so that both see identical filters.
namespace osc::sigma_ops {

// Minimum number of intervals for the fourth-order stencils.
inline constexpr int kMinIntervals = 9;

// Cubic extrapolation of v[0] from v[1..3] (also v[N] from v[N-1..N-3] when
// `at_end` is set).
double extrapolate_end(const std::vector<double>& v, bool at_end = false);

// g_i = Rf_i / sqrt(sigma_i); g_0 from one-sided extrapolation.
std::vector<double> divide_by_radius(const std::vector<double>& rf, double h);

// Fourth-order first and second derivatives with one-sided boundary stencils.
std::vector<double> d1(const std::vector<double>& v, double h);
std::vector<double> d2(const std::vector<double>& v, double h);

// Lagrange interpolation of order 1 or 3 at sigma = x. Outside [0, N*h] the
// column is treated as zero.
double interpolate(const std::vector<double>& v, double h, double x, int order = 3);
// Derivative of the cubic interpolant.
double interpolate_derivative(const std::vector<double>& v, double h, double x);

}  // namespace osc::sigma_ops
