#include "osc/sigma_ops.hpp"

#include <algorithm>
#include <cmath>

#include "osc/errors.hpp"

namespace osc::sigma_ops {

namespace {

void check(const std::vector<double>& v) {
  if (static_cast<int>(v.size()) - 1 < kMinIntervals) {
    throw InputError("fbp_inversion", "sigma grid too coarse (needs at least 9 intervals)");
  }
}

// Weights of the 4-point Lagrange basis at local coordinate u in [0, 3].
void cubic_basis(double u, double w[4]) {
  w[0] = -(u - 1) * (u - 2) * (u - 3) / 6.0;
  w[1] = u * (u - 2) * (u - 3) / 2.0;
  w[2] = -u * (u - 1) * (u - 3) / 2.0;
  w[3] = u * (u - 1) * (u - 2) / 6.0;
}

void cubic_basis_derivative(double u, double w[4]) {
  w[0] = -(3 * u * u - 12 * u + 11) / 6.0;
  w[1] = (3 * u * u - 10 * u + 6) / 2.0;
  w[2] = -(3 * u * u - 8 * u + 3) / 2.0;
  w[3] = (3 * u * u - 6 * u + 2) / 6.0;
}

}  // namespace

double extrapolate_end(const std::vector<double>& v, bool at_end) {
  const std::size_t n = v.size() - 1;
  if (at_end) return 4.0 * v[n - 1] - 6.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4];
  return 4.0 * v[1] - 6.0 * v[2] + 4.0 * v[3] - v[4];
}

std::vector<double> divide_by_radius(const std::vector<double>& rf, double h) {
  check(rf);
  std::vector<double> g(rf.size());
  for (std::size_t i = 1; i < rf.size(); ++i) g[i] = rf[i] / std::sqrt(i * h);
  // Quadratic through g_1, g_2, g_3; g = Rf/r is smooth in sigma at 0.
  g[0] = 3.0 * g[1] - 3.0 * g[2] + g[3];
  return g;
}

std::vector<double> d1(const std::vector<double>& v, double h) {
  check(v);
  const std::size_t n = v.size() - 1;
  std::vector<double> d(v.size());
  const double s = 1.0 / (12.0 * h);
  d[0] = s * (-25 * v[0] + 48 * v[1] - 36 * v[2] + 16 * v[3] - 3 * v[4]);
  d[1] = s * (-3 * v[0] - 10 * v[1] + 18 * v[2] - 6 * v[3] + v[4]);
  for (std::size_t i = 2; i + 2 <= n; ++i) d[i] = s * (v[i - 2] - 8 * v[i - 1] + 8 * v[i + 1] - v[i + 2]);
  d[n - 1] = -s * (-3 * v[n] - 10 * v[n - 1] + 18 * v[n - 2] - 6 * v[n - 3] + v[n - 4]);
  d[n] = -s * (-25 * v[n] + 48 * v[n - 1] - 36 * v[n - 2] + 16 * v[n - 3] - 3 * v[n - 4]);
  return d;
}

std::vector<double> d2(const std::vector<double>& v, double h) {
  check(v);
  const std::size_t n = v.size() - 1;
  std::vector<double> d(v.size());
  const double s = 1.0 / (12.0 * h * h);
  d[0] = s * (45 * v[0] - 154 * v[1] + 214 * v[2] - 156 * v[3] + 61 * v[4] - 10 * v[5]);
  d[1] = s * (10 * v[0] - 15 * v[1] - 4 * v[2] + 14 * v[3] - 6 * v[4] + v[5]);
  for (std::size_t i = 2; i + 2 <= n; ++i) {
    d[i] = s * (-v[i - 2] + 16 * v[i - 1] - 30 * v[i] + 16 * v[i + 1] - v[i + 2]);
  }
  d[n - 1] = s * (10 * v[n] - 15 * v[n - 1] - 4 * v[n - 2] + 14 * v[n - 3] - 6 * v[n - 4] + v[n - 5]);
  d[n] = s * (45 * v[n] - 154 * v[n - 1] + 214 * v[n - 2] - 156 * v[n - 3] + 61 * v[n - 4] - 10 * v[n - 5]);
  return d;
}

double interpolate(const std::vector<double>& v, double h, double x, int order) {
  const int n = static_cast<int>(v.size()) - 1;
  const double u = x / h;
  if (u < 0.0 || u > n) return 0.0;
  if (order == 1) {
    const int i = std::min(static_cast<int>(u), n - 1);
    const double f = u - i;
    return (1.0 - f) * v[i] + f * v[i + 1];
  }
  const int i0 = std::clamp(static_cast<int>(std::floor(u)) - 1, 0, n - 3);
  double w[4];
  cubic_basis(u - i0, w);
  return w[0] * v[i0] + w[1] * v[i0 + 1] + w[2] * v[i0 + 2] + w[3] * v[i0 + 3];
}

double interpolate_derivative(const std::vector<double>& v, double h, double x) {
  const int n = static_cast<int>(v.size()) - 1;
  const double u = std::clamp(x / h, 0.0, static_cast<double>(n));
  const int i0 = std::clamp(static_cast<int>(std::floor(u)) - 1, 0, n - 3);
  double w[4];
  cubic_basis_derivative(u - i0, w);
  return (w[0] * v[i0] + w[1] * v[i0 + 1] + w[2] * v[i0 + 2] + w[3] * v[i0 + 3]) / h;
}

}  // namespace osc::sigma_ops
