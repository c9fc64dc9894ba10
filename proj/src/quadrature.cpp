#include "osc/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "osc/errors.hpp"

namespace osc {

namespace {
constexpr const char* kModule = "oscillatory_geometry";
constexpr double kPi = std::numbers::pi;
}  // namespace

GaussLegendre gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw InputError(kModule, "Gauss-Legendre needs at least one node");
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[i] = mid - half * x;
    gl.nodes[n - 1 - i] = mid + half * x;
    gl.weights[i] = gl.weights[n - 1 - i] = half * w;
  }
  return gl;
}

double sphere_area(int dim) { return dim == 2 ? 2.0 * kPi : 4.0 * kPi; }

int QuadratureRule::order() const {
  if (dim == 2) return 2 * n_azimuth - 1;
  return std::min(2 * n_polar - 1, n_azimuth - 1);
}

double QuadratureRule::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

QuadratureRule QuadratureRule::half_circle(int n_angles) {
  if (n_angles < 2) throw InputError(kModule, "half-circle rule needs at least 2 angles");
  QuadratureRule r;
  r.dim = 2;
  r.n_azimuth = n_angles;
  for (int j = 0; j < n_angles; ++j) {
    const double th = (j + 0.5) * kPi / n_angles;
    r.nodes.emplace_back(std::cos(th), std::sin(th), 0.0);
    r.weights.push_back(kPi / n_angles);
  }
  return r;
}

QuadratureRule QuadratureRule::hemisphere(int n_polar, int n_azimuth) {
  if (n_polar < 1 || n_azimuth < 3) throw InputError(kModule, "hemisphere rule too small");
  QuadratureRule r;
  r.dim = 3;
  r.n_polar = n_polar;
  r.n_azimuth = n_azimuth;
  const auto gl = gauss_legendre(n_polar, 0.0, 1.0);
  for (int i = 0; i < n_polar; ++i) {
    const double z = gl.nodes[i];
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    // Stagger phi between rings so no node sits on a coordinate plane.
    const double offset = (i % 2 == 0 ? 0.25 : 0.75) * 2.0 * kPi / n_azimuth;
    for (int k = 0; k < n_azimuth; ++k) {
      const double phi = offset + 2.0 * kPi * k / n_azimuth;
      r.nodes.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
      r.weights.push_back(gl.weights[i] * 2.0 * kPi / n_azimuth);
    }
  }
  return r;
}

QuadratureRule QuadratureRule::with_directions(int dim, int directions) {
  if (dim == 2) return half_circle(directions);
  if (dim != 3) throw InputError(kModule, "dimension must be 2 or 3");
  // n_azimuth = 2 n_polar balances the two exactness orders.
  const int n_polar = std::max(2, static_cast<int>(std::lround(std::sqrt(directions / 2.0))));
  return hemisphere(n_polar, 2 * n_polar);
}

QuadratureRule QuadratureRule::coarsened() const {
  if (dim == 2) return half_circle(std::max(2, n_azimuth / 2));
  return hemisphere(std::max(1, n_polar / 2), std::max(3, n_azimuth / 2));
}

}  // namespace osc
