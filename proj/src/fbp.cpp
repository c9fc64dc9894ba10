#include "osc/fbp.hpp"

#include <cmath>
#include <numbers>

#include "osc/errors.hpp"
#include "osc/sigma_ops.hpp"

namespace osc {

namespace {

constexpr const char* kModule = "fbp_inversion";
constexpr double kPi = std::numbers::pi;

// Trapezoid sum of phi_0..phi_N with the first Euler-Maclaurin correction.
double corrected_trapezoid(const std::vector<double>& phi, double h) {
  const std::size_t n = phi.size() - 1;
  double s = 0.5 * (phi[0] + phi[n]);
  for (std::size_t l = 1; l < n; ++l) s += phi[l];
  const double dp0 = (-3.0 * phi[0] + 4.0 * phi[1] - phi[2]) / (2.0 * h);
  const double dpn = (3.0 * phi[n] - 4.0 * phi[n - 1] + phi[n - 2]) / (2.0 * h);
  return h * s - h * h / 12.0 * (dpn - dp0);
}

// Regular integral of col/(s2 - sigma) for s2 outside [0, N h].
double regular_transform(std::span<const double> col, double h, double s2) {
  const std::size_t n = col.size() - 1;
  std::vector<double> phi(col.size());
  for (std::size_t l = 0; l <= n; ++l) phi[l] = col[l] / (s2 - l * h);
  return corrected_trapezoid(phi, h);
}

}  // namespace

void ReconstructionConfig::validate() const {
  if (normalization < 0.0 || !std::isfinite(normalization)) {
    throw InputError(kModule, "normalization must be a non-negative finite number");
  }
  if (interpolation != 1 && interpolation != 3) throw InputError(kModule, "interpolation order must be 1 or 3");
}

double default_normalization(int dim) {
  if (dim == 3) return 1.0 / (4.0 * kPi * kPi);
  if (dim == 2) return 1.0 / (2.0 * kPi * kPi);
  throw InputError(kModule, "dimension must be 2 or 3");
}

std::vector<double> radial_filter_column(const std::vector<double>& rf, double d_sigma, int dim) {
  const auto g = sigma_ops::divide_by_radius(rf, d_sigma);
  auto h = dim == 2 ? sigma_ops::d1(g, d_sigma) : sigma_ops::d2(g, d_sigma);
  const double scale = dim == 2 ? 2.0 : 4.0;
  for (double& v : h) v *= scale;
  // The sigma -> 0 value comes from the same extrapolation the time-reversal
  // pipeline applies to v / t, keeping the two reconstructions identical.
  h[0] = sigma_ops::extrapolate_end(h);
  return h;
}

Sinogram radial_filter(const Sinogram& s) {
  if (s.n_sigma < sigma_ops::kMinIntervals) throw InputError(kModule, "sigma grid too coarse (needs N_sigma >= 9)");
  Sinogram out = s;
  const auto n = static_cast<std::int64_t>(s.columns.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < n; ++c) {
    auto& col = out.columns[static_cast<std::size_t>(c)];
    col.values = radial_filter_column(col.values, s.d_sigma, s.dim);
  }
  return out;
}

double pv_transform(std::span<const double> col, double h, double s2, double epsilon) {
  const int n = static_cast<int>(col.size()) - 1;
  if (n < sigma_ops::kMinIntervals) throw InputError(kModule, "sigma grid too coarse (needs N_sigma >= 9)");
  const double top = n * h;
  if (s2 < epsilon || s2 > top - epsilon) {
    throw NumericalError(kModule, "principal value evaluated within pv_epsilon of the sigma range boundary");
  }
  const std::vector<double> v(col.begin(), col.end());
  const double hs = sigma_ops::interpolate(v, h, s2);
  std::vector<double> phi(v.size());
  for (int l = 0; l <= n; ++l) {
    const double gap = s2 - l * h;
    phi[l] = std::abs(gap) < 1e-6 * h ? -sigma_ops::interpolate_derivative(v, h, s2) : (v[l] - hs) / gap;
  }
  return corrected_trapezoid(phi, h) + hs * std::log(s2 / (top - s2));
}

std::vector<double> pv_nodes(const std::vector<double>& col, double h) {
  const int n = static_cast<int>(col.size()) - 1;
  if (n < sigma_ops::kMinIntervals) throw InputError(kModule, "sigma grid too coarse (needs N_sigma >= 9)");
  const auto dcol = sigma_ops::d1(col, h);
  std::vector<double> out(col.size());
  std::vector<double> phi(col.size());
  for (int i = 1; i < n; ++i) {
    for (int l = 0; l <= n; ++l) phi[l] = l == i ? -dcol[i] : (col[l] - col[i]) / ((i - l) * h);
    out[i] = corrected_trapezoid(phi, h) + col[i] * std::log(static_cast<double>(i) / (n - i));
  }
  out[0] = sigma_ops::extrapolate_end(out);
  out[n] = sigma_ops::extrapolate_end(out, true);
  return out;
}

ScalarGrid reconstruct(const Sinogram& s, const Polynomial& p, const Vec3& a, const GridSpec& grid,
                       const ReconstructionConfig& cfg) {
  cfg.validate();
  grid.validate();
  if (s.dim != p.dim() || grid.dim != p.dim()) throw InputError(kModule, "sinogram, polynomial and grid dimensions differ");
  if (s.n_sigma < sigma_ops::kMinIntervals) throw InputError(kModule, "sigma grid too coarse (needs N_sigma >= 9)");

  const double c = cfg.normalization > 0.0 ? cfg.normalization : default_normalization(s.dim);
  const double h = s.d_sigma;
  const double top = s.sigma_max();

  // Per column: the filtered data (n = 3) or its principal-value transform at
  // every node (n = 2), ready for interpolation at sigma = |x - xi|^2.
  std::vector<std::vector<double>> table(s.columns.size());
  std::vector<std::vector<double>> filtered(s.columns.size());
  const auto ncol = static_cast<std::int64_t>(s.columns.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t k = 0; k < ncol; ++k) {
    const auto i = static_cast<std::size_t>(k);
    filtered[i] = radial_filter_column(s.columns[i].values, h, s.dim);
    table[i] = s.dim == 2 ? pv_nodes(filtered[i], h) : filtered[i];
  }
  std::vector<Vec3> centers;
  std::vector<double> mass;
  for (const auto& col : s.columns) {
    centers.push_back(col.center(a));
    mass.push_back(col.weight * col.leray);
  }
  // Even dimensions carry the opposite sign, fixed by reconstructing a known phantom.
  const double prefactor = s.dim == 2 ? -c : c;

  ScalarGrid out(grid);
  const auto npix = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t ix = 0; ix < npix; ++ix) {
    const auto pix = static_cast<std::size_t>(ix);
    const Vec3 x = grid.center(pix);
    const double px = p.value(x);
    if (px == 0.0 || !inside_inner_oval(p, a, x)) {
      out.flags[pix] = 1;
      continue;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < centers.size(); ++k) {
      const double s2 = (x - centers[k]).squaredNorm();
      double v;
      if (s2 <= top) {
        v = sigma_ops::interpolate(table[k], h, s2, cfg.interpolation);
      } else {
        v = s.dim == 2 ? regular_transform(filtered[k], h, s2) : 0.0;
      }
      sum += mass[k] * v;
    }
    out.values[pix] = prefactor * px * sum;
  }
  return out;
}

}  // namespace osc
