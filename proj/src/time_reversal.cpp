#include "osc/time_reversal.hpp"

#include <cmath>
#include <numbers>

#include "osc/errors.hpp"
#include "osc/quadrature.hpp"
#include "osc/sigma_ops.hpp"

namespace osc {

namespace {

constexpr const char* kModule = "time_reversal";
constexpr double kPi = std::numbers::pi;

using Matrix = std::vector<std::vector<double>>;

// Adds  c * int_{w0}^{w1} P(sigma(w)) dw  to `row`, where P is the cubic
// interpolant of the column on the cell [l, l+1] and sigma(w) in grid units.
// Four Gauss points per cell integrate the degree-6 integrand exactly.
template <class SigmaOfW>
void add_cell(std::vector<double>& row, int n, int l, double w0, double w1, double c, SigmaOfW sigma_of_w) {
  static const GaussLegendre gl = gauss_legendre(4, 0.0, 1.0);
  const int i0 = std::clamp(l - 1, 0, n - 3);
  for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
    const double w = w0 + (w1 - w0) * gl.nodes[q];
    const double u = sigma_of_w(w) - i0;
    const double b[4] = {-(u - 1) * (u - 2) * (u - 3) / 6.0, u * (u - 2) * (u - 3) / 2.0,
                         -u * (u - 1) * (u - 3) / 2.0, u * (u - 1) * (u - 2) / 6.0};
    const double wt = c * (w1 - w0) * gl.weights[q];
    for (int k = 0; k < 4; ++k) row[static_cast<std::size_t>(i0 + k)] += wt * b[k];
  }
}

// A[i] . col = int_0^{tau_i} col(sigma) / sqrt(tau_i - sigma) dsigma, with
// sigma = tau_i - w^2 (grid units; the h^{1/2} scale is applied by the caller).
Matrix abel_forward(int n) {
  Matrix a(static_cast<std::size_t>(n) + 1, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
  for (int i = 1; i <= n; ++i) {
    for (int l = 0; l < i; ++l) {
      add_cell(a[i], n, l, std::sqrt(static_cast<double>(i - l - 1)), std::sqrt(static_cast<double>(i - l)), 2.0,
               [i](double w) { return i - w * w; });
    }
  }
  return a;
}

// B[i] . col = int_0^{sqrt(N - i)} col(sigma_i + w^2) dw in grid units.
Matrix abel_backward(int n) {
  Matrix b(static_cast<std::size_t>(n) + 1, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int l = i; l < n; ++l) {
      add_cell(b[i], n, l, std::sqrt(static_cast<double>(l - i)), std::sqrt(static_cast<double>(l + 1 - i)), 1.0,
               [i](double w) { return i + w * w; });
    }
  }
  return b;
}

std::vector<double> apply(const Matrix& m, const std::vector<double>& v, double scale) {
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) s += m[i][k] * v[k];
    out[i] = scale * s;
  }
  return out;
}

void check_grid(const Sinogram& s) {
  if (s.n_sigma < sigma_ops::kMinIntervals) throw InputError(kModule, "time grid too coarse (needs at least 9 intervals)");
}

}  // namespace

BoundaryTrace transmit(const Sinogram& s, double horizon) {
  check_grid(s);
  if (horizon == 0.0) horizon = s.dim == 2 ? 2.0 : 1.0;
  if (!(horizon >= 1.0)) throw InputError(kModule, "recording horizon must be at least the sinogram range");
  BoundaryTrace tr;
  tr.kind = BoundaryTrace::Kind::pressure;
  tr.data = s;
  tr.data.n_sigma = static_cast<int>(std::ceil(horizon * s.n_sigma - 1e-9));
  for (auto& col : tr.data.columns) col.values.resize(static_cast<std::size_t>(tr.data.n_sigma) + 1, 0.0);
  const double h = s.d_sigma;
  const Matrix a = s.dim == 2 ? abel_forward(tr.data.n_sigma) : Matrix{};
  const auto n = static_cast<std::int64_t>(s.columns.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < n; ++c) {
    auto& col = tr.data.columns[static_cast<std::size_t>(c)];
    auto g = sigma_ops::divide_by_radius(col.values, h);
    if (s.dim == 3) {
      for (double& v : g) v /= 4.0 * kPi;
      col.values = std::move(g);
    } else {
      col.values = apply(a, g, std::sqrt(h) / (4.0 * kPi));
    }
  }
  return tr;
}

BoundaryTrace filtrate(const BoundaryTrace& u) {
  if (u.kind != BoundaryTrace::Kind::pressure) throw InputError(kModule, "filtrate expects a pressure trace");
  check_grid(u.data);
  BoundaryTrace v;
  v.kind = BoundaryTrace::Kind::filtered;
  v.data = u.data;
  const double h = u.data.d_sigma;
  for (auto& col : v.data.columns) {
    auto dd = sigma_ops::d2(col.values, h);
    for (std::size_t i = 0; i < dd.size(); ++i) dd[i] *= -8.0 * std::sqrt(i * h);
    col.values = std::move(dd);
  }
  return v;
}

ScalarGrid retransmit(const BoundaryTrace& v, const Polynomial& p, const Vec3& a, const GridSpec& grid) {
  if (v.kind != BoundaryTrace::Kind::filtered) throw InputError(kModule, "retransmit expects a filtered trace");
  const auto& s = v.data;
  check_grid(s);
  grid.validate();
  if (s.dim != p.dim() || grid.dim != p.dim()) throw InputError(kModule, "trace, polynomial and grid dimensions differ");
  const double h = s.d_sigma;
  const double top = s.sigma_max();

  // Per column, the back-propagated value as a function of sigma = |x - xi|^2.
  std::vector<std::vector<double>> table(s.columns.size());
  const Matrix b = s.dim == 2 ? abel_backward(s.n_sigma) : Matrix{};
  const auto ncol = static_cast<std::int64_t>(s.columns.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < ncol; ++c) {
    const auto& vals = s.columns[static_cast<std::size_t>(c)].values;
    // V = v / t, with the t -> 0 limit extrapolated.
    std::vector<double> big_v(vals.size());
    for (std::size_t i = 1; i < vals.size(); ++i) big_v[i] = vals[i] / std::sqrt(i * h);
    big_v[0] = sigma_ops::extrapolate_end(big_v);
    auto& out = table[static_cast<std::size_t>(c)];
    if (s.dim == 3) {
      out = std::move(big_v);
      for (double& x : out) x /= 4.0 * kPi;
    } else {
      // g(s) = (1/2pi) int_s^T v(t) / sqrt(t^2 - s^2) dt = (1/2pi) int_0^{sqrt(T^2 - s^2)} V(s^2 + w^2) dw.
      out = apply(b, big_v, std::sqrt(h) / (2.0 * kPi));
    }
  }
  std::vector<Vec3> centers;
  std::vector<double> mass;
  for (const auto& col : s.columns) {
    centers.push_back(col.center(a));
    mass.push_back(col.weight * col.leray);
  }

  ScalarGrid g(grid);
  const auto npix = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t ix = 0; ix < npix; ++ix) {
    const auto pix = static_cast<std::size_t>(ix);
    const Vec3 x = grid.center(pix);
    if (p.value(x) == 0.0 || !inside_inner_oval(p, a, x)) {
      g.flags[pix] = 1;
      continue;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < centers.size(); ++k) {
      const double s2 = (x - centers[k]).squaredNorm();
      if (s2 <= top) sum += mass[k] * sigma_ops::interpolate(table[k], h, s2);
    }
    g.values[pix] = sum;
  }
  return g;
}

ScalarGrid tr_reconstruct(const Sinogram& s, const Polynomial& p, const Vec3& a, const GridSpec& grid,
                          double horizon) {
  ScalarGrid g = retransmit(filtrate(transmit(s, horizon)), p, a, grid);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.flags[i]) g.values[i] *= -2.0 * p.value(grid.center(i));
  }
  return g;
}

void write_trace_csv(const BoundaryTrace& tr, const std::filesystem::path& path) {
  write_sinogram_csv(tr.data, path, tr.kind_name());
}

BoundaryTrace read_trace_csv(const std::filesystem::path& path) {
  std::string kind;
  BoundaryTrace tr;
  tr.data = read_sinogram_csv(path, &kind);
  if (kind == "u") {
    tr.kind = BoundaryTrace::Kind::pressure;
  } else if (kind == "v") {
    tr.kind = BoundaryTrace::Kind::filtered;
  } else {
    throw InputError(kModule, path.string() + ": missing or unknown trace kind");
  }
  return tr;
}

}  // namespace osc
