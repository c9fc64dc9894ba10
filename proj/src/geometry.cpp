#include "osc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "osc/errors.hpp"

namespace osc {

namespace {

constexpr const char* kModule = "oscillatory_geometry";
constexpr double kMaxDegenerateFraction = 0.05;

void check_off_zero_set(const Polynomial& p, const Vec3& a, const char* module) {
  const double v = p.value(a);
  if (std::abs(v) <= 1e-14 * std::max(1.0, p.magnitude(a))) {
    throw InputError(module, "base point on Z (p(a) = 0)");
  }
}

}  // namespace

double leray_weight(double t, double dpdt, int dim) {
  const double at = std::abs(t);
  const double mag = dim == 2 ? at : at * at;
  return (t < 0 ? -mag : mag) / dpdt;
}

RayRootProfile ray_roots(const Polynomial& p, const Vec3& a, const Vec3& omega, double tol) {
  check_off_zero_set(p, a, kModule);
  const int m = p.degree();
  RayRootProfile prof;
  prof.base = a;
  prof.direction = omega;
  prof.mu = m / 2;

  const UnivariatePoly u = restrict_to_line(p, a, omega);
  if (u.degenerate) {
    prof.status = RayStatus::degree_drop;
    return prof;
  }
  const auto found = real_roots(u, tol);
  int count = 0;
  bool multiple = false;
  for (const auto& r : found) {
    count += r.multiplicity;
    multiple = multiple || r.multiplicity > 1;
    prof.roots.push_back(r.value);
  }
  for (std::size_t i = 1; i < prof.roots.size(); ++i) {
    const double gap = prof.roots[i] - prof.roots[i - 1];
    if (gap < 1e-7 * std::max(1.0, std::abs(prof.roots[i]))) multiple = true;
  }
  for (double t : prof.roots) {
    prof.derivs.push_back(u.value_and_derivative(t).second);
    if (t < 0) ++prof.num_negative;
  }
  if (count < m) {
    prof.status = RayStatus::missing_roots;
  } else if (multiple) {
    prof.status = RayStatus::coalesced;
  }
  return prof;
}

OscillationVerdict is_oscillatory_at(const Polynomial& p, const Vec3& a, const QuadratureRule& rule) {
  check_off_zero_set(p, a, kModule);
  if (rule.dim != p.dim()) throw InputError(kModule, "quadrature rule dimension differs from the polynomial");
  OscillationVerdict verdict;
  double degenerate = 0.0;
  const double total = rule.total_weight();
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const auto prof = ray_roots(p, a, rule.nodes[j]);
    if (prof.status == RayStatus::missing_roots) {
      verdict.kind = OscillationVerdict::Kind::counterexample;
      verdict.witness = rule.nodes[j];
      return verdict;
    }
    if (prof.degenerate()) degenerate += rule.weights[j];
  }
  verdict.degenerate_fraction = degenerate / total;
  if (verdict.degenerate_fraction >= kMaxDegenerateFraction) verdict.kind = OscillationVerdict::Kind::inconclusive;
  return verdict;
}

CavityMask cavity_mask(const Polynomial& p, const GridSpec& box, const QuadratureRule& rule) {
  box.validate();
  if (box.dim != p.dim()) throw InputError(kModule, "grid dimension differs from the polynomial");
  CavityMask mask{ScalarGrid(box), static_cast<int>(rule.size())};
  const auto n = static_cast<std::int64_t>(box.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    const Vec3 x = box.center(static_cast<std::size_t>(i));
    const double v = p.value(x);
    if (std::abs(v) <= 1e-14 * std::max(1.0, p.magnitude(x))) continue;
    if (is_oscillatory_at(p, x, rule).oscillatory()) mask.grid.values[static_cast<std::size_t>(i)] = 1.0;
  }
  return mask;
}

double CavityMask::convexity_score(int pairs, unsigned seed) const {
  std::vector<std::size_t> marked;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.values[i] > 0.5) marked.push_back(i);
  }
  if (marked.size() < 2 || pairs <= 0) return 1.0;
  const auto& s = grid.spec;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, marked.size() - 1);
  int good = 0;
  for (int n = 0; n < pairs; ++n) {
    const Vec3 mid = 0.5 * (s.center(marked[pick(rng)]) + s.center(marked[pick(rng)]));
    std::array<int, 3> c{0, 0, 0};
    for (int a = 0; a < s.dim; ++a) {
      c[a] = static_cast<int>(std::floor((mid[a] - s.lo[a]) / s.spacing(a)));
    }
    bool hit = false;
    const int kz = s.dim == 3 ? 1 : 0;
    for (int dk = -kz; dk <= kz && !hit; ++dk) {
      for (int dj = -1; dj <= 1 && !hit; ++dj) {
        for (int di = -1; di <= 1 && !hit; ++di) {
          const int i = c[0] + di;
          const int j = c[1] + dj;
          const int k = c[2] + dk;
          if (i < 0 || j < 0 || k < 0 || i >= s.res[0] || j >= s.res[1] || k >= s.res[2]) continue;
          hit = grid.values[s.flat_index(i, j, k)] > 0.5;
        }
      }
    }
    good += hit ? 1 : 0;
  }
  return static_cast<double>(good) / pairs;
}

bool inside_inner_oval(const Polynomial& p, const Vec3& a, const Vec3& x) {
  const Vec3 d = x - a;
  const double r = d.norm();
  if (r == 0.0) return true;
  const auto u = restrict_to_line(p, a, d / r);
  double first = INFINITY;
  for (const auto& root : real_roots(u)) {
    if (root.value > 0) first = std::min(first, root.value);
  }
  return r < first;
}

OvalSet extract_ovals(const Polynomial& p, const Vec3& a, const QuadratureRule& rule) {
  if (!is_oscillatory_at(p, a, rule).oscillatory()) {
    throw InputError(kModule, "extract_ovals needs a hyperbolic base point");
  }
  const int mu = p.degree() / 2;
  OvalSet out;
  out.clouds.resize(static_cast<std::size_t>(mu));
  for (const auto& w : rule.nodes) {
    const auto prof = ray_roots(p, a, w);
    if (prof.degenerate() || !prof.balanced()) {
      ++out.skipped_directions;
      continue;
    }
    for (int k = 1; k <= mu; ++k) {
      out.clouds[k - 1].push_back(prof.point(k));
      out.clouds[k - 1].push_back(prof.point(-k));
      if (k < mu) {
        const bool pos = prof.t(k) < prof.t(k + 1);
        const bool neg = std::abs(prof.t(-k)) < std::abs(prof.t(-k - 1));
        out.nested = out.nested && pos && neg;
      }
    }
  }
  return out;
}

void write_ovals_csv(const OvalSet& ovals, int dim, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError(kModule, "cannot open " + path.string());
  out.precision(17);
  out << (dim == 2 ? "x,y,oval_index\n" : "x,y,z,oval_index\n");
  for (std::size_t k = 0; k < ovals.clouds.size(); ++k) {
    for (const auto& x : ovals.clouds[k]) {
      for (int a = 0; a < dim; ++a) out << x[a] << ',';
      out << k + 1 << '\n';
    }
  }
}

RayBundle trace_rays(const Polynomial& p, const Vec3& a, const QuadratureRule& rule, const char* module) {
  check_off_zero_set(p, a, module);
  if (rule.dim != p.dim()) throw InputError(module, "quadrature rule dimension differs from the polynomial");
  RayBundle b;
  double kept = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    total += rule.weights[j];
    auto prof = ray_roots(p, a, rule.nodes[j]);
    if (prof.status == RayStatus::missing_roots) {
      throw NumericalError(module, "Z is not oscillatory with respect to the base point (a sampled line misses roots)");
    }
    if (prof.degenerate()) {
      ++b.skipped;
      continue;
    }
    kept += rule.weights[j];
    b.weights.push_back(rule.weights[j]);
    b.indices.push_back(static_cast<int>(j));
    b.rays.push_back(std::move(prof));
  }
  if (kept < (1.0 - kMaxDegenerateFraction) * total) {
    throw NumericalError(module, "more than 5% of the sampled directions are degenerate");
  }
  for (double& w : b.weights) w *= total / kept;
  return b;
}

double leray_integrate(const Polynomial& p, const Vec3& a, const PointFunction& g, const QuadratureRule& rule) {
  const auto bundle = trace_rays(p, a, rule, kModule);
  double sum = 0.0;
  for (std::size_t j = 0; j < bundle.rays.size(); ++j) {
    const auto& ray = bundle.rays[j];
    double s = 0.0;
    for (std::size_t i = 0; i < ray.roots.size(); ++i) {
      const Vec3 xi = a + ray.roots[i] * ray.direction;
      s += g(xi) * leray_weight(ray.roots[i], ray.derivs[i], p.dim());
    }
    sum += bundle.weights[j] * s;
  }
  return sum;
}

double residue_identity_defect(const Polynomial& p, const Vec3& a, const Vec3& omega) {
  const auto prof = ray_roots(p, a, omega);
  if (prof.degenerate()) throw NumericalError(kModule, "residue identity on a degenerate direction");
  double s = 0.0;
  for (std::size_t i = 0; i < prof.roots.size(); ++i) s += 1.0 / (prof.roots[i] * prof.derivs[i]);
  return std::abs(s + 1.0 / p.value(a));
}

}  // namespace osc
