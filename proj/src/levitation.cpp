#include "osc/levitation.hpp"

#include <algorithm>
#include <cmath>

#include "osc/errors.hpp"
#include "osc/separators.hpp"

namespace osc {

namespace {

constexpr const char* kModule = "levitation";

struct Accumulated {
  Vec3 field = Vec3::Zero();
  double mass = 0.0;
};

// Mass of |q| delta(p) and, when x is given, its field at x.
Accumulated accumulate_surface(const Polynomial& p, const Polynomial& q, const Vec3& anchor, const Vec3* x,
                               const QuadratureRule& rule) {
  const int n = p.dim();
  const auto bundle = trace_rays(p, anchor, rule, kModule);
  Accumulated acc;
  for (std::size_t j = 0; j < bundle.rays.size(); ++j) {
    const auto& ray = bundle.rays[j];
    for (std::size_t i = 0; i < ray.roots.size(); ++i) {
      const double t = ray.roots[i];
      const Vec3 y = anchor + t * ray.direction;
      // dS / |grad p| in polar coordinates about the anchor.
      const double dm = bundle.weights[j] * std::pow(std::abs(t), n - 1) * std::abs(q.value(y) / ray.derivs[i]);
      acc.mass += dm;
      if (x) {
        const Vec3 d = y - *x;
        acc.field += dm * d / std::pow(d.norm(), n);
      }
    }
  }
  return acc;
}

Polynomial shifted(const Polynomial& p, double lambda) { return p - Polynomial::constant(p.dim(), lambda); }

}  // namespace

void MassDensitySpec::validate() const {
  if (p.dim() != q.dim()) throw InputError(kModule, "p and q have different dimensions");
  if (q.is_zero()) throw InputError(kModule, "density polynomial q is zero");
  if (kind == Kind::layer) {
    if (!(hi > lo)) throw InputError(kModule, "layer bounds need lo < hi");
    if (layer_nodes < 1) throw InputError(kModule, "layer needs at least one level node");
    const double pa = p.value(anchor);
    if (pa >= lo && pa <= hi) throw InputError(kModule, "anchor lies inside the layer");
  }
}

nlohmann::json FieldProbe::to_json() const {
  return {{"point", {point[0], point[1], point[2]}},
          {"field", {field[0], field[1], field[2]}},
          {"magnitude", field.norm()},
          {"normalized_magnitude", normalized},
          {"error_estimate", error},
          {"distance", distance}};
}

double ray_cancellation_sum(const Polynomial& p, const Polynomial& q, const Vec3& a, const Vec3& omega) {
  const auto prof = ray_roots(p, a, omega);
  if (prof.degenerate()) throw NumericalError(kModule, "ray cancellation on a degenerate direction");
  double s = 0.0;
  for (std::size_t i = 0; i < prof.roots.size(); ++i) s += q.value(a + prof.roots[i] * omega) / prof.derivs[i];
  return s;
}

double distance_to_zero_set(const Polynomial& p, const Vec3& x, const QuadratureRule& rule) {
  double best = INFINITY;
  for (const auto& w : rule.nodes) {
    const auto u = restrict_to_line(p, x, w);
    if (u.degree() < 1) continue;
    for (const auto& r : real_roots(u)) best = std::min(best, std::abs(r.value));
  }
  return best;
}

FieldProbe surface_field(const MassDensitySpec& spec, const Vec3& x, const QuadratureRule& rule) {
  spec.validate();
  if (spec.kind != MassDensitySpec::Kind::surface) throw InputError(kModule, "surface_field needs a surface density");
  FieldProbe probe;
  probe.point = x;
  const double px = spec.p.value(x);
  if (std::abs(px) <= 1e-14 * std::max(1.0, spec.p.magnitude(x))) throw NumericalError(kModule, "probe point on Z");
  probe.distance = distance_to_zero_set(spec.p, x, rule);
  if (probe.distance < 1e-6) throw NumericalError(kModule, "probe point within 1e-6 of Z");

  const auto fine = accumulate_surface(spec.p, spec.q, spec.anchor, &x, rule);
  const auto coarse = accumulate_surface(spec.p, spec.q, spec.anchor, &x, rule.coarsened());
  probe.field = fine.field;
  probe.error = (fine.field - coarse.field).norm();
  probe.normalized = fine.field.norm() * std::pow(probe.distance, spec.p.dim() - 1) / fine.mass;
  return probe;
}

FieldProbe layer_field(const MassDensitySpec& spec, const Vec3& x, const QuadratureRule& rule) {
  spec.validate();
  if (spec.kind != MassDensitySpec::Kind::layer) throw InputError(kModule, "layer_field needs a layer density");
  const double px = spec.p.value(x);
  if (px >= spec.lo && px <= spec.hi) throw InputError(kModule, "probe point lies inside the layer");

  FieldProbe probe;
  probe.point = x;
  const auto gl = gauss_legendre(spec.layer_nodes, spec.lo, spec.hi);
  const auto coarse_rule = rule.coarsened();
  Vec3 coarse_field = Vec3::Zero();
  double mass = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const Polynomial pl = shifted(spec.p, gl.nodes[i]);
    if (!is_oscillatory_at(pl, spec.anchor, rule).oscillatory()) {
      throw NumericalError(kModule, "p - lambda is not oscillatory about the anchor at lambda = " + std::to_string(gl.nodes[i]));
    }
    const auto rep = verify_separator(pl, spec.q, spec.anchor, rule);
    if (!rep.pass()) {
      throw NumericalError(kModule, "q does not separate p - lambda at lambda = " + std::to_string(gl.nodes[i]));
    }
    const auto fine = accumulate_surface(pl, spec.q, spec.anchor, &x, rule);
    const auto coarse = accumulate_surface(pl, spec.q, spec.anchor, &x, coarse_rule);
    probe.field += gl.weights[i] * fine.field;
    coarse_field += gl.weights[i] * coarse.field;
    mass += gl.weights[i] * fine.mass;
  }
  probe.error = (probe.field - coarse_field).norm();
  probe.distance = std::min(distance_to_zero_set(shifted(spec.p, spec.lo), x, rule),
                            distance_to_zero_set(shifted(spec.p, spec.hi), x, rule));
  if (probe.distance < 1e-6) throw NumericalError(kModule, "probe point within 1e-6 of the layer");
  probe.normalized = probe.field.norm() * std::pow(probe.distance, spec.p.dim() - 1) / mass;
  return probe;
}

double total_mass(const MassDensitySpec& spec, const QuadratureRule& rule) {
  spec.validate();
  if (spec.kind == MassDensitySpec::Kind::surface) return accumulate_surface(spec.p, spec.q, spec.anchor, nullptr, rule).mass;
  const auto gl = gauss_legendre(spec.layer_nodes, spec.lo, spec.hi);
  double m = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    m += gl.weights[i] * accumulate_surface(shifted(spec.p, gl.nodes[i]), spec.q, spec.anchor, nullptr, rule).mass;
  }
  return m;
}

Vec3 constant_field_prediction(const Polynomial& p, const Polynomial& q, const Vec3& a, const QuadratureRule& rule) {
  if (p.dim() != q.dim() || rule.dim != p.dim()) throw InputError(kModule, "dimension mismatch");
  const int m = p.degree();
  const Polynomial top_q = q.homogeneous_part(m - 1);
  if (top_q.is_zero()) return Vec3::Zero();
  const Polynomial top_p = p.homogeneous_part(m);
  const double pa = p.value(a);
  const double qa = q.value(a);
  if (pa == 0.0 || qa == 0.0) throw NumericalError(kModule, "p or q vanishes at the base point");
  const double sign = (qa > 0 ? 1.0 : -1.0) * (pa < 0 ? 1.0 : -1.0);
  const double scale = top_p.max_abs_coefficient();
  Vec3 f = Vec3::Zero();
  double first = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const Vec3& w = rule.nodes[j];
    const double pm = top_p.value(w);
    if (j == 0) first = pm;
    if (std::abs(pm) <= 1e-12 * scale || (pm > 0) != (first > 0)) {
      throw NumericalError(kModule, "p is not elliptic (its leading form changes sign)");
    }
    f += rule.weights[j] * top_q.value(w) / pm * w;
  }
  return sign * f;
}

nlohmann::json levitation_report(const std::vector<FieldProbe>& probes, const Vec3& prediction, int dim) {
  auto arr = nlohmann::json::array();
  double worst = 0.0;
  for (const auto& pr : probes) {
    arr.push_back(pr.to_json());
    worst = std::max(worst, pr.normalized);
  }
  nlohmann::json pred = nlohmann::json::array();
  for (int i = 0; i < dim; ++i) pred.push_back(prediction[i]);
  return {{"probes", arr},
          {"max_normalized_magnitude", worst},
          {"prediction", pred},
          {"sign_convention", "F = sign(q(a)) sign(-p(a)) * integral over the hemisphere of q_{m-1}/p_m w"}};
}

}  // namespace osc
