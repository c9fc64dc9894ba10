#pragma once

#include <vector>

#include "json.hpp"
#include "osc/geometry.hpp"

namespace osc {

// Mass carried by Z = {p = 0} with density |q| (surface), or by the layer
// lo <= p <= hi with density |q| dx. Z and every level set in the layer are
// parametrized by rays from `anchor`, a point of the hyperbolic cavity.
struct MassDensitySpec {
  enum class Kind { surface, layer };
  Kind kind = Kind::surface;
  Polynomial p;
  Polynomial q;
  Vec3 anchor = Vec3::Zero();
  double lo = 0.0;
  double hi = 0.0;
  int layer_nodes = 8;  // Gauss-Legendre nodes in the level parameter

  void validate() const;
};

struct FieldProbe {
  Vec3 point = Vec3::Zero();
  Vec3 field = Vec3::Zero();
  double error = 0.0;       // difference against the half-resolution rule
  double distance = 0.0;    // to the nearest mass
  double normalized = 0.0;  // |F| d^{n-1} / M

  nlohmann::json to_json() const;
};

// sum_k q(a + t_k w) / p_t'(a + t_k w) over all real roots on the line.
double ray_cancellation_sum(const Polynomial& p, const Polynomial& q, const Vec3& a, const Vec3& omega);

// Attraction F(x) = int rho(y) (y - x) / |y - x|^n; n = 2 uses the 1/r force.
FieldProbe surface_field(const MassDensitySpec& spec, const Vec3& x, const QuadratureRule& rule);
FieldProbe layer_field(const MassDensitySpec& spec, const Vec3& x, const QuadratureRule& rule);

double total_mass(const MassDensitySpec& spec, const QuadratureRule& rule);

// Smallest |t| with p(x + t w) = 0 over the rule's directions (both signs).
double distance_to_zero_set(const Polynomial& p, const Vec3& x, const QuadratureRule& rule);

// Field of |q| delta(p) in the cavity for an elliptic p and a separator q:
// zero when q is strict, otherwise the constant
//   s int_{hemisphere} q_{m-1}(w) / p_m(w) w dw,  s = sign(q(a)) * sign(-p(a)).
Vec3 constant_field_prediction(const Polynomial& p, const Polynomial& q, const Vec3& a, const QuadratureRule& rule);

nlohmann::json levitation_report(const std::vector<FieldProbe>& probes, const Vec3& prediction, int dim);

}  // namespace osc
