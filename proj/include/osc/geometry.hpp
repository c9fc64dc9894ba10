#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "osc/grid.hpp"
#include "osc/poly.hpp"
#include "osc/quadrature.hpp"

namespace osc {

// Why a ray was excluded from quadrature ("almost any line").
enum class RayStatus {
  regular,        // m simple real roots
  degree_drop,    // restriction has degree < m
  coalesced,      // a multiple root or two roots closer than the tolerance
  missing_roots,  // fewer than m real roots: a witness against oscillation
};

// Real zeros of t -> p(a + t*omega), sorted ascending:
// t_{-s} <= ... <= t_{-1} < 0 < t_1 <= ... <= t_r.
struct RayRootProfile {
  Vec3 base;
  Vec3 direction;
  std::vector<double> roots;
  std::vector<double> derivs;  // p_t'(a + t_k omega)
  int num_negative = 0;
  int mu = 0;  // m / 2
  RayStatus status = RayStatus::regular;

  bool degenerate() const { return status != RayStatus::regular; }
  // Balanced profile: mu roots on each side of the base point.
  bool balanced() const { return num_negative == mu && static_cast<int>(roots.size()) == 2 * mu; }
  // Branch index k in {-mu..-1, 1..mu} to position in `roots`.
  std::size_t index(int k) const { return static_cast<std::size_t>(k > 0 ? num_negative + k - 1 : num_negative + k); }
  double t(int k) const { return roots[index(k)]; }
  double deriv(int k) const { return derivs[index(k)]; }
  Vec3 point(int k) const { return base + t(k) * direction; }
};

// sign(t)|t|^{n-1} / p_t': the density of the signed Leray form dxi/dp in
// polar coordinates around the base point, for a root at parameter t.
double leray_weight(double t, double dpdt, int dim);

RayRootProfile ray_roots(const Polynomial& p, const Vec3& a, const Vec3& omega, double tol = 1e-12);

struct OscillationVerdict {
  enum class Kind { oscillatory, counterexample, inconclusive };
  Kind kind = Kind::oscillatory;
  std::optional<Vec3> witness;  // set for counterexample
  double degenerate_fraction = 0.0;
  bool oscillatory() const { return kind == Kind::oscillatory; }
};

OscillationVerdict is_oscillatory_at(const Polynomial& p, const Vec3& a, const QuadratureRule& rule);

struct CavityMask {
  ScalarGrid grid;  // values in {0, 1}
  int directions = 0;

  // Midpoint test on n random pairs of marked cells: returns the fraction of
  // midpoints that are within one cell of a marked cell.
  double convexity_score(int pairs, unsigned seed = 7) const;
};

CavityMask cavity_mask(const Polynomial& p, const GridSpec& box, const QuadratureRule& rule);

// Inside the innermost oval seen from a hyperbolic point a: x lies strictly
// before the first root along the ray from a through x.
bool inside_inner_oval(const Polynomial& p, const Vec3& a, const Vec3& x);

struct OvalSet {
  // clouds[k-1] holds a + t_{+k} w_j and a + t_{-k} w_j for every kept w_j.
  std::vector<std::vector<Vec3>> clouds;
  bool nested = true;
  int skipped_directions = 0;
};

OvalSet extract_ovals(const Polynomial& p, const Vec3& a, const QuadratureRule& rule);
void write_ovals_csv(const OvalSet& ovals, int dim, const std::filesystem::path& path);

using PointFunction = std::function<double(const Vec3&)>;

// Integral of g over Z against dxi/dp, using both root branches on each
// hemisphere node. Degenerate directions are dropped and the remaining
// weights rescaled to the full hemisphere measure; more than 5% degenerate
// weight is an error.
double leray_integrate(const Polynomial& p, const Vec3& a, const PointFunction& g, const QuadratureRule& rule);

// | sum_k 1/(t_k p_t'(a + t_k omega)) + 1/p(a) |, zero by the residue theorem.
double residue_identity_defect(const Polynomial& p, const Vec3& a, const Vec3& omega);

// Directions kept for quadrature and their renormalized weights.
struct RayBundle {
  std::vector<RayRootProfile> rays;
  std::vector<double> weights;
  std::vector<int> indices;  // position of each ray in the rule
  int skipped = 0;
};
RayBundle trace_rays(const Polynomial& p, const Vec3& a, const QuadratureRule& rule, const char* module);

}  // namespace osc
