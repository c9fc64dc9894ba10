#include "osc/separators.hpp"

#include <algorithm>
#include <cmath>

#include "osc/errors.hpp"
#include "osc/geometry.hpp"

namespace osc {

namespace {

constexpr const char* kModule = "separators";

// Index of the open interval between consecutive roots that contains s,
// or -1 when s sits within `margin` of one of them.
int interval_of(const std::vector<double>& roots, double s, double margin) {
  int idx = 0;
  for (double t : roots) {
    if (std::abs(s - t) <= margin * std::max(1.0, std::abs(t))) return -1;
    if (s > t) ++idx;
  }
  return idx;
}

}  // namespace

Polynomial euler_separator(const Polynomial& p, const Vec3& a) {
  const int m = p.degree();
  Polynomial q(p.dim());
  for (const auto& [e, c] : p.terms()) {
    q.add_term(e, (e[0] + e[1] + e[2] - m) * c);
  }
  for (int i = 0; i < p.dim(); ++i) {
    if (a[i] != 0.0) q -= a[i] * p.derivative(i);
  }
  return q;
}

const char* to_string(SeparatorFailure f) {
  switch (f) {
    case SeparatorFailure::interleaving:
      return "interleaving";
    case SeparatorFailure::central_interval_zero:
      return "central-interval-zero";
    case SeparatorFailure::degree:
      return "degree";
  }
  return "unknown";
}

nlohmann::json SeparatorReport::to_json() const {
  auto fails = nlohmann::json::array();
  for (const auto& f : failures) {
    fails.push_back({{"omega", {f.omega[0], f.omega[1], f.omega[2]}}, {"reason", osc::to_string(f.reason)}});
  }
  return {{"strict", strict},
          {"pass", pass()},
          {"directions_checked", directions_checked},
          {"skipped_directions", skipped},
          {"candidate", osc::to_string(candidate)},
          {"failures", fails}};
}

SeparatorReport verify_separator(const Polynomial& p, const Polynomial& q, const Vec3& a, const QuadratureRule& rule) {
  if (p.dim() != q.dim()) throw InputError(kModule, "p and q have different dimensions");
  const auto verdict = is_oscillatory_at(p, a, rule);
  if (!verdict.oscillatory()) throw InputError(kModule, "verify_separator needs a hyperbolic base point");

  const int m = p.degree();
  SeparatorReport rep;
  rep.candidate = q;
  rep.strict = !q.is_zero() && q.degree() == m - 2;
  if (q.is_zero() || q.degree() >= m) {
    rep.failures.push_back({Vec3::Zero(), SeparatorFailure::degree});
    return rep;
  }
  constexpr double margin = 1e-9;

  for (const auto& w : rule.nodes) {
    const auto prof = ray_roots(p, a, w);
    if (prof.degenerate()) {
      ++rep.skipped;
      continue;
    }
    ++rep.directions_checked;
    const auto uq = restrict_to_line(q, a, w);
    std::vector<int> hits(prof.roots.size() + 1, 0);
    bool touching = false;
    const bool q_vanishes = std::all_of(uq.coeffs.begin(), uq.coeffs.end(), [](double c) { return c == 0.0; });
    if (!q_vanishes && uq.degree() > 0) {
      for (const auto& r : real_roots(uq)) {
        const int idx = interval_of(prof.roots, r.value, margin);
        if (idx < 0) {
          touching = true;
        } else {
          hits[static_cast<std::size_t>(idx)] += r.multiplicity;
        }
      }
    }
    const auto central = static_cast<std::size_t>(prof.num_negative);
    if (q_vanishes || hits[central] != 0) {
      rep.failures.push_back({w, SeparatorFailure::central_interval_zero});
      continue;
    }
    // Intervals (t_k, t_{k+1}) and (t_{-k-1}, t_{-k}) for k = 1..mu-1.
    const int num_pos = static_cast<int>(prof.roots.size()) - prof.num_negative;
    bool ok = !touching;
    for (int k = 1; k < prof.mu && ok; ++k) {
      if (k < num_pos) ok = hits[central + static_cast<std::size_t>(k)] == 1;
      if (ok && k < prof.num_negative) ok = hits[central - static_cast<std::size_t>(k)] == 1;
    }
    if (!ok) rep.failures.push_back({w, SeparatorFailure::interleaving});
  }
  return rep;
}

bool sign_pattern_holds(const Polynomial& p, const Polynomial& q, const Vec3& a, const Vec3& omega) {
  const auto prof = ray_roots(p, a, omega);
  if (prof.degenerate()) throw NumericalError(kModule, "sign pattern on a degenerate direction");
  const double sp = p.value(a) > 0 ? -1.0 : 1.0;
  const double qa = q.value(a);
  if (qa == 0.0) throw NumericalError(kModule, "q vanishes at the base point");
  const double sq = qa > 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < prof.roots.size(); ++i) {
    const double ratio = sq * q.value(prof.base + prof.roots[i] * omega) / (sp * prof.derivs[i]);
    if (prof.roots[i] > 0 ? ratio <= 0 : ratio >= 0) return false;
  }
  return true;
}

}  // namespace osc
