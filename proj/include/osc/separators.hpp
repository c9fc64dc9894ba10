#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "osc/poly.hpp"
#include "osc/quadrature.hpp"

namespace osc {

// q_a = sum_i (x_i - a_i) dp/dx_i - m p. Along any ray from a it equals
// t p_t' - m p, and it drops to degree m-2 when p(a + y) has no terms of
// degree m-1.
Polynomial euler_separator(const Polynomial& p, const Vec3& a);

enum class SeparatorFailure { interleaving, central_interval_zero, degree };
const char* to_string(SeparatorFailure f);

struct SeparatorReport {
  struct Failure {
    Vec3 omega;
    SeparatorFailure reason;
  };
  Polynomial candidate;
  bool strict = false;
  int directions_checked = 0;
  int skipped = 0;
  std::vector<Failure> failures;

  bool pass() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

// Checks that on every sampled line through a, q has exactly one zero
// between consecutive zeros of p on each side of a and none between t_{-1}
// and t_1.
SeparatorReport verify_separator(const Polynomial& p, const Polynomial& q, const Vec3& a, const QuadratureRule& rule);

// With p and q normalized so that p < 0 and q > 0 at a: q/p_t' is positive
// on every root t_k with k > 0 and negative for k < 0.
bool sign_pattern_holds(const Polynomial& p, const Polynomial& q, const Vec3& a, const Vec3& omega);

}  // namespace osc
