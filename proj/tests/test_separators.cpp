#include <random>

#include "doctest.h"
#include "osc/errors.hpp"
#include "osc/levitation.hpp"
#include "osc/presets.hpp"
#include "osc/separators.hpp"
#include "support.hpp"

using namespace osc;

namespace {

Polynomial r2(int dim) {
  Polynomial p(dim);
  for (int i = 0; i < dim; ++i) {
    Exponent e{0, 0, 0};
    e[i] = 2;
    p.add_term(e, 1.0);
  }
  return p;
}

}  // namespace

TEST_SUITE("separators") {
  TEST_CASE("euler separator of the unit sphere is the constant 2") {
    const auto q = euler_separator(preset("sphere").p, Vec3::Zero());
    CHECK(q == Polynomial::constant(3, 2.0));
  }

  TEST_CASE("euler separator of the degree-6 oval") {
    const Polynomial r = r2(2);
    const Polynomial want = 24.0 * (r * r) - 14.0 * Polynomial(2, {{{2, 2, 0}, 1.0}}) - 120.0 * r +
                            Polynomial::constant(2, 120.0);
    const auto q = euler_separator(preset("degree6").p, Vec3::Zero());
    CHECK(q == want);
    CHECK(q.degree() == 4);
  }

  TEST_CASE("euler separator of the crystal surface has degree 2") {
    const auto pr = preset("crystal");
    const auto q = euler_separator(pr.p, Vec3::Zero());
    CHECK(q.degree() == 2);
    REQUIRE(pr.q.has_value());
    CHECK(q == *pr.q);
  }

  TEST_CASE("Euler identity q(a + t w) = t p_t' - m p") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (const char* name : {"degree6", "hypotrochoid", "crystal", "hyperbola"}) {
      const auto pr = preset(name);
      const int m = pr.p.degree();
      for (int i = 0; i < 25; ++i) {
        const Vec3 a = support::random_cavity_point(pr.p, pr.point, rng);
        const Vec3 w = support::random_unit(rng, pr.p.dim());
        const double t = u(rng);
        const auto q = euler_separator(pr.p, a);
        const Vec3 x = a + t * w;
        const double dpdt = pr.p.gradient(x).dot(w);
        const double rhs = t * dpdt - m * pr.p.value(x);
        const double scale = std::max(1.0, std::abs(t) * pr.p.gradient(x).norm() + m * pr.p.magnitude(x));
        CHECK(std::abs(q.value(x) - rhs) <= 1e-10 * scale);
      }
    }
  }

  TEST_CASE("hypotrochoid separator passes and is strict") {
    const auto pr = preset("hypotrochoid");
    const auto rep = verify_separator(pr.p, *pr.q, pr.point, QuadratureRule::half_circle(360));
    CHECK(rep.pass());
    CHECK(rep.strict);
    CHECK(rep.directions_checked > 300);
    const auto js = rep.to_json();
    CHECK(js["pass"] == true);
    CHECK(js["strict"] == true);
    CHECK(js["failures"].empty());
  }

  TEST_CASE("euler separators of even presets pass and are strict") {
    const auto d6 = preset("degree6");
    const auto rep = verify_separator(d6.p, euler_separator(d6.p, Vec3::Zero()), Vec3::Zero(), QuadratureRule::half_circle(360));
    CHECK(rep.pass());
    CHECK(rep.strict);
    const auto cr = preset("crystal");
    const auto rep3 = verify_separator(cr.p, euler_separator(cr.p, Vec3::Zero()), Vec3::Zero(), QuadratureRule::hemisphere(12, 24));
    CHECK(rep3.pass());
    CHECK(rep3.strict);
  }

  TEST_CASE("a linear separator of the sphere passes but is not strict") {
    const Polynomial q = Polynomial::coordinate(3, 0) + Polynomial::constant(3, 2.0);
    const auto rep = verify_separator(preset("sphere").p, q, Vec3::Zero(), QuadratureRule::hemisphere(8, 16));
    CHECK(rep.pass());
    CHECK_FALSE(rep.strict);
  }

  TEST_CASE("failures are classified") {
    const auto sphere = preset("sphere").p;
    const auto rule = QuadratureRule::hemisphere(6, 12);
    // q = x1 vanishes at the center.
    const auto central = verify_separator(sphere, Polynomial::coordinate(3, 0), Vec3::Zero(), rule);
    REQUIRE_FALSE(central.pass());
    CHECK(central.failures.front().reason == SeparatorFailure::central_interval_zero);
    // deg q >= m.
    const auto deg = verify_separator(sphere, r2(3), Vec3::Zero(), rule);
    REQUIRE_FALSE(deg.pass());
    CHECK(deg.failures.front().reason == SeparatorFailure::degree);
    // q = 1 cannot interleave the three inner gaps of the degree-6 oval.
    const auto inter = verify_separator(preset("degree6").p, Polynomial::constant(2, 1.0), Vec3::Zero(),
                                        QuadratureRule::half_circle(36));
    REQUIRE_FALSE(inter.pass());
    CHECK(inter.failures.front().reason == SeparatorFailure::interleaving);
    CHECK(std::string(to_string(SeparatorFailure::interleaving)) == "interleaving");
  }

  TEST_CASE("verify_separator rejects a base point outside the cavity") {
    CHECK_THROWS_AS(verify_separator(preset("degree6").p, Polynomial::constant(2, 1.0), Vec3(1.2, 0, 0),
                                     QuadratureRule::half_circle(90)),
                    InputError);
  }

  TEST_CASE("Euler separators verify from other cavity points") {
    std::mt19937 rng(21);
    for (const char* name : {"degree6", "hypotrochoid"}) {
      const auto pr = preset(name);
      for (int i = 0; i < 5; ++i) {
        const Vec3 b = support::random_cavity_point(pr.p, pr.point, rng, 0.8);
        const auto rule = QuadratureRule::half_circle(180);
        CHECK(verify_separator(pr.p, euler_separator(pr.p, b), b, rule).pass());
        // The separator built at the reference point also separates as seen from b.
        CHECK(verify_separator(pr.p, euler_separator(pr.p, pr.point), b, rule).pass());
      }
    }
  }

  TEST_CASE("ray sums of strict separators vanish") {
    std::mt19937 rng(5);
    struct Case {
      const char* name;
      Polynomial q;
    };
    const std::vector<Case> cases = {
        {"degree6", euler_separator(preset("degree6").p, Vec3::Zero())},
        {"hypotrochoid", *preset("hypotrochoid").q},
        {"crystal", *preset("crystal").q},
        {"sphere", Polynomial::constant(3, 2.0)},
    };
    for (const auto& c : cases) {
      const auto pr = preset(c.name);
      for (int i = 0; i < 50; ++i) {
        const Vec3 w = support::random_unit(rng, pr.p.dim());
        CHECK(std::abs(ray_cancellation_sum(pr.p, c.q, pr.point, w)) < 1e-9);
      }
    }
  }

  TEST_CASE("sign pattern along random rays") {
    std::mt19937 rng(6);
    for (const char* name : {"hypotrochoid", "crystal"}) {
      const auto pr = preset(name);
      for (int i = 0; i < 100; ++i) {
        CHECK(sign_pattern_holds(pr.p, *pr.q, pr.point, support::random_unit(rng, pr.p.dim())));
      }
    }
    const auto d6 = preset("degree6");
    const auto q6 = euler_separator(d6.p, Vec3::Zero());
    for (int i = 0; i < 100; ++i) CHECK(sign_pattern_holds(d6.p, q6, Vec3::Zero(), support::random_unit(rng, 2)));
  }
}
