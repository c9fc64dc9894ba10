#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "osc/errors.hpp"
#include "osc/geometry.hpp"
#include "osc/presets.hpp"
#include "support.hpp"

using namespace osc;
using std::numbers::pi;

namespace {

Polynomial xy_minus_one() { return Polynomial(2, {{{1, 1, 0}, 1.0}, {{0, 0, 0}, -1.0}}); }

// Roots of u^3 - 12u^2 + 30u - 20 are 2 and 5 -+ sqrt(15); the ray roots are their square roots.
const double kDeg6Radii[] = {std::sqrt(5.0 - std::sqrt(15.0)), std::sqrt(2.0), std::sqrt(5.0 + std::sqrt(15.0))};

}  // namespace

TEST_SUITE("oscillatory_geometry") {
  TEST_CASE("ray_roots on the degree-6 oval along the x axis") {
    const auto prof = ray_roots(preset("degree6").p, Vec3::Zero(), Vec3(1, 0, 0));
    REQUIRE_FALSE(prof.degenerate());
    REQUIRE(prof.roots.size() == 6);
    CHECK(prof.mu == 3);
    CHECK(prof.balanced());
    for (int k = 1; k <= 3; ++k) {
      CHECK(prof.t(k) == doctest::Approx(kDeg6Radii[k - 1]).epsilon(1e-12));
      CHECK(prof.t(-k) == doctest::Approx(-kDeg6Radii[k - 1]).epsilon(1e-12));
    }
    CHECK(kDeg6Radii[0] == doctest::Approx(1.0616).epsilon(1e-4));
    CHECK(kDeg6Radii[2] == doctest::Approx(2.9788).epsilon(1e-4));
    // Derivative signs alternate along simple roots.
    for (std::size_t i = 1; i < prof.derivs.size(); ++i) CHECK(prof.derivs[i] * prof.derivs[i - 1] < 0);
  }

  TEST_CASE("ray_roots on the unit circle in any direction") {
    std::mt19937 rng(1);
    for (int i = 0; i < 10; ++i) {
      const auto prof = ray_roots(preset("circle").p, Vec3::Zero(), support::random_unit(rng, 2));
      REQUIRE(prof.roots.size() == 2);
      CHECK(prof.roots[0] == doctest::Approx(-1.0));
      CHECK(prof.roots[1] == doctest::Approx(1.0));
    }
  }

  TEST_CASE("ray_roots flags a degree drop and rejects base points on Z") {
    CHECK(ray_roots(xy_minus_one(), Vec3::Zero(), Vec3(1, 0, 0)).status == RayStatus::degree_drop);
    CHECK_THROWS_AS(ray_roots(preset("circle").p, Vec3(1, 0, 0), Vec3(0, 1, 0)), InputError);
  }

  TEST_CASE("quadrature rules carry the full measure and their declared exactness") {
    const auto c = QuadratureRule::half_circle(180);
    CHECK(c.total_weight() == doctest::Approx(pi).epsilon(1e-12));
    const auto h = QuadratureRule::hemisphere(12, 24);
    CHECK(h.total_weight() == doctest::Approx(2 * pi).epsilon(1e-12));
    // Even monomials: int over the hemisphere of z^2 is 2pi/3, of x^2 y^2 is 2pi/15.
    double z2 = 0.0, x2y2 = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) {
      const Vec3& w = h.nodes[j];
      z2 += h.weights[j] * w[2] * w[2];
      x2y2 += h.weights[j] * w[0] * w[0] * w[1] * w[1];
    }
    CHECK(z2 == doctest::Approx(2 * pi / 3).epsilon(1e-12));
    CHECK(x2y2 == doctest::Approx(2 * pi / 15).epsilon(1e-12));
    double c4 = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) c4 += c.weights[j] * std::pow(c.nodes[j][0], 4);
    CHECK(c4 == doctest::Approx(3 * pi / 8).epsilon(1e-12));
  }

  TEST_CASE("oscillation verdicts") {
    const auto rule = QuadratureRule::half_circle(360);
    CHECK(is_oscillatory_at(preset("degree6").p, Vec3::Zero(), rule).oscillatory());
    CHECK(is_oscillatory_at(preset("hyperbola").p, Vec3(2, 0, 0), rule).oscillatory());
    const auto v = is_oscillatory_at(xy_minus_one(), Vec3::Zero(), rule);
    REQUIRE(v.kind == OscillationVerdict::Kind::counterexample);
    REQUIRE(v.witness.has_value());
    CHECK((*v.witness)[0] * (*v.witness)[1] < 0);
    CHECK_THROWS_AS(is_oscillatory_at(preset("circle").p, Vec3(0, 1, 0), rule), InputError);
    CHECK(is_oscillatory_at(preset("crystal").p, Vec3::Zero(), QuadratureRule::hemisphere(10, 20)).oscillatory());
  }

  TEST_CASE("points between ovals are not in the cavity") {
    const auto rule = QuadratureRule::half_circle(180);
    CHECK_FALSE(is_oscillatory_at(preset("degree6").p, Vec3(1.2, 0, 0), rule).oscillatory());
    CHECK_FALSE(is_oscillatory_at(preset("circle").p, Vec3(1.5, 0.3, 0), rule).oscillatory());
  }

  TEST_CASE("cavity mask of the unit circle") {
    const auto mask = cavity_mask(preset("circle").p, GridSpec::square(-2, 2, 64), QuadratureRule::half_circle(90));
    const double h = 4.0 / 64;
    int mismatches = 0;
    for (std::size_t i = 0; i < mask.grid.size(); ++i) {
      const double r = mask.grid.spec.center(i).norm();
      const bool marked = mask.grid.values[i] > 0.5;
      if (std::abs(r - 1.0) > h) mismatches += marked != (r < 1.0);
    }
    CHECK(mismatches == 0);
    CHECK(mask.convexity_score(500) == 1.0);
  }

  TEST_CASE("cavity mask of the degree-6 oval lies between radii 0.9 and 1.07") {
    const auto mask = cavity_mask(preset("degree6").p, GridSpec::square(-1.5, 1.5, 60), QuadratureRule::half_circle(90));
    bool inside = true, contains = true;
    for (std::size_t i = 0; i < mask.grid.size(); ++i) {
      const double r = mask.grid.spec.center(i).norm();
      const bool marked = mask.grid.values[i] > 0.5;
      if (marked && r >= 1.07) inside = false;
      if (!marked && r < 0.9) contains = false;
    }
    CHECK(inside);
    CHECK(contains);
    CHECK(mask.convexity_score(500) == 1.0);
  }

  TEST_CASE("hyperbola cavity near (2, 0) is nonempty and convex") {
    GridSpec box;
    box.lo = {1, -1, 0};
    box.hi = {3, 1, 0};
    box.res = {40, 40, 1};
    const auto mask = cavity_mask(preset("hyperbola").p, box, QuadratureRule::half_circle(90));
    double marked = 0;
    for (double v : mask.grid.values) marked += v;
    CHECK(marked > 100);
    CHECK(mask.convexity_score(500) == 1.0);
    // Marked cells satisfy x^2 - y^2 > 1 with x > 0.
    for (std::size_t i = 0; i < mask.grid.size(); ++i) {
      if (mask.grid.values[i] > 0.5) CHECK(preset("hyperbola").p.value(mask.grid.spec.center(i)) > 0);
    }
  }

  TEST_CASE("ovals of the unit circle, the degree-6 curve and the hypotrochoid") {
    const auto rule = QuadratureRule::half_circle(180);
    const auto circle = extract_ovals(preset("circle").p, Vec3::Zero(), rule);
    REQUIRE(circle.clouds.size() == 1);
    double dev = 0.0;
    for (const auto& x : circle.clouds[0]) dev = std::max(dev, std::abs(x.norm() - 1.0));
    CHECK(dev < 1e-9);

    const auto d6 = extract_ovals(preset("degree6").p, Vec3::Zero(), rule);
    REQUIRE(d6.clouds.size() == 3);
    CHECK(d6.nested);
    double max_inner = 0, min_outer = 1e9;
    for (const auto& x : d6.clouds[0]) max_inner = std::max(max_inner, x.norm());
    for (const auto& x : d6.clouds[1]) min_outer = std::min(min_outer, x.norm());
    CHECK(max_inner < min_outer);

    const auto hyp = extract_ovals(preset("hypotrochoid").p, Vec3::Zero(), rule);
    CHECK(hyp.clouds.size() == 2);
    CHECK(hyp.nested);
    CHECK_THROWS_AS(extract_ovals(xy_minus_one(), Vec3::Zero(), rule), InputError);
  }

  TEST_CASE("leray_integrate of 1/|xi| over the unit circle is pi") {
    const auto rule = QuadratureRule::half_circle(64);
    const double v = leray_integrate(preset("circle").p, Vec3::Zero(), [](const Vec3& x) { return 1.0 / x.norm(); }, rule);
    CHECK(v == doctest::Approx(pi).epsilon(1e-12));
  }

  TEST_CASE("dominator identity with the |xi - x|^-n kernel") {
    std::mt19937 rng(9);
    for (const char* name : {"circle", "degree6", "hypotrochoid", "sphere", "crystal"}) {
      const auto pr = preset(name);
      const int n = pr.p.dim();
      const auto rule = n == 2 ? QuadratureRule::half_circle(400) : QuadratureRule::hemisphere(40, 80);
      for (int i = 0; i < 3; ++i) {
        const Vec3 x = support::random_cavity_point(pr.p, pr.point, rng, 0.5);
        const auto kernel = [&](const Vec3& xi) { return std::pow((xi - x).norm(), -n); };
        const double lhs = leray_integrate(pr.p, x, kernel, rule) / sphere_area(n);
        CHECK(lhs == doctest::Approx(-1.0 / (2.0 * pr.p.value(x))).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("the literal 1/|xi - x| kernel does not give the dominator") {
    // Circle of radius 2 about x = 0: the 1/|xi - x| kernel yields pi/2, the
    // |xi - x|^-2 kernel yields pi/4 = |S^1| * (-1 / (2 p(0))).
    const Polynomial p = Polynomial(2, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 0}, -4.0}});
    const auto rule = QuadratureRule::half_circle(64);
    const double literal = leray_integrate(p, Vec3::Zero(), [](const Vec3& xi) { return 1.0 / xi.norm(); }, rule);
    const double squared = leray_integrate(p, Vec3::Zero(), [](const Vec3& xi) { return 1.0 / xi.squaredNorm(); }, rule);
    CHECK(squared == doctest::Approx(2 * pi / 8));
    CHECK(literal == doctest::Approx(pi / 2));
    CHECK(std::abs(literal - 2 * pi / 8) > 0.5);
  }

  TEST_CASE("leray_integrate of 1 on the degree-6 curve matches a marching-squares contour") {
    const Polynomial p = preset("degree6").p;
    const double got = leray_integrate(p, Vec3::Zero(), [](const Vec3&) { return 1.0; }, QuadratureRule::half_circle(2000));
    const auto segs = oracle::contour(p, -3.5, 3.5, 1400);
    const double want = oracle::contour_leray(p, Vec3::Zero(), segs, [](const Vec3&) { return 1.0; });
    CHECK(got == doctest::Approx(want).epsilon(1e-5));
  }

  TEST_CASE("leray_integrate refuses a non-oscillatory base point") {
    CHECK_THROWS_AS(
        leray_integrate(xy_minus_one(), Vec3::Zero(), [](const Vec3&) { return 1.0; }, QuadratureRule::half_circle(32)),
        NumericalError);
  }

  TEST_CASE("residue identity examples") {
    CHECK(residue_identity_defect(preset("circle").p, Vec3::Zero(), Vec3(0.6, 0.8, 0)) < 1e-15);
    CHECK(residue_identity_defect(preset("hyperbola").p, Vec3(2, 0, 0), Vec3(0, 1, 0)) < 1e-12);
    std::mt19937 rng(4);
    const auto p = preset("degree6").p;
    for (int i = 0; i < 20; ++i) {
      const Vec3 a = support::random_cavity_point(p, Vec3::Zero(), rng);
      CHECK(residue_identity_defect(p, a, support::random_unit(rng, 2)) < 1e-9);
    }
  }

  TEST_CASE("residue identity holds on random rays of every compact preset") {
    std::mt19937 rng(12);
    for (const char* name : {"circle", "degree6", "hypotrochoid", "sphere", "crystal", "hyperbola"}) {
      const auto pr = preset(name);
      for (int i = 0; i < 20; ++i) {
        const Vec3 a = support::random_cavity_point(pr.p, pr.point, rng);
        const auto w = support::random_unit(rng, pr.p.dim());
        if (ray_roots(pr.p, a, w).degenerate()) continue;
        CHECK(residue_identity_defect(pr.p, a, w) < 1e-8);
      }
    }
  }

  TEST_CASE("antipodal symmetry of the root profile") {
    std::mt19937 rng(2);
    for (const char* name : {"degree6", "hypotrochoid", "crystal"}) {
      const auto pr = preset(name);
      for (int i = 0; i < 20; ++i) {
        const Vec3 a = support::random_cavity_point(pr.p, pr.point, rng);
        const Vec3 w = support::random_unit(rng, pr.p.dim());
        const auto fwd = ray_roots(pr.p, a, w);
        const auto bwd = ray_roots(pr.p, a, -w);
        REQUIRE(fwd.balanced());
        REQUIRE(bwd.balanced());
        for (int k = 1; k <= fwd.mu; ++k) {
          CHECK(std::abs(bwd.t(k) + fwd.t(-k)) < 1e-9);
          CHECK(std::abs(bwd.t(-k) + fwd.t(k)) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("oscillation at one cavity point extends to other cavity points") {
    std::mt19937 rng(30);
    for (const char* name : {"degree6", "hypotrochoid", "hyperbola"}) {
      const auto pr = preset(name);
      for (int i = 0; i < 10; ++i) {
        const Vec3 b = support::random_cavity_point(pr.p, pr.point, rng, 0.95);
        CHECK(is_oscillatory_at(pr.p, b, QuadratureRule::half_circle(180)).oscillatory());
      }
    }
  }
}
