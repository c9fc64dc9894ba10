#include <cmath>
#include <numbers>

#include "common.hpp"
#include "doctest.h"
#include "osc/errors.hpp"
#include "osc/sigma_ops.hpp"

using namespace osc;
using std::numbers::pi;

namespace {

std::vector<double> column(int n, double h, const std::function<double(double)>& rf_of_r) {
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = rf_of_r(std::sqrt(i * h));
  return v;
}

// Symmetric-excision midpoint rule for PV int_0^top h(sigma)/(s2 - sigma):
// s2 falls on a cell boundary so the singular cells pair up.
double pv_oracle(const std::function<double(double)>& h, double s2, double top, int cells) {
  const double dx = top / cells;
  double s = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double x = (i + 0.5) * dx;
    s += h(x) / (s2 - x);
  }
  return s * dx;
}

}  // namespace

TEST_SUITE("fbp_inversion") {
  TEST_CASE("filters are exact on low powers of r") {
    const double h = 0.01;
    const auto f2 = radial_filter_column(column(64, h, [](double r) { return r * r * r; }), h, 2);
    for (double v : f2) CHECK(v == doctest::Approx(2.0).epsilon(1e-9));
    const auto f3 = radial_filter_column(column(64, h, [](double r) { return std::pow(r, 5); }), h, 3);
    for (double v : f3) CHECK(v == doctest::Approx(8.0).epsilon(1e-8));
  }

  TEST_CASE("the filter rejects grids that are too coarse") {
    CHECK_THROWS_AS(radial_filter_column(std::vector<double>(8, 0.0), 0.1, 3), InputError);
    ReconstructionConfig bad;
    bad.interpolation = 2;
    CHECK_THROWS_AS(bad.validate(), InputError);
  }

  TEST_CASE("three-dimensional filter of a Gaussian matches analytic derivatives") {
    // Gaussian of width s at distance d from the center: Rf/r = K phi(r) with
    // phi = E(r - d) - E(r + d), E(u) = exp(-u^2 / 2s^2), and the filter
    // 4 d^2/dsigma^2 turns into K (phi''/r^2 - phi'/r^3).
    const double s = 0.15, d = 1.0, A = 1.0, K = 2 * pi * A * s * s / d;
    const int n = 512;
    const double h = 4.2 / n;
    auto E = [&](double u) { return std::exp(-u * u / (2 * s * s)); };
    auto dE = [&](double u) { return -u / (s * s) * E(u); };
    auto d2E = [&](double u) { return (u * u / (s * s * s * s) - 1 / (s * s)) * E(u); };
    const auto rf = column(n, h, [&](double r) { return K * r * (E(r - d) - E(r + d)); });
    const auto got = radial_filter_column(rf, h, 3);
    double peak = 0.0;
    std::vector<double> want(got.size());
    for (int i = 4; i < n - 4; ++i) {
      const double r = std::sqrt(i * h);
      const double p1 = dE(r - d) - dE(r + d);
      const double p2 = d2E(r - d) - d2E(r + d);
      want[static_cast<std::size_t>(i)] = K * (p2 / (r * r) - p1 / (r * r * r));
      peak = std::max(peak, std::abs(want[static_cast<std::size_t>(i)]));
    }
    for (int i = 4; i < n - 4; ++i) {
      const auto k = static_cast<std::size_t>(i);
      CHECK(std::abs(got[k] - want[k]) <= 1e-5 * peak);
    }
  }

  TEST_CASE("principal value examples") {
    const double h = 2.0 / 200;
    std::vector<double> ones(201, 1.0);
    CHECK(std::abs(pv_transform(ones, h, 1.0, 2 * h)) < 1e-12);
    std::vector<double> ones3(301, 1.0);
    CHECK(pv_transform(ones3, h, 1.0, 2 * h) == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
    std::vector<double> lin(201);
    for (int i = 0; i <= 200; ++i) lin[static_cast<std::size_t>(i)] = i * h;
    const double oracle = pv_oracle([](double x) { return x; }, 1.0, 2.0, 1000000);
    CHECK(oracle == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(std::abs(pv_transform(lin, h, 1.0, 2 * h) - oracle) < 1e-6);
  }

  TEST_CASE("principal value of a smooth column off the nodes") {
    const int n = 400;
    const double h = 3.0 / n;
    std::vector<double> col(n + 1);
    for (int i = 0; i <= n; ++i) col[static_cast<std::size_t>(i)] = std::exp(-i * h) * std::sin(2 * i * h);
    for (double s2 : {0.3, 1.0, 1.7, 2.5}) {
      const double want = pv_oracle([](double x) { return std::exp(-x) * std::sin(2 * x); }, s2, 3.0, 3000000);
      CHECK(pv_transform(col, h, s2 + 0.37 * h, 2 * h) == doctest::Approx(
                pv_oracle([](double x) { return std::exp(-x) * std::sin(2 * x); }, s2 + 0.37 * h, 3.0, 3000000))
                .epsilon(1e-5));
      CHECK(pv_transform(col, h, s2, 2 * h) == doctest::Approx(want).epsilon(1e-6));
    }
    CHECK_THROWS_AS(pv_transform(col, h, h, 2 * h), NumericalError);
    CHECK_THROWS_AS(pv_transform(col, h, 3.0 - h, 2 * h), NumericalError);
  }

  TEST_CASE("nodal principal values agree with the pointwise transform") {
    const int n = 256;
    const double h = 2.0 / n;
    std::vector<double> col(n + 1);
    for (int i = 0; i <= n; ++i) col[static_cast<std::size_t>(i)] = std::exp(-3 * i * h) * (1 + i * h);
    const auto nodes = pv_nodes(col, h);
    for (int i = 3; i <= n - 3; ++i) {
      CHECK(std::abs(nodes[static_cast<std::size_t>(i)] - pv_transform(col, h, i * h, 2 * h)) < 1e-8);
    }
  }

  TEST_CASE("zero data reconstructs to zero") {
    Phantom none;
    none.dim = 2;
    const auto pr = preset("circle");
    const auto s = simulate_sinogram(none, pr.p, pr.point, QuadratureRule::half_circle(20), 0.02, 100);
    const auto g = reconstruct(s, pr.p, pr.point, GridSpec::square(-1, 1, 16));
    for (double v : g.values) CHECK(v == 0.0);
  }

  TEST_CASE("two-dimensional reconstruction on the unit circle") {
    const auto pr = preset("circle");
    const auto f = common::gaussian(2, Vec3(0.2, 0.1, 0), 0.12);
    const auto grid = GridSpec::square(-1, 1, 64);
    const auto s = common::simulate(f, pr.p, pr.point, QuadratureRule::half_circle(120), 384);
    const auto g = reconstruct(s, pr.p, pr.point, grid);
    CHECK(relative_l2(g.values, common::sample(f, grid)) < 0.03);
    // Peak value and sign.
    CHECK(g.max() == doctest::Approx(1.0).epsilon(0.05));
  }

  TEST_CASE("two-dimensional reconstruction on the degree-6 oval") {
    const auto pr = preset("degree6");
    const auto f = common::gaussian(2, Vec3(0.2, 0.1, 0), 0.12);
    const auto grid = GridSpec::square(-1, 1, 64);
    const auto s = common::simulate(f, pr.p, pr.point, QuadratureRule::half_circle(180), 512);
    const auto g = reconstruct(s, pr.p, pr.point, grid);
    CHECK(relative_l2(g.values, common::sample(f, grid)) < 0.07);
  }

  TEST_CASE("three-dimensional reconstruction of a centered Gaussian") {
    const auto pr = preset("sphere");
    const auto f = common::gaussian(3, Vec3::Zero(), 0.15);
    const auto grid = GridSpec::cube(-0.6, 0.6, 15);
    const auto s = common::simulate(f, pr.p, pr.point, QuadratureRule::hemisphere(10, 20), 256);
    const auto g = reconstruct(s, pr.p, pr.point, grid);
    const auto truth = common::sample(f, grid);
    const double true_peak = *std::max_element(truth.begin(), truth.end());
    CHECK(g.max() / true_peak == doctest::Approx(1.0).epsilon(0.02));
    CHECK(relative_l2(g.values, truth) < 0.05);
  }

  TEST_CASE("reconstruction is linear in the data") {
    const auto pr = preset("degree6");
    const auto grid = GridSpec::square(-0.8, 0.8, 12);
    const auto rule = QuadratureRule::half_circle(30);
    const auto s1 = common::simulate(common::gaussian(2, Vec3(0.1, 0, 0), 0.12, 1.0), pr.p, pr.point, rule, 128);
    auto s2 = s1;
    for (auto& c : s2.columns)
      for (double& v : c.values) v *= -2.5;
    const auto g1 = reconstruct(s1, pr.p, pr.point, grid);
    const auto g2 = reconstruct(s2, pr.p, pr.point, grid);
    for (std::size_t i = 0; i < g1.size(); ++i) CHECK(std::abs(g2.values[i] + 2.5 * g1.values[i]) <= 1e-12 * (1 + std::abs(g1.values[i])));
  }

  TEST_CASE("pixels on Z and outside the cavity are zero and flagged") {
    const auto pr = preset("circle");
    GridSpec on_z;
    on_z.lo = {0.5, -0.5, 0};
    on_z.hi = {1.5, 0.5, 0};
    on_z.res = {1, 1, 1};
    const auto s = common::simulate(common::gaussian(2, Vec3(0.2, 0.1, 0), 0.12), pr.p, pr.point,
                                    QuadratureRule::half_circle(16), 64);
    const auto g = reconstruct(s, pr.p, pr.point, on_z);
    CHECK(g.values[0] == 0.0);
    CHECK(g.flags[0] != 0);
    const auto wide = reconstruct(s, pr.p, pr.point, GridSpec::square(-1.5, 1.5, 12));
    for (std::size_t i = 0; i < wide.size(); ++i) {
      if (wide.spec.center(i).norm() > 1.0) {
        CHECK(wide.values[i] == 0.0);
        CHECK(wide.flags[i] != 0);
      }
    }
  }

  TEST_CASE("error decreases under refinement") {
    const auto pr = preset("circle");
    const auto f = common::gaussian(2, Vec3(0.2, 0.1, 0), 0.12);
    double prev = 1e9;
    for (int level = 0; level < 3; ++level) {
      const int scale = 1 << level;
      const auto grid = GridSpec::square(-1, 1, 16 * scale);
      const auto s = common::simulate(f, pr.p, pr.point, QuadratureRule::half_circle(24 * scale), 64 * scale);
      const double err = relative_l2(reconstruct(s, pr.p, pr.point, grid).values, common::sample(f, grid));
      CHECK(err < prev);
      prev = err;
    }
  }

  TEST_CASE("default normalizations") {
    CHECK(default_normalization(3) == doctest::Approx(1.0 / (4 * pi * pi)));
    CHECK(default_normalization(2) == doctest::Approx(1.0 / (2 * pi * pi)));
  }
}
