#pragma once

#include <filesystem>
#include <vector>

#include "osc/geometry.hpp"

namespace osc {

struct GaussianBump {
  Vec3 center = Vec3::Zero();
  double width = 0.1;  // standard deviation
  double amplitude = 1.0;
};

// Indicator of a ball. With smoothing > 0 the edge is a C^2 ramp of that
// width centred on the nominal radius.
struct BallBump {
  Vec3 center = Vec3::Zero();
  double radius = 0.1;
  double amplitude = 1.0;
  double smoothing = 0.0;
};

struct Phantom {
  int dim = 2;
  std::vector<GaussianBump> gaussians;
  std::vector<BallBump> balls;

  double value(const Vec3& x) const;
  double total_mass() const;
  bool empty() const { return gaussians.empty() && balls.empty(); }
  // Largest distance from x to the effective support (Gaussians cut at 4 widths).
  double max_support_distance(const Vec3& x) const;
};

// Throws unless the effective support lies inside the innermost oval seen from a.
void check_support_in_cavity(const Phantom& f, const Polynomial& p, const Vec3& a);

// Surface integral (not the mean) of f over the circle or sphere |x - xi| = r.
double sphere_integral(const Phantom& f, const Vec3& xi, double r);

// One center xi = a + t omega with its samples Rf(sqrt(sigma_i), xi).
struct SinogramColumn {
  int direction = 0;  // j
  int branch = 0;     // k in {-mu..-1, 1..mu}
  Vec3 omega = Vec3::Zero();
  double t = 0.0;
  double leray = 0.0;   // sign(t)|t|^{n-1} / p_t'
  double weight = 0.0;  // direction weight after degenerate-ray renormalization
  std::vector<double> values;

  Vec3 center(const Vec3& a) const { return a + t * omega; }
};

struct Sinogram {
  int dim = 2;
  int degree = 2;
  int mu = 1;
  int n_sigma = 0;  // samples are sigma_i = i * d_sigma, i = 0..n_sigma
  double d_sigma = 0.0;
  int directions = 0;
  std::vector<SinogramColumn> columns;

  double sigma(int i) const { return i * d_sigma; }
  double sigma_max() const { return n_sigma * d_sigma; }
};

// Geometry-only sinogram with zero-filled columns.
Sinogram sinogram_layout(const Polynomial& p, const Vec3& a, const QuadratureRule& rule, double d_sigma, int n_sigma);

Sinogram simulate_sinogram(const Phantom& f, const Polynomial& p, const Vec3& a, const QuadratureRule& rule,
                           double d_sigma, int n_sigma);

// Header line "n,m,mu,n_sigma,d_sigma,directions" with its values, then one
// row per column: j,k,omega...,t,leray_weight,weight,v_0..v_N. An optional
// leading "kind=<name>" line tags boundary traces.
void write_sinogram_csv(const Sinogram& s, const std::filesystem::path& path, const std::string& kind = "");
Sinogram read_sinogram_csv(const std::filesystem::path& path, std::string* kind = nullptr);

}  // namespace osc
