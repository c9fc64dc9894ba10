#pragma once

// Shared fixtures for the reconstruction suites.

#include "osc/fbp.hpp"
#include "osc/forward.hpp"
#include "osc/presets.hpp"

namespace common {

using namespace osc;

inline Phantom gaussian(int dim, Vec3 c, double w, double a = 1.0) {
  Phantom f;
  f.dim = dim;
  f.gaussians.push_back({c, w, a});
  return f;
}

// Sigma range covering every center's reach into the support, with a margin.
inline Sinogram simulate(const Phantom& f, const Polynomial& p, const Vec3& a, const QuadratureRule& rule, int n_sigma,
                         double margin = 1.05) {
  const auto layout = sinogram_layout(p, a, rule, 1.0, n_sigma);
  double reach = 0.0;
  for (const auto& c : layout.columns) reach = std::max(reach, f.max_support_distance(c.center(a)));
  return simulate_sinogram(f, p, a, rule, margin * reach * reach / n_sigma, n_sigma);
}

inline std::vector<double> sample(const Phantom& f, const GridSpec& g) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = f.value(g.center(i));
  return v;
}

}  // namespace common
