#pragma once

#include <filesystem>

#include "osc/forward.hpp"
#include "osc/grid.hpp"

namespace osc {

// Wave data recorded on Z, sampled at t_i = sqrt(tau_i) with tau_i = i * d_sigma.
// Columns reuse the sinogram layout (centers, Leray weights).
struct BoundaryTrace {
  enum class Kind { pressure, filtered };
  Kind kind = Kind::pressure;
  Sinogram data;

  const char* kind_name() const { return kind == Kind::pressure ? "u" : "v"; }
};

// Step (i): free-space field of the initial pressure f at the sensors.
//   n = 3: u = Rf(t) / (4 pi t)
//   n = 2: u = (1/4pi) int_0^tau Sf(sigma) / sqrt(tau - sigma) dsigma, Sf = Rf/r
// The recording lasts until T^2 = horizon * sigma_max; the sinogram is taken
// to vanish past sigma_max. Zero selects the default: 2 for n = 2, where
// the field has a slowly decaying tail, and 1 for n = 3 (Huygens).
BoundaryTrace transmit(const Sinogram& s, double horizon = 0.0);

// Step (ii): v = -(d/dt)(2/t)(d/dt) u = -8 t d^2u/dtau^2.
BoundaryTrace filtrate(const BoundaryTrace& u);

// Step (iii): back-propagate v from every sensor and sum against dxi/dp.
ScalarGrid retransmit(const BoundaryTrace& v, const Polynomial& p, const Vec3& a, const GridSpec& grid);

// Step (iv): f = -2 p g.
ScalarGrid tr_reconstruct(const Sinogram& s, const Polynomial& p, const Vec3& a, const GridSpec& grid,
                          double horizon = 0.0);

void write_trace_csv(const BoundaryTrace& tr, const std::filesystem::path& path);
BoundaryTrace read_trace_csv(const std::filesystem::path& path);

}  // namespace osc
