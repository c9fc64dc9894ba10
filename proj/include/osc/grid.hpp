#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "osc/poly.hpp"

namespace osc {

// Axis-aligned box sampled at cell centers.
struct GridSpec {
  int dim = 2;
  std::array<double, 3> lo{0, 0, 0};
  std::array<double, 3> hi{0, 0, 0};
  std::array<int, 3> res{1, 1, 1};

  static GridSpec square(double lo, double hi, int n);  // 2D
  static GridSpec cube(double lo, double hi, int n);    // 3D

  void validate() const;
  std::size_t size() const;
  double spacing(int axis) const { return (hi[axis] - lo[axis]) / res[axis]; }
  Vec3 center(std::size_t flat) const;
  std::size_t flat_index(int i, int j, int k = 0) const;
};

struct ScalarGrid {
  GridSpec spec;
  std::vector<double> values;
  // Nonzero where the cell was excluded (outside the cavity, or on Z).
  std::vector<std::uint8_t> flags;

  explicit ScalarGrid(const GridSpec& s = {});
  std::size_t size() const { return values.size(); }
  double min() const;
  double max() const;
};

// Relative discrete L2 distance ||a - b|| / ||b||.
double relative_l2(const std::vector<double>& a, const std::vector<double>& b);

enum class GridFormat { csv, pgm16 };

// CSV: header "x,y[,z],value", 17 significant digits.
// PGM16: binary P5 with maxval 65535, affine map min->0, max->65535; the
// (min, max) pair goes to a sidecar "<path>.scale" text file.
void write_grid(const ScalarGrid& g, const std::filesystem::path& path, GridFormat format);
// Reads a CSV written by write_grid back; the spec must match the file.
ScalarGrid read_grid_csv(const std::filesystem::path& path, const GridSpec& spec);

}  // namespace osc
