#include "osc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "osc/errors.hpp"

namespace osc {

namespace {
constexpr const char* kModule = "grid";
}

GridSpec GridSpec::square(double lo, double hi, int n) {
  GridSpec s;
  s.dim = 2;
  s.lo = {lo, lo, 0.0};
  s.hi = {hi, hi, 0.0};
  s.res = {n, n, 1};
  return s;
}

GridSpec GridSpec::cube(double lo, double hi, int n) {
  GridSpec s;
  s.dim = 3;
  s.lo = {lo, lo, lo};
  s.hi = {hi, hi, hi};
  s.res = {n, n, n};
  return s;
}

void GridSpec::validate() const {
  if (dim != 2 && dim != 3) throw InputError(kModule, "grid dimension must be 2 or 3");
  for (int i = 0; i < dim; ++i) {
    if (res[i] < 1) throw InputError(kModule, "grid resolution must be positive");
    if (!(hi[i] > lo[i])) throw InputError(kModule, "grid box must have hi > lo on every axis");
  }
  if (dim == 2 && res[2] != 1) throw InputError(kModule, "2D grid must have res[2] == 1");
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(res[i]);
  return n;
}

Vec3 GridSpec::center(std::size_t flat) const {
  Vec3 x = Vec3::Zero();
  for (int axis = 0; axis < dim; ++axis) {
    const auto i = static_cast<int>(flat % static_cast<std::size_t>(res[axis]));
    flat /= static_cast<std::size_t>(res[axis]);
    x[axis] = lo[axis] + (i + 0.5) * spacing(axis);
  }
  return x;
}

std::size_t GridSpec::flat_index(int i, int j, int k) const {
  return static_cast<std::size_t>(i) +
         static_cast<std::size_t>(res[0]) * (static_cast<std::size_t>(j) + static_cast<std::size_t>(res[1]) * k);
}

ScalarGrid::ScalarGrid(const GridSpec& s) : spec(s), values(s.size(), 0.0), flags(s.size(), 0) {}

double ScalarGrid::min() const { return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end()); }
double ScalarGrid::max() const { return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end()); }

double relative_l2(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw InputError(kModule, "relative_l2 size mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(num / den);
}

void write_grid(const ScalarGrid& g, const std::filesystem::path& path, GridFormat format) {
  for (double v : g.values) {
    if (!std::isfinite(v)) throw InputError(kModule, "refusing to write a grid with non-finite values");
  }
  if (format == GridFormat::csv) {
    std::ofstream out(path);
    if (!out) throw InputError(kModule, "cannot open " + path.string());
    out.precision(17);
    out << (g.spec.dim == 2 ? "x,y,value\n" : "x,y,z,value\n");
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Vec3 x = g.spec.center(i);
      for (int a = 0; a < g.spec.dim; ++a) out << x[a] << ',';
      out << g.values[i] << '\n';
    }
    if (!out) throw InputError(kModule, "write failed for " + path.string());
    return;
  }

  if (g.spec.dim != 2) throw InputError(kModule, "pgm16 output needs a 2D grid");
  const double lo = g.min();
  const double hi = g.max();
  const int w = g.spec.res[0];
  const int h = g.spec.res[1];
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(kModule, "cannot open " + path.string());
  out << "P5\n" << w << ' ' << h << "\n65535\n";
  // Top row of the image is the largest y.
  for (int j = h - 1; j >= 0; --j) {
    for (int i = 0; i < w; ++i) {
      const double v = g.values[g.spec.flat_index(i, j)];
      const double s = hi > lo ? (v - lo) / (hi - lo) : 0.0;
      const auto q = static_cast<unsigned>(std::lround(std::clamp(s, 0.0, 1.0) * 65535.0));
      const char bytes[2] = {static_cast<char>((q >> 8) & 0xff), static_cast<char>(q & 0xff)};
      out.write(bytes, 2);
    }
  }
  if (!out) throw InputError(kModule, "write failed for " + path.string());
  std::ofstream side(path.string() + ".scale");
  side.precision(17);
  side << "min " << lo << "\nmax " << hi << '\n';
}

ScalarGrid read_grid_csv(const std::filesystem::path& path, const GridSpec& spec) {
  std::ifstream in(path);
  if (!in) throw InputError(kModule, "cannot open " + path.string());
  ScalarGrid g(spec);
  std::string line;
  std::getline(in, line);
  std::size_t i = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (i >= g.size()) throw InputError(kModule, path.string() + ": more rows than the grid spec");
    const auto comma = line.rfind(',');
    g.values[i++] = std::stod(line.substr(comma + 1));
  }
  if (i != g.size()) throw InputError(kModule, path.string() + ": fewer rows than the grid spec");
  return g;
}

}  // namespace osc
