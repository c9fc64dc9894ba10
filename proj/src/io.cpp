#include "osc/io.hpp"

#include <fstream>
#include <sstream>

#include "osc/errors.hpp"

namespace osc {

namespace {

constexpr const char* kModule = "cli_app";

std::string strip_comment(const std::string& line) { return line.substr(0, line.find('#')); }

std::vector<double> numbers(std::istringstream& in, const std::string& where) {
  std::vector<double> v;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError(kModule, where + ": bad number '" + tok + "'");
    }
  }
  return v;
}

}  // namespace

Geometry parse_geometry(std::istream& in, const std::string& source) {
  std::ostringstream poly_text;
  std::optional<Vec3> point;
  std::vector<double> coords;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(strip_comment(line));
    std::string head;
    if ((ls >> head) && head == "point") {
      coords = numbers(ls, source + ":" + std::to_string(lineno));
      if (coords.size() != 2 && coords.size() != 3) {
        throw InputError(kModule, source + ":" + std::to_string(lineno) + ": point needs 2 or 3 coordinates");
      }
      point = Vec3(coords[0], coords[1], coords.size() == 3 ? coords[2] : 0.0);
      poly_text << '\n';  // keeps line numbers aligned for the polynomial parser
    } else {
      poly_text << line << '\n';
    }
  }
  std::istringstream poly_in(poly_text.str());
  Geometry g{parse_polynomial(poly_in, source), point};
  if (point && static_cast<int>(coords.size()) != g.p.dim()) {
    throw InputError(kModule, source + ": point dimension differs from the polynomial");
  }
  return g;
}

Geometry load_geometry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(kModule, "cannot open " + path.string());
  return parse_geometry(in, path.string());
}

Polynomial load_polynomial(const std::filesystem::path& path) { return load_geometry(path).p; }

void save_polynomial(const Polynomial& p, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError(kModule, "cannot open " + path.string());
  write_polynomial(out, p);
}

Phantom parse_phantom(std::istream& in, int dim, const std::string& source) {
  Phantom f;
  f.dim = dim;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    std::istringstream ls(strip_comment(line));
    std::string kind;
    if (!(ls >> kind)) continue;
    const auto v = numbers(ls, where);
    const auto need = static_cast<std::size_t>(dim + 2);
    Vec3 c = Vec3::Zero();
    if (v.size() >= static_cast<std::size_t>(dim)) {
      for (int a = 0; a < dim; ++a) c[a] = v[a];
    }
    if (kind == "gaussian") {
      if (v.size() != need) throw InputError(kModule, where + ": gaussian needs centre, width, amplitude");
      if (!(v[dim] > 0)) throw InputError(kModule, where + ": gaussian width must be positive");
      f.gaussians.push_back({c, v[dim], v[dim + 1]});
    } else if (kind == "ball") {
      if (v.size() != need && v.size() != need + 1) {
        throw InputError(kModule, where + ": ball needs centre, radius, amplitude [, smoothing]");
      }
      if (!(v[dim] > 0)) throw InputError(kModule, where + ": ball radius must be positive");
      const double smooth = v.size() == need + 1 ? v[need] : 0.0;
      if (smooth < 0 || smooth > v[dim]) throw InputError(kModule, where + ": smoothing must lie in [0, radius]");
      f.balls.push_back({c, v[dim], v[dim + 1], smooth});
    } else {
      throw InputError(kModule, where + ": unknown phantom component '" + kind + "'");
    }
  }
  return f;
}

Phantom load_phantom(const std::filesystem::path& path, int dim) {
  std::ifstream in(path);
  if (!in) throw InputError(kModule, "cannot open " + path.string());
  return parse_phantom(in, dim, path.string());
}

}  // namespace osc
