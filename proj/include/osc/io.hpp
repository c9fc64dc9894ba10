#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "osc/forward.hpp"
#include "osc/poly.hpp"

namespace osc {

// A polynomial file optionally carrying a base point line "point x y [z]".
struct Geometry {
  Polynomial p;
  std::optional<Vec3> point;
};

Geometry parse_geometry(std::istream& in, const std::string& source);
Geometry load_geometry(const std::filesystem::path& path);
Polynomial load_polynomial(const std::filesystem::path& path);
void save_polynomial(const Polynomial& p, const std::filesystem::path& path);

// Phantom text format, one component per line:
//   gaussian cx cy [cz] width amplitude
//   ball cx cy [cz] radius amplitude [smoothing]
Phantom parse_phantom(std::istream& in, int dim, const std::string& source);
Phantom load_phantom(const std::filesystem::path& path, int dim);

}  // namespace osc
