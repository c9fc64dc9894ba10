#pragma once

#include <optional>
#include <string>
#include <vector>

#include "osc/poly.hpp"

namespace osc {

// Built-in geometries. The same data ships as text files under presets/.
struct Preset {
  std::string name;
  Polynomial p;
  Vec3 point = Vec3::Zero();       // a point of the hyperbolic cavity
  std::optional<Polynomial> q;     // separator, where one is part of the example
};

// circle, sphere, degree6, hypotrochoid, crystal, hyperbola
Preset preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace osc
