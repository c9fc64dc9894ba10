#include "osc/presets.hpp"

#include "osc/errors.hpp"

namespace osc {

namespace {

Polynomial radius_squared(int dim) {
  Polynomial r(dim);
  for (int i = 0; i < dim; ++i) {
    Exponent e{0, 0, 0};
    e[i] = 2;
    r.add_term(e, 1.0);
  }
  return r;
}

}  // namespace

std::vector<std::string> preset_names() { return {"circle", "sphere", "degree6", "hypotrochoid", "crystal", "hyperbola"}; }

Preset preset(const std::string& name) {
  Preset out;
  out.name = name;
  if (name == "circle" || name == "sphere") {
    const int dim = name == "circle" ? 2 : 3;
    out.p = radius_squared(dim) - Polynomial::constant(dim, 1.0);
    out.q = Polynomial::constant(dim, 2.0);
    return out;
  }
  if (name == "degree6") {
    // (x^2+y^2)^3 - 12(x^2+y^2)^2 + 7x^2y^2 + 30(x^2+y^2) - 20
    const Polynomial r2 = radius_squared(2);
    out.p = r2 * r2 * r2 - 12.0 * (r2 * r2) + Polynomial(2, {{{2, 2, 0}, 7.0}}) + 30.0 * r2 -
            Polynomial::constant(2, 20.0);
    return out;
  }
  if (name == "hypotrochoid") {
    const Polynomial r2 = radius_squared(2);
    out.p = 4.0 * (r2 * r2) + Polynomial(2, {{{3, 0, 0}, -4.0}, {{1, 2, 0}, 12.0}}) - 27.0 * r2 +
            Polynomial::constant(2, 27.0);
    out.q = 4.0 * r2 - Polynomial::constant(2, 9.0);
    return out;
  }
  if (name == "crystal") {
    // (s1 x^2 + s2 y^2 + s3 z^2)|x|^2 - (s2+s3)s1 x^2 - (s1+s3)s2 y^2 - (s1+s2)s3 z^2 + s1 s2 s3,
    // s = (1, 2, 4). q is its Euler separator at the origin.
    const Polynomial s = Polynomial(3, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 2.0}, {{0, 0, 2}, 4.0}});
    out.p = s * radius_squared(3) - Polynomial(3, {{{2, 0, 0}, 6.0}, {{0, 2, 0}, 10.0}, {{0, 0, 2}, 12.0}}) +
            Polynomial::constant(3, 8.0);
    out.q = Polynomial(3, {{{2, 0, 0}, 12.0}, {{0, 2, 0}, 20.0}, {{0, 0, 2}, 24.0}}) - Polynomial::constant(3, 32.0);
    return out;
  }
  if (name == "hyperbola") {
    out.p = Polynomial(2, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, -1.0}}) - Polynomial::constant(2, 1.0);
    out.point = Vec3(2.0, 0.0, 0.0);
    return out;
  }
  throw InputError("presets", "unknown preset '" + name + "'");
}

}  // namespace osc
