#include "osc/forward.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "osc/errors.hpp"

namespace osc {

namespace {

constexpr const char* kModule = "forward_model";
constexpr double kPi = std::numbers::pi;
// exp(-x^2/2) < 3e-18 beyond this many widths.
constexpr double kGaussCut = 9.0;
constexpr double kGaussSupport = 4.0;

double smootherstep(double s) {
  s = std::clamp(s, 0.0, 1.0);
  return s * s * s * (s * (6.0 * s - 15.0) + 10.0);
}

double ball_profile(const BallBump& b, double rho) {
  if (b.smoothing <= 0.0) return rho < b.radius ? b.amplitude : 0.0;
  return b.amplitude * smootherstep((b.radius + 0.5 * b.smoothing - rho) / b.smoothing);
}

template <class F>
double gk(F f, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 12, 1e-11);
}

// Integral over |x - xi| = r of a radial profile g(|x - c|) that vanishes for
// |x - c| >= rho_max. `breaks` are radii where g is not smooth.
template <class Profile>
double radial_sphere_integral(int dim, const Vec3& c, const Vec3& xi, double r, double rho_max,
                              std::vector<double> breaks, Profile g) {
  if (r <= 0.0) return 0.0;
  const double d = (xi - c).norm();
  if (d <= 1e-12 * std::max(1.0, r)) {
    return r < rho_max ? sphere_area(dim) * std::pow(r, dim - 1) * g(r) : 0.0;
  }
  const double lo = std::abs(d - r);
  const double hi = std::min(d + r, rho_max);
  if (lo >= hi) return 0.0;
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());

  double sum = 0.0;
  if (dim == 3) {
    // Spherical shells about c cut the sphere in caps: dS = 2 pi r rho / d drho.
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const double a = std::max(breaks[i], lo);
      const double b = std::min(breaks[i + 1], hi);
      sum += gk([&](double rho) { return g(rho) * rho; }, a, b);
    }
    return 2.0 * kPi * r / d * sum;
  }
  // Polar angle theta about the axis xi -> c; rho grows with theta.
  // The interval ends map to 0 and pi exactly; acos near +-1 would lose a
  // sliver of width sqrt(eps) there.
  auto theta_of = [&](double rho) {
    if (rho == lo) return 0.0;
    if (rho == d + r) return kPi;
    return std::acos(std::clamp((d * d + r * r - rho * rho) / (2.0 * d * r), -1.0, 1.0));
  };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = std::max(breaks[i], lo);
    const double b = std::min(breaks[i + 1], hi);
    if (!(b > a)) continue;
    sum += gk([&](double th) { return g(std::sqrt(std::max(0.0, d * d + r * r - 2.0 * d * r * std::cos(th)))); },
              theta_of(a), theta_of(b));
  }
  return 2.0 * r * sum;
}

// Exact measure of the part of the sphere |x - xi| = r inside the ball |x - c| < R.
double ball_cut_measure(int dim, double d, double r, double R) {
  if (r <= 0.0) return 0.0;
  if (r + d <= R) return sphere_area(dim) * std::pow(r, dim - 1);
  if (r >= R + d || r <= d - R) return 0.0;
  if (dim == 3) return kPi * r * (R * R - (d - r) * (d - r)) / d;
  return 2.0 * r * std::acos(std::clamp((d * d + r * r - R * R) / (2.0 * d * r), -1.0, 1.0));
}

}  // namespace

double Phantom::value(const Vec3& x) const {
  double v = 0.0;
  for (const auto& g : gaussians) {
    const double q = (x - g.center).squaredNorm() / (g.width * g.width);
    v += g.amplitude * std::exp(-0.5 * q);
  }
  for (const auto& b : balls) v += ball_profile(b, (x - b.center).norm());
  return v;
}

double Phantom::total_mass() const {
  double m = 0.0;
  for (const auto& g : gaussians) m += g.amplitude * std::pow(std::sqrt(2.0 * kPi) * g.width, dim);
  for (const auto& b : balls) {
    if (b.smoothing <= 0.0) {
      m += b.amplitude * (dim == 2 ? kPi * b.radius * b.radius : 4.0 / 3.0 * kPi * std::pow(b.radius, 3));
    } else {
      const double hi = b.radius + 0.5 * b.smoothing;
      m += sphere_area(dim) *
           gk([&](double rho) { return ball_profile(b, rho) * std::pow(rho, dim - 1); }, 0.0, hi);
    }
  }
  return m;
}

double Phantom::max_support_distance(const Vec3& x) const {
  double d = 0.0;
  for (const auto& g : gaussians) d = std::max(d, (x - g.center).norm() + kGaussSupport * g.width);
  for (const auto& b : balls) d = std::max(d, (x - b.center).norm() + b.radius + 0.5 * b.smoothing);
  return d;
}

void check_support_in_cavity(const Phantom& f, const Polynomial& p, const Vec3& a) {
  if (f.dim != p.dim()) throw InputError(kModule, "phantom and polynomial dimensions differ");
  const auto dirs = f.dim == 2 ? QuadratureRule::half_circle(32) : QuadratureRule::hemisphere(6, 12);
  auto check = [&](const Vec3& c, double radius) {
    if (!inside_inner_oval(p, a, c)) throw InputError(kModule, "phantom component centre lies outside the cavity");
    for (const auto& w : dirs.nodes) {
      if (!inside_inner_oval(p, a, c + radius * w) || !inside_inner_oval(p, a, c - radius * w)) {
        throw InputError(kModule, "phantom support leaves the hyperbolic cavity");
      }
    }
  };
  for (const auto& g : f.gaussians) check(g.center, kGaussSupport * g.width);
  for (const auto& b : f.balls) check(b.center, b.radius + 0.5 * b.smoothing);
}

double sphere_integral(const Phantom& f, const Vec3& xi, double r) {
  if (r < 0.0) throw InputError(kModule, "negative radius");
  double s = 0.0;
  for (const auto& g : f.gaussians) {
    const double w2 = g.width * g.width;
    s += radial_sphere_integral(f.dim, g.center, xi, r, kGaussCut * g.width, {},
                                [&](double rho) { return g.amplitude * std::exp(-0.5 * rho * rho / w2); });
  }
  for (const auto& b : f.balls) {
    if (b.smoothing <= 0.0) {
      s += b.amplitude * ball_cut_measure(f.dim, (xi - b.center).norm(), r, b.radius);
    } else {
      const double e = 0.5 * b.smoothing;
      s += radial_sphere_integral(f.dim, b.center, xi, r, b.radius + e, {b.radius - e},
                                  [&](double rho) { return ball_profile(b, rho); });
    }
  }
  return s;
}

Sinogram sinogram_layout(const Polynomial& p, const Vec3& a, const QuadratureRule& rule, double d_sigma, int n_sigma) {
  if (!(d_sigma > 0.0)) throw InputError(kModule, "d_sigma must be positive");
  if (n_sigma < 1) throw InputError(kModule, "n_sigma must be positive");
  const auto bundle = trace_rays(p, a, rule, kModule);
  Sinogram s;
  s.dim = p.dim();
  s.degree = p.degree();
  s.mu = s.degree / 2;
  s.n_sigma = n_sigma;
  s.d_sigma = d_sigma;
  s.directions = static_cast<int>(rule.size());
  for (std::size_t jr = 0; jr < bundle.rays.size(); ++jr) {
    const auto& ray = bundle.rays[jr];
    for (std::size_t i = 0; i < ray.roots.size(); ++i) {
      SinogramColumn col;
      col.direction = bundle.indices[jr];
      const int pos = static_cast<int>(i) - ray.num_negative;
      col.branch = pos < 0 ? pos : pos + 1;
      col.omega = ray.direction;
      col.t = ray.roots[i];
      col.leray = leray_weight(ray.roots[i], ray.derivs[i], s.dim);
      col.weight = bundle.weights[jr];
      col.values.assign(static_cast<std::size_t>(n_sigma) + 1, 0.0);
      s.columns.push_back(std::move(col));
    }
  }
  return s;
}

Sinogram simulate_sinogram(const Phantom& f, const Polynomial& p, const Vec3& a, const QuadratureRule& rule,
                           double d_sigma, int n_sigma) {
  if (f.dim != p.dim()) throw InputError(kModule, "phantom and polynomial dimensions differ");
  check_support_in_cavity(f, p, a);
  Sinogram s = sinogram_layout(p, a, rule, d_sigma, n_sigma);
  const auto ncol = static_cast<std::int64_t>(s.columns.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t c = 0; c < ncol; ++c) {
    auto& col = s.columns[static_cast<std::size_t>(c)];
    const Vec3 xi = col.center(a);
    for (int i = 1; i <= n_sigma; ++i) col.values[i] = sphere_integral(f, xi, std::sqrt(s.sigma(i)));
  }
  return s;
}

void write_sinogram_csv(const Sinogram& s, const std::filesystem::path& path, const std::string& kind) {
  std::ofstream out(path);
  if (!out) throw InputError(kModule, "cannot open " + path.string());
  out.precision(17);
  if (!kind.empty()) out << "kind=" << kind << '\n';
  out << "n,m,mu,n_sigma,d_sigma,directions\n";
  out << s.dim << ',' << s.degree << ',' << s.mu << ',' << s.n_sigma << ',' << s.d_sigma << ',' << s.directions
      << '\n';
  out << "j,k";
  const char* axes[] = {"omega_x", "omega_y", "omega_z"};
  for (int a = 0; a < s.dim; ++a) out << ',' << axes[a];
  out << ",t,leray_weight,weight";
  for (int i = 0; i <= s.n_sigma; ++i) out << ",v" << i;
  out << '\n';
  for (const auto& c : s.columns) {
    out << c.direction << ',' << c.branch;
    for (int a = 0; a < s.dim; ++a) out << ',' << c.omega[a];
    out << ',' << c.t << ',' << c.leray << ',' << c.weight;
    for (double v : c.values) out << ',' << v;
    out << '\n';
  }
  if (!out) throw InputError(kModule, "write failed for " + path.string());
}

Sinogram read_sinogram_csv(const std::filesystem::path& path, std::string* kind) {
  std::ifstream in(path);
  if (!in) throw InputError(kModule, "cannot open " + path.string());
  const std::string where = path.string();
  std::string line;
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) throw InputError(kModule, where + ": missing " + what);
  };
  auto split = [](const std::string& l) {
    std::vector<std::string> parts;
    std::stringstream ss(l);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    return parts;
  };
  auto num = [&](const std::string& txt) {
    try {
      std::size_t used = 0;
      const double v = std::stod(txt, &used);
      if (used != txt.size()) throw std::invalid_argument(txt);
      return v;
    } catch (const std::exception&) {
      throw InputError(kModule, where + ": bad number '" + txt + "'");
    }
  };

  next("header");
  if (line.rfind("kind=", 0) == 0) {
    if (kind) *kind = line.substr(5);
    next("header");
  }
  if (line != "n,m,mu,n_sigma,d_sigma,directions") throw InputError(kModule, where + ": unexpected header");
  next("header values");
  const auto h = split(line);
  if (h.size() != 6) throw InputError(kModule, where + ": header needs 6 values");
  Sinogram s;
  s.dim = static_cast<int>(num(h[0]));
  s.degree = static_cast<int>(num(h[1]));
  s.mu = static_cast<int>(num(h[2]));
  s.n_sigma = static_cast<int>(num(h[3]));
  s.d_sigma = num(h[4]);
  s.directions = static_cast<int>(num(h[5]));
  if (s.dim != 2 && s.dim != 3) throw InputError(kModule, where + ": dimension must be 2 or 3");
  if (s.n_sigma < 1 || !(s.d_sigma > 0.0)) throw InputError(kModule, where + ": bad sigma grid");
  next("column header");
  const std::size_t width = 2 + static_cast<std::size_t>(s.dim) + 3 + static_cast<std::size_t>(s.n_sigma) + 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != width) throw InputError(kModule, where + ": row has the wrong number of fields");
    SinogramColumn c;
    c.direction = static_cast<int>(num(f[0]));
    c.branch = static_cast<int>(num(f[1]));
    std::size_t i = 2;
    for (int a = 0; a < s.dim; ++a) c.omega[a] = num(f[i++]);
    c.t = num(f[i++]);
    c.leray = num(f[i++]);
    c.weight = num(f[i++]);
    for (; i < f.size(); ++i) c.values.push_back(num(f[i]));
    s.columns.push_back(std::move(c));
  }
  return s;
}

}  // namespace osc
