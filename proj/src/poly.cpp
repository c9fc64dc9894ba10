#include "osc/poly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <unsupported/Eigen/Polynomials>

#include "osc/errors.hpp"

namespace osc {

namespace {

constexpr const char* kModule = "poly_core";

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double result() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

constexpr int kMaxPower = 64;

// powers[i][k] = x_i^k for k <= max exponent.
struct PowerTable {
  std::array<std::array<double, kMaxPower + 1>, 3> pw;
  PowerTable(const Vec3& x, int max_exp) {
    for (int i = 0; i < 3; ++i) {
      pw[i][0] = 1.0;
      for (int k = 1; k <= max_exp; ++k) pw[i][k] = pw[i][k - 1] * x[i];
    }
  }
  double monomial(const Exponent& e) const { return pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]]; }
};

int max_exponent(const std::map<Exponent, double>& terms) {
  int m = 0;
  for (const auto& [e, c] : terms) m = std::max({m, e[0], e[1], e[2]});
  return m;
}

void check_dim(int dim) {
  if (dim != 2 && dim != 3) throw InputError(kModule, "dimension must be 2 or 3, got " + std::to_string(dim));
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(int dim) : dim_(dim) { check_dim(dim); }

Polynomial::Polynomial(int dim, std::initializer_list<std::pair<Exponent, double>> terms) : dim_(dim) {
  check_dim(dim);
  for (const auto& [e, c] : terms) add_term(e, c);
}

Polynomial Polynomial::constant(int dim, double c) {
  Polynomial p(dim);
  p.add_term({0, 0, 0}, c);
  return p;
}

Polynomial Polynomial::coordinate(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw InputError(kModule, "coordinate axis out of range");
  Polynomial p(dim);
  Exponent e{0, 0, 0};
  e[axis] = 1;
  p.add_term(e, 1.0);
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

double Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void Polynomial::add_term(const Exponent& e, double coeff) {
  for (int i = 0; i < 3; ++i) {
    if (e[i] < 0) throw InputError(kModule, "negative exponent");
    if (i >= dim_ && e[i] != 0) throw InputError(kModule, "exponent on a variable beyond the dimension");
    if (e[i] > kMaxPower) throw InputError(kModule, "exponent too large");
  }
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(e, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::value(const Vec3& x) const {
  PowerTable table(x, max_exponent(terms_));
  CompensatedSum sum;
  for (const auto& [e, c] : terms_) sum.add(c * table.monomial(e));
  return sum.result();
}

double Polynomial::magnitude(const Vec3& x) const {
  PowerTable table(x, max_exponent(terms_));
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += std::abs(c * table.monomial(e));
  return s;
}

Vec3 Polynomial::gradient(const Vec3& x) const {
  PowerTable table(x, max_exponent(terms_));
  Vec3 g = Vec3::Zero();
  for (int axis = 0; axis < dim_; ++axis) {
    CompensatedSum sum;
    for (const auto& [e, c] : terms_) {
      if (e[axis] == 0) continue;
      Exponent d = e;
      d[axis] -= 1;
      sum.add(c * e[axis] * table.monomial(d));
    }
    g[axis] = sum.result();
  }
  return g;
}

Polynomial Polynomial::derivative(int axis) const {
  if (axis < 0 || axis >= dim_) throw InputError(kModule, "derivative axis out of range");
  Polynomial d(dim_);
  for (const auto& [e, c] : terms_) {
    if (e[axis] == 0) continue;
    Exponent f = e;
    f[axis] -= 1;
    d.add_term(f, c * e[axis]);
  }
  return d;
}

Polynomial Polynomial::homogeneous_part(int degree) const {
  Polynomial h(dim_);
  for (const auto& [e, c] : terms_) {
    if (e[0] + e[1] + e[2] == degree) h.add_term(e, c);
  }
  return h;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.dim_ != dim_) throw InputError(kModule, "dimension mismatch in polynomial sum");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.dim_ != dim_) throw InputError(kModule, "dimension mismatch in polynomial difference");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.dim_ != b.dim_) throw InputError(kModule, "dimension mismatch in polynomial product");
  Polynomial r(a.dim_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// UnivariatePoly

double UnivariatePoly::operator()(double t) const {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
  return v;
}

std::pair<double, double> UnivariatePoly::value_and_derivative(double t) const {
  double v = 0.0;
  double d = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    d = d * t + v;
    v = v * t + *it;
  }
  return {v, d};
}

UnivariatePoly UnivariatePoly::derivative() const {
  UnivariatePoly d;
  for (std::size_t i = 1; i < coeffs.size(); ++i) d.coeffs.push_back(coeffs[i] * static_cast<double>(i));
  if (d.coeffs.empty()) d.coeffs.push_back(0.0);
  return d;
}

double UnivariatePoly::scale() const {
  double s = 0.0;
  for (double c : coeffs) s = std::max(s, std::abs(c));
  return s;
}

// ---------------------------------------------------------------------------
// Operations

Vec3 to_point(std::span<const double> x, int dim, const char* module) {
  if (static_cast<int>(x.size()) != dim) {
    throw InputError(module, "point has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(dim));
  }
  Vec3 v = Vec3::Zero();
  for (int i = 0; i < dim; ++i) v[i] = x[i];
  return v;
}

double eval(const Polynomial& p, std::span<const double> x) { return p.value(to_point(x, p.dim(), kModule)); }

std::vector<double> gradient(const Polynomial& p, std::span<const double> x) {
  const Vec3 g = p.gradient(to_point(x, p.dim(), kModule));
  return {g.data(), g.data() + p.dim()};
}

UnivariatePoly restrict_to_line(const Polynomial& p, const Vec3& a, const Vec3& omega) {
  if (std::abs(omega.norm() - 1.0) > 1e-12) throw InputError(kModule, "restrict_to_line needs a unit direction");
  const int m = p.degree();
  std::vector<double> acc(m + 1, 0.0);
  std::vector<double> term;
  std::vector<double> factor;
  std::vector<double> next;
  for (const auto& [e, c] : p.terms()) {
    term.assign(1, c);
    for (int i = 0; i < p.dim(); ++i) {
      const int k = e[i];
      if (k == 0) continue;
      // (a_i + t w_i)^k
      factor.assign(k + 1, 0.0);
      for (int j = 0; j <= k; ++j) {
        factor[j] = binomial(k, j) * std::pow(a[i], k - j) * std::pow(omega[i], j);
      }
      next.assign(term.size() + k, 0.0);
      for (std::size_t r = 0; r < term.size(); ++r) {
        for (int j = 0; j <= k; ++j) next[r + j] += term[r] * factor[j];
      }
      term.swap(next);
    }
    for (std::size_t r = 0; r < term.size(); ++r) acc[r] += term[r];
  }

  UnivariatePoly u;
  u.coeffs = std::move(acc);
  const double scale = u.scale();
  while (u.coeffs.size() > 1 && std::abs(u.coeffs.back()) <= 1e-12 * scale) u.coeffs.pop_back();
  u.degenerate = u.degree() < m;
  return u;
}

namespace {

// Newton iteration on u; returns true when the residual test passes.
bool polish(const UnivariatePoly& u, double& t, double tol) {
  for (int it = 0; it < 60; ++it) {
    const auto [v, d] = u.value_and_derivative(t);
    double mag = 0.0;
    double tp = 1.0;
    for (double c : u.coeffs) {
      mag += std::abs(c) * tp;
      tp *= std::abs(t);
    }
    if (std::abs(v) <= tol * mag) return true;
    if (d == 0.0 || !std::isfinite(d)) return false;
    const double step = v / d;
    t -= step;
    if (!std::isfinite(t)) return false;
    if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      const double r = std::abs(u(t));
      return r <= std::max(tol, 1e-10) * mag;
    }
  }
  return false;
}

// Bisection fallback on a sign change near t.
bool bracket_and_bisect(const UnivariatePoly& u, double& t) {
  const double h = 1e-6 * std::max(1.0, std::abs(t));
  double lo = t - h;
  double hi = t + h;
  double flo = u(lo);
  double fhi = u(hi);
  if (flo == 0.0) {
    t = lo;
    return true;
  }
  if (fhi == 0.0) {
    t = hi;
    return true;
  }
  if ((flo < 0) == (fhi < 0)) return false;
  for (int it = 0; it < 200 && hi - lo > 2 * std::numeric_limits<double>::epsilon() * std::abs(t); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = u(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  t = 0.5 * (lo + hi);
  return true;
}

std::vector<std::complex<double>> companion_eigenvalues(const std::vector<double>& c) {
  // Balanced companion matrix; keeps moderate roots accurate next to huge ones.
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())));
  const auto& r = solver.roots();
  return {r.data(), r.data() + r.size()};
}

}  // namespace

std::vector<RealRoot> real_roots(const UnivariatePoly& u, double tol) {
  std::vector<double> c = u.coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.empty()) throw InputError(kModule, "real_roots of the zero polynomial");

  std::vector<RealRoot> out;
  std::size_t zeros = 0;
  while (c[zeros] == 0.0) ++zeros;
  if (zeros > 0) out.push_back({0.0, static_cast<int>(zeros)});
  std::vector<double> d(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end());
  UnivariatePoly reduced{d, false};
  const int n = reduced.degree();
  if (n == 0) return out;

  std::vector<std::complex<double>> eig;
  if (n == 1) {
    eig.emplace_back(-d[0] / d[1], 0.0);
  } else {
    eig = companion_eigenvalues(d);
  }
  std::sort(eig.begin(), eig.end(), [](auto x, auto y) { return x.real() < y.real(); });

  // A root of multiplicity k shows up as a ring of k eigenvalues of radius
  // about eps^(1/k), partly off the real axis; gather nearby eigenvalues in
  // the complex plane and decide on realness per cluster.
  std::vector<std::vector<std::complex<double>>> clusters;
  for (const auto& z : eig) {
    bool joined = false;
    for (auto& cl : clusters) {
      std::complex<double> mean = 0.0;
      for (const auto& w : cl) mean += w;
      mean /= static_cast<double>(cl.size());
      if (std::abs(z - mean) <= 1e-4 * std::max(1.0, std::abs(z))) {
        cl.push_back(z);
        joined = true;
        break;
      }
    }
    if (!joined) clusters.push_back({z});
  }

  auto is_real = [](std::complex<double> z) { return std::abs(z.imag()) <= 1e-5 * std::max(1.0, std::abs(z)); };
  auto add_simple = [&](double t) {
    if (polish(reduced, t, tol) || bracket_and_bisect(reduced, t)) out.push_back({t, 1});
  };
  for (const auto& cl : clusters) {
    const int k = static_cast<int>(cl.size());
    std::complex<double> mean = 0.0;
    for (const auto& w : cl) mean += w;
    mean /= static_cast<double>(k);
    if (k == 1) {
      if (is_real(mean)) add_simple(mean.real());
      continue;
    }
    if (is_real(mean)) {
      // Multiple root: it is a simple root of the (k-1)-th derivative.
      UnivariatePoly dk = reduced;
      for (int i = 0; i < k - 1; ++i) dk = dk.derivative();
      double r = mean.real();
      if (!polish(dk, r, tol)) r = mean.real();
      const double mag = reduced.scale() * std::pow(std::max(1.0, std::abs(r)), n);
      if (std::abs(reduced(r)) <= 1e-10 * mag) {
        out.push_back({r, k});
        continue;
      }
    }
    // Not a genuine multiple root: close simple roots or near-real conjugates.
    for (const auto& w : cl) {
      if (is_real(w)) add_simple(w.real());
    }
  }

  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  return out;
}

// ---------------------------------------------------------------------------
// Text format

Polynomial parse_polynomial(std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 0;
  int dim = 0;
  std::vector<std::pair<Exponent, double>> terms;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    const auto where = source + ":" + std::to_string(lineno);
    if (tokens.size() != 3 && tokens.size() != 4) {
      throw InputError(kModule, where + ": expected 'coeff e1 e2 [e3]'");
    }
    const int line_dim = static_cast<int>(tokens.size()) - 1;
    if (dim == 0) dim = line_dim;
    if (line_dim != dim) throw InputError(kModule, where + ": inconsistent number of exponents");
    double coeff = 0.0;
    std::size_t used = 0;
    try {
      coeff = std::stod(tokens[0], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tokens[0].size() || !std::isfinite(coeff)) {
      throw InputError(kModule, where + ": bad coefficient '" + tokens[0] + "'");
    }
    Exponent e{0, 0, 0};
    for (int i = 0; i < dim; ++i) {
      const std::string& tok = tokens[i + 1];
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 3) {
        throw InputError(kModule, where + ": bad exponent '" + tok + "'");
      }
      e[i] = std::stoi(tok);
    }
    terms.emplace_back(e, coeff);
  }
  if (dim == 0) throw InputError(kModule, source + ": no terms");
  Polynomial p(dim);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

Polynomial parse_polynomial(const std::string& text) {
  std::istringstream in(text);
  return parse_polynomial(in, "<string>");
}

void write_polynomial(std::ostream& out, const Polynomial& p) {
  const auto old = out.precision(17);
  for (const auto& [e, c] : p.terms()) {
    out << c;
    for (int i = 0; i < p.dim(); ++i) out << ' ' << e[i];
    out << '\n';
  }
  out.precision(old);
}

std::string to_string(const Polynomial& p) {
  std::ostringstream os;
  write_polynomial(os, p);
  return os.str();
}

}  // namespace osc
