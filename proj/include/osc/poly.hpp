#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace osc {

// Points live in R^3; two-dimensional objects keep z = 0.
using Vec3 = Eigen::Vector3d;

using Exponent = std::array<int, 3>;

// Sparse real polynomial in 2 or 3 variables.
//
// Terms are keyed by exponent multi-index and never hold a zero coefficient.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int dim);
  Polynomial(int dim, std::initializer_list<std::pair<Exponent, double>> terms);

  static Polynomial constant(int dim, double c);
  // The coordinate function x_axis.
  static Polynomial coordinate(int dim, int axis);

  int dim() const { return dim_; }
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, double>& terms() const { return terms_; }
  double coefficient(const Exponent& e) const;
  double max_abs_coefficient() const;

  // Accumulates coeff into the term with exponent e; drops it if it cancels.
  void add_term(const Exponent& e, double coeff);

  // Unchecked evaluation; components beyond dim() are ignored.
  double value(const Vec3& x) const;
  Vec3 gradient(const Vec3& x) const;
  // Sum of |c|·|x^e|, the natural scale for residual tolerances at x.
  double magnitude(const Vec3& x) const;

  Polynomial derivative(int axis) const;
  Polynomial homogeneous_part(int degree) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

 private:
  int dim_ = 2;
  std::map<Exponent, double> terms_;
};

// Polynomial in one variable, coefficients in ascending powers.
struct UnivariatePoly {
  std::vector<double> coeffs;
  // Set when the nominal degree dropped (leading coefficients vanished).
  bool degenerate = false;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double operator()(double t) const;
  // Value and first derivative by Horner's scheme.
  std::pair<double, double> value_and_derivative(double t) const;
  UnivariatePoly derivative() const;
  double scale() const;
};

struct RealRoot {
  double value;
  int multiplicity;
};

// Checked evaluation: x.size() must equal p.dim().
double eval(const Polynomial& p, std::span<const double> x);
std::vector<double> gradient(const Polynomial& p, std::span<const double> x);

// Convert a coordinate list to a padded point after checking its dimension.
Vec3 to_point(std::span<const double> x, int dim, const char* module);

// t -> p(a + t*omega) by exact multinomial expansion. omega must be a unit
// vector. Leading coefficients below 1e-12 times the coefficient scale are
// trimmed and the result is flagged degenerate when its degree falls below
// deg p.
UnivariatePoly restrict_to_line(const Polynomial& p, const Vec3& a, const Vec3& omega);

// All real roots in ascending order, with multiplicities. Simple roots are
// polished until |u(t)| <= tol * sum_i |c_i||t|^i.
std::vector<RealRoot> real_roots(const UnivariatePoly& u, double tol = 1e-12);

// Text format: one term per line, "coeff e1 e2 [e3]"; '#' starts a comment.
Polynomial parse_polynomial(std::istream& in, const std::string& source = "<stream>");
Polynomial parse_polynomial(const std::string& text);
void write_polynomial(std::ostream& out, const Polynomial& p);
std::string to_string(const Polynomial& p);

}  // namespace osc
