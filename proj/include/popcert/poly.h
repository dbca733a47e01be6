// Sparse multivariate polynomials with exact rational coefficients.
#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "popcert/rational.h"

namespace popcert {

/// Exponent vector over an ambient variable list.
struct Monomial {
  std::vector<int> exps;

  Monomial() = default;
  explicit Monomial(std::vector<int> e) : exps(std::move(e)) {}
  static Monomial One(std::size_t num_vars) { return Monomial(std::vector<int>(num_vars, 0)); }

  int degree() const;
  std::size_t size() const { return exps.size(); }
  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order: lower total degree first; within a degree,
/// larger exponents on earlier variables first (1, x1, x2, x1^2, x1 x2, ...).
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> vars);
  /// Sums coefficients of repeated monomials; drops zeros.
  Polynomial(std::vector<std::string> vars, std::span<const std::pair<Monomial, Rational>> terms);

  static Polynomial Constant(const Rational& c, std::vector<std::string> vars = {});
  static Polynomial Variable(const std::string& name);

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_vars() const { return vars_.size(); }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Max total degree over terms; 0 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Rational coefficient(const Monomial& m) const;
  int var_index(std::string_view name) const;  // -1 when absent
  Rational max_abs_coefficient() const;

  /// Re-expresses this polynomial over `vars`, which must contain every variable of *this.
  Polynomial AlignedTo(const std::vector<std::string>& vars) const;
  /// Fixes `var` to `value` and removes it from the variable list.
  Polynomial Substitute(std::string_view var, const Rational& value) const;

  Rational Evaluate(std::span<const Rational> point) const;
  double Evaluate(std::span<const double> point) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scale);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator+(Polynomial a, const Rational& c);
  friend Polynomial operator+(const Rational& c, Polynomial a) { return std::move(a) + c; }
  friend Polynomial operator-(Polynomial a, const Rational& c) { return std::move(a) + Rational(-c); }
  friend Polynomial operator-(const Rational& c, const Polynomial& a) { return -a + c; }

  /// Exact equality of the represented functions (variable lists may differ).
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial Pow(unsigned exponent) const;

  /// "2/3*x1^4 - 1" style rendering for diagnostics.
  std::string ToText() const;

 private:
  void AddTerm(const Monomial& m, const Rational& c);
  void ExtendVars(const std::vector<std::string>& more);

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Union of variable lists, first-seen order.
std::vector<std::string> UnionVars(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// newvar^deg(p) * p(x / newvar); the new variable is placed first.
Polynomial Homogenize(const Polynomial& p, const std::string& newvar);

/// Nonzero homogeneous parts of p, by ascending degree.
std::vector<std::pair<int, Polynomial>> HomogeneousComponents(const Polynomial& p);

/// Sum of squares of the named variables (or of all of p's when empty).
Polynomial SumOfSquares(const std::vector<std::string>& vars);

/// Reads the structured polynomial document {"vars": [...], "terms": [{"c": "n/d", "e": [...]}]}.
Polynomial ParsePoly(std::string_view text);
/// Canonical single-line serialization (terms in graded lexicographic order).
std::string SerializePoly(const Polynomial& p);

}  // namespace popcert
