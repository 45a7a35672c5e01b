#pragma once

// Sparse multivariate polynomials with rational coefficients.

#include <map>
#include <string>
#include <vector>

#include "mcilp/arith.hpp"

namespace mcilp {

using Exponent = std::vector<unsigned>;

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  /// sum_i y_i^degree
  static Polynomial power_sum(std::size_t nvars, unsigned degree);

  [[nodiscard]] std::size_t nvars() const { return nvars_; }
  [[nodiscard]] const std::map<Exponent, Rational>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] unsigned degree() const;
  /// True iff every monomial has total degree exactly `d` (zero counts as homogeneous).
  [[nodiscard]] bool is_homogeneous(unsigned d) const;

  /// Adds c * y^e; zero coefficients are dropped.
  void add_term(const Exponent& e, const Rational& c);

  [[nodiscard]] Rational evaluate(std::span<const Int> v) const;
  [[nodiscard]] Rational evaluate(const RatVec& v) const;

  /// p(offset + M * mu) as a polynomial in mu, where M is nvars x cols.
  [[nodiscard]] Polynomial compose_affine(std::span<const Int> offset, const IntMat& m, std::size_t cols) const;
  /// p(y - shift) expanded.
  [[nodiscard]] Polynomial shifted(std::span<const Int> shift) const;

  [[nodiscard]] Polynomial pow(unsigned s) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// `coef:e1,e2,...;coef:...` (the format read by `parse`).
  [[nodiscard]] std::string to_string() const;
  static Polynomial parse(const std::string& text, std::size_t nvars);

 private:
  std::size_t nvars_ = 0;
  std::map<Exponent, Rational> terms_;
};

/// Parses `p` or `p/q` (optionally signed) into a canonical rational.
Rational parse_rational(const std::string& text);

}  // namespace mcilp
