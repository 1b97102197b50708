#pragma once

// Sparse polynomials over Q in at most two variables X (index 0) and Y
// (index 1). The one-variable field Q(t) stores t in the X slot.

#include <array>
#include <functional>
#include <map>
#include <string>

#include "affbuild/rational.hpp"

namespace affbuild {

using Exponent = std::array<int, 2>;

class Polynomial {
 public:
  // Descending lexicographic order with X dominant: begin() is the leading term.
  using TermMap = std::map<Exponent, Rational, std::greater<Exponent>>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial monomial(Exponent e, const Rational& c = 1);
  static Polynomial variable(int index) { return monomial(index == 0 ? Exponent{1, 0} : Exponent{0, 1}); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const TermMap& terms() const { return terms_; }
  const Exponent& leading_exponent() const;
  const Rational& leading_coefficient() const;
  int degree(int var) const;
  bool depends_on(int var) const { return degree(var) > 0; }
  /// Smallest exponent of `var` occurring (0 for constants).
  int low_degree(int var) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;
  Polynomial times_monomial(Exponent e) const;
  Polynomial pow(unsigned k) const;

  /// Exact quotient a / d; throws Error when d does not divide a.
  Polynomial exact_div(const Polynomial& d) const;

  /// Coefficient of var^k as a polynomial in the other variable.
  Polynomial coefficient(int var, int k) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  std::string str(bool single_variable = false) const;

 private:
  TermMap terms_;
};

/// Greatest common divisor, normalized to leading coefficient 1 (0 iff both zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// a scaled so its leading coefficient is 1 (0 stays 0).
Polynomial monic(const Polynomial& a);

}  // namespace affbuild
