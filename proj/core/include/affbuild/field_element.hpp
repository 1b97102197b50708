#pragma once

#include <string>
#include <string_view>

#include "affbuild/polynomial.hpp"

namespace affbuild {

/// The two exactly represented function fields.
enum class FieldKind {
  RationalT,   ///< Q(t), t stored in the X slot
  RationalXY,  ///< Q(X, Y)
};

/// Element of Q(X, Y) (or its subfield Q(t) = Q(X)) in reduced form:
/// gcd(num, den) = 1 and den has leading coefficient 1. Equality is
/// structural.
class FieldElement {
 public:
  FieldElement() : den_(1) {}
  FieldElement(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  FieldElement(int c) : FieldElement(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  FieldElement(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  FieldElement(Polynomial num, Polynomial den);

  static FieldElement variable(int index) { return FieldElement(Polynomial::variable(index)); }
  /// X^a Y^b for arbitrary integers a, b.
  static FieldElement monomial(int a, int b, const Rational& c = 1);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool depends_on(int var) const { return num_.depends_on(var) || den_.depends_on(var); }

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(int k) const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Sign for the order in which X >> Y >> Q (and t >> Q): the sign of the
  /// leading coefficient of the numerator.
  int sign() const;

  std::string str(FieldKind kind = FieldKind::RationalXY) const;

 private:
  void normalize();

  Polynomial num_;
  Polynomial den_;
};

/// Parses signed Q-coefficient expressions in t (RationalT) or X, Y
/// (RationalXY) with ^, *, +, -, / and parentheses. Rejects zero
/// denominators and foreign variables.
FieldElement parse_field_element(std::string_view text, FieldKind kind);

}  // namespace affbuild
