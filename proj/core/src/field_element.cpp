#include "affbuild/field_element.hpp"

#include <cctype>

namespace affbuild {

FieldElement::FieldElement(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error("field element with zero denominator");
  normalize();
}

FieldElement FieldElement::monomial(int a, int b, const Rational& c) {
  Polynomial num = Polynomial::monomial({a > 0 ? a : 0, b > 0 ? b : 0}, c);
  Polynomial den = Polynomial::monomial({a < 0 ? -a : 0, b < 0 ? -b : 0});
  FieldElement r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

void FieldElement::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    const Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
  }
  const Rational lc = den_.leading_coefficient();
  if (lc != 1) {
    num_ = num_.scaled(Rational(1) / lc);
    den_ = den_.scaled(Rational(1) / lc);
  }
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  if (is_zero() || o.is_zero()) return *this = FieldElement();
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= o.inverse(); }

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  r.num_ = -r.num_;
  return r;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error("inverse of zero in the function field");
  FieldElement r;
  r.num_ = den_;
  r.den_ = num_;
  r.normalize();
  return r;
}

FieldElement FieldElement::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  FieldElement r;
  r.num_ = num_.pow(static_cast<unsigned>(k));
  r.den_ = den_.pow(static_cast<unsigned>(k));
  return r;
}

int FieldElement::sign() const {
  if (is_zero()) return 0;
  return affbuild::sign(num_.leading_coefficient());
}

std::string FieldElement::str(FieldKind kind) const {
  const bool single = kind == FieldKind::RationalT;
  if (den_ == Polynomial(1)) return num_.str(single);
  const std::string n = num_.str(single), d = den_.str(single);
  const bool wrap_n = num_.terms().size() > 1;
  const bool wrap_d = den_.terms().size() > 1 || d.find('*') != std::string::npos;
  return (wrap_n ? "(" + n + ")" : n) + "/" + (wrap_d ? "(" + d + ")" : d);
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, FieldKind kind) : text_(text), kind_(kind) {}

  FieldElement parse() {
    FieldElement e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, std::string(text_.substr(std::min(pos_, text_.size()))));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  FieldElement expression() {
    FieldElement acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  FieldElement term() {
    FieldElement acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        FieldElement d = factor();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  FieldElement factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    FieldElement base = primary();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      const int k = std::stoi(std::string(text_.substr(start, pos_ - start)));
      base = base.pow(k);
    }
    return base;
  }

  FieldElement primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      FieldElement e = expression();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Rational q;
      q.get_num() = mpz_class(std::string(text_.substr(start, pos_ - start)));
      return FieldElement(q);
    }
    if (kind_ == FieldKind::RationalT && c == 't') {
      ++pos_;
      return FieldElement::variable(0);
    }
    if (kind_ == FieldKind::RationalXY && (c == 'X' || c == 'Y')) {
      ++pos_;
      return FieldElement::variable(c == 'X' ? 0 : 1);
    }
    fail("unknown symbol");
  }

  std::string_view text_;
  FieldKind kind_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldElement parse_field_element(std::string_view text, FieldKind kind) { return Parser(text, kind).parse(); }

}  // namespace affbuild
