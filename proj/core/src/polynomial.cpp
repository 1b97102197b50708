#include "affbuild/polynomial.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace affbuild {

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Exponent{0, 0}, c);
}

Polynomial Polynomial::monomial(Exponent e, const Rational& c) {
  if (e[0] < 0 || e[1] < 0) throw Error("negative exponent in polynomial monomial");
  Polynomial p;
  if (c != 0) p.terms_.emplace(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0});
}

const Exponent& Polynomial::leading_exponent() const {
  if (terms_.empty()) throw Error("leading exponent of the zero polynomial");
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw Error("leading coefficient of the zero polynomial");
  return terms_.begin()->second;
}

int Polynomial::degree(int var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int Polynomial::low_degree(int var) const {
  if (terms_.empty()) return 0;
  int d = terms_.begin()->first[var];
  for (const auto& [e, c] : terms_) d = std::min(d, e[var]);
  return d;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(e, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      const Exponent e{ea[0] + eb[0], ea[1] + eb[1]};
      auto [it, inserted] = r.terms_.emplace(e, ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r;
  if (c == 0) return r;
  for (const auto& [e, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, x * c);
  return r;
}

Polynomial Polynomial::times_monomial(Exponent m) const {
  Polynomial r;
  for (const auto& [e, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), Exponent{e[0] + m[0], e[1] + m[1]}, x);
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::exact_div(const Polynomial& d) const {
  if (d.is_zero()) throw Error("polynomial division by zero");
  Polynomial q;
  Polynomial r = *this;
  const Exponent de = d.leading_exponent();
  const Rational& dc = d.leading_coefficient();
  while (!r.is_zero()) {
    const Exponent re = r.leading_exponent();
    const Exponent te{re[0] - de[0], re[1] - de[1]};
    if (te[0] < 0 || te[1] < 0) throw Error("inexact polynomial division");
    const Rational tc = r.leading_coefficient() / dc;
    q.terms_.emplace(te, tc);
    r -= d.times_monomial(te).scaled(tc);
  }
  return q;
}

Polynomial Polynomial::coefficient(int var, int k) const {
  Polynomial r;
  for (const auto& [e, c] : terms_) {
    if (e[var] != k) continue;
    Exponent rest = e;
    rest[var] = 0;
    r.terms_.emplace(rest, c);
  }
  return r;
}

std::string Polynomial::str(bool single_variable) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs_value(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool has_var = e[0] != 0 || e[1] != 0;
    bool need_star = false;
    if (!has_var || mag != 1) {
      os << to_string(mag);
      need_star = true;
    }
    auto emit = [&](const char* name, int k) {
      if (k == 0) return;
      if (need_star) os << '*';
      os << name;
      if (k != 1) os << '^' << k;
      need_star = true;
    };
    emit(single_variable ? "t" : "X", e[0]);
    emit("Y", e[1]);
  }
  return os.str();
}

Polynomial monic(const Polynomial& a) {
  if (a.is_zero()) return a;
  return a.scaled(Rational(1) / a.leading_coefficient());
}

namespace {

// Pseudo-remainder of a by b with respect to `var` (lc(b) is a polynomial in
// the other variable).
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, int var) {
  const int db = b.degree(var);
  const Polynomial lb = b.coefficient(var, db);
  while (!a.is_zero() && a.degree(var) >= db) {
    const int da = a.degree(var);
    const Polynomial la = a.coefficient(var, da);
    Exponent shift{0, 0};
    shift[var] = da - db;
    a = lb * a - (la * b).times_monomial(shift);
  }
  return a;
}

// Largest monomial dividing every term of both (one of them a monomial).
Polynomial monomial_gcd(const Polynomial& a, const Polynomial& b) {
  Exponent e = a.leading_exponent();
  for (const auto* p : {&a, &b})
    for (const auto& [te, c] : p->terms()) {
      e[0] = std::min(e[0], te[0]);
      e[1] = std::min(e[1], te[1]);
    }
  return Polynomial::monomial(e);
}

// Euclid in Q[var] with monic remainders; both inputs depend on var only.
Polynomial gcd_univariate(Polynomial a, Polynomial b, int var) {
  while (!b.is_zero()) {
    const int db = b.degree(var);
    const Rational lb = b.leading_coefficient();
    while (!a.is_zero() && a.degree(var) >= db) {
      Exponent shift{0, 0};
      shift[var] = a.degree(var) - db;
      a -= b.times_monomial(shift).scaled(a.leading_coefficient() / lb);
    }
    std::swap(a, b);
    b = monic(b);
  }
  return monic(a);
}

// Scales to integer coefficients with no common factor.
Polynomial integer_primitive(const Polynomial& a) {
  mpz_class den = 1, num = 0;
  for (const auto& [e, c] : a.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
  }
  return a.scaled(Rational(den) / Rational(num));
}

// gcd of polynomials in Y only (or constants), monic.
Polynomial gcd_in_y(const Polynomial& a, const Polynomial& b) { return gcd_univariate(a, b, 1); }

// Content with respect to X: gcd of the X-coefficients, an element of Q[Y].
Polynomial content_x(const Polynomial& a) {
  Polynomial g;
  const int d = a.degree(0);
  for (int k = d; k >= 0; --k) {
    Polynomial c = a.coefficient(0, k);
    if (c.is_zero()) continue;
    g = gcd_in_y(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

mpz_class max_norm(const Polynomial& a) {
  mpz_class m = 0;
  for (const auto& [e, c] : a.terms()) m = std::max(m, mpz_class(abs(c.get_num())));
  return m;
}

// a(var = xi) for integer coefficients; the result no longer depends on var.
Polynomial evaluate(const Polynomial& a, int var, const mpz_class& xi) {
  Polynomial r;
  for (const auto& [e, c] : a.terms()) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), xi.get_mpz_t(), static_cast<unsigned long>(e[var]));
    Exponent rest = e;
    rest[var] = 0;
    r += Polynomial::monomial(rest, c * Rational(p));
  }
  return r;
}

// Inverse of evaluate: each coefficient expanded in balanced base xi.
Polynomial interpolate(const Polynomial& g, int var, const mpz_class& xi) {
  Polynomial r;
  const mpz_class half = xi / 2;
  for (const auto& [e, c] : g.terms()) {
    mpz_class v = c.get_num();
    for (int k = 0; v != 0; ++k) {
      mpz_class d;
      mpz_fdiv_r(d.get_mpz_t(), v.get_mpz_t(), xi.get_mpz_t());
      if (d > half) d -= xi;
      Exponent te = e;
      te[var] = k;
      r += Polynomial::monomial(te, Rational(d));
      v = (v - d) / xi;
    }
  }
  return r;
}

bool divides(const Polynomial& d, const Polynomial& a) {
  try {
    (void)a.exact_div(d);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Integer content (positive) of a polynomial with integer coefficients.
mpz_class integer_content(const Polynomial& a) {
  mpz_class g = 0;
  for (const auto& [e, c] : a.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  return g;
}

// Heuristic gcd over Z of integer polynomials by evaluation at large
// integers; the answer is verified by trial division. nullopt when no
// attempt succeeds.
std::optional<Polynomial> gcd_heuristic(const Polynomial& a, const Polynomial& b, int var) {
  mpz_class c;
  const mpz_class ca = integer_content(a), cb = integer_content(b);
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  if (var < 0) return Polynomial(Rational(c));
  if (!a.depends_on(var) && !b.depends_on(var)) return gcd_heuristic(a, b, var - 1);
  const Polynomial pa = a.scaled(Rational(1) / Rational(ca)), pb = b.scaled(Rational(1) / Rational(cb));
  mpz_class xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    const Polynomial ea = evaluate(pa, var, xi), eb = evaluate(pb, var, xi);
    if (!ea.is_zero() && !eb.is_zero()) {
      if (auto gamma = gcd_heuristic(ea, eb, var - 1)) {
        const Polynomial g = integer_primitive(interpolate(*gamma, var, xi));
        if (!g.is_zero() && divides(g, pa) && divides(g, pb)) return g.scaled(Rational(c));
      }
    }
    xi = xi * 73794 / 27011 + 1;
  }
  return std::nullopt;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.terms().size() == 1 || b.terms().size() == 1) return monomial_gcd(a, b);
  if (!a.depends_on(0) && !b.depends_on(0)) return gcd_in_y(a, b);
  if (!a.depends_on(1) && !b.depends_on(1)) return gcd_univariate(a, b, 0);
  if (auto g = gcd_heuristic(integer_primitive(a), integer_primitive(b), 1)) return monic(*g);

  const Polynomial ca = content_x(a);
  const Polynomial cb = content_x(b);
  const Polynomial c = gcd_in_y(ca, cb);
  Polynomial pa = a.exact_div(ca);
  Polynomial pb = b.exact_div(cb);
  if (pa.degree(0) < pb.degree(0)) std::swap(pa, pb);
  while (!pb.is_zero() && pb.degree(0) > 0) {
    Polynomial r = pseudo_remainder(pa, pb, 0);
    pa = std::move(pb);
    pb = r.is_zero() ? r : integer_primitive(r.exact_div(content_x(r)));
  }
  // A nonzero X-free remainder of primitive polynomials means they are coprime.
  Polynomial g = pb.is_zero() ? pa : Polynomial(1);
  return monic(c * g);
}

}  // namespace affbuild
