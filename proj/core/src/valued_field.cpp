#include "affbuild/valued_field.hpp"

#include <algorithm>
#include <map>

namespace affbuild {

std::string ValuationSpec::name() const {
  switch (kind) {
    case ValuationKind::Degree: return "degree";
    case ValuationKind::LexMultidegree: return "lex-multidegree";
    case ValuationKind::FirstVariable: return "first-variable";
  }
  return "?";
}

ValuationSpec parse_valuation_spec(const std::string& name) {
  if (name == "degree" || name == "DEGREE") return {ValuationKind::Degree};
  if (name == "lex-multidegree" || name == "lex" || name == "LEX_MULTIDEG") return {ValuationKind::LexMultidegree};
  if (name == "first-variable" || name == "first-var" || name == "FIRST_VAR") return {ValuationKind::FirstVariable};
  throw ParseError("unknown valuation", name);
}

LexValue valuation(const ValuationSpec& spec, const FieldElement& x) {
  if (x.is_zero()) return LexValue::infinity(spec.value_rank());
  const Polynomial& p = x.numerator();
  const Polynomial& q = x.denominator();
  switch (spec.kind) {
    case ValuationKind::Degree:
    case ValuationKind::FirstVariable:
      return LexValue{Rational(q.degree(0) - p.degree(0))};
    case ValuationKind::LexMultidegree: {
      const Exponent& ep = p.leading_exponent();
      const Exponent& eq = q.leading_exponent();
      return LexValue{Rational(eq[0] - ep[0]), Rational(eq[1] - ep[1])};
    }
  }
  throw Error("unknown valuation kind");
}

bool in_valuation_ring(const ValuationSpec& spec, const FieldElement& x) {
  return valuation(spec, x) >= LexValue::zero(spec.value_rank());
}

bool is_unit(const ValuationSpec& spec, const FieldElement& x) {
  return valuation(spec, x) == LexValue::zero(spec.value_rank());
}

FieldElement element_with_valuation(const ValuationSpec& spec, const LexValue& lambda) {
  if (lambda.rank() != spec.value_rank()) throw DimensionError("valuation witness requested with wrong rank");
  if (!lambda.is_integral()) throw Error("value " + lambda.str() + " is not realized by a monomial");
  if (spec.kind == ValuationKind::LexMultidegree) {
    return FieldElement::monomial(static_cast<int>(-to_int64(lambda[0])), static_cast<int>(-to_int64(lambda[1])));
  }
  return FieldElement::monomial(static_cast<int>(-to_int64(lambda[0])), 0);
}

namespace {

// Terms c_e z^e (e >= min_exponent) of the expansion of num/den at z = infinity.
// Coefficient vectors are indexed by the power of z.
template <class T>
std::map<int, T> laurent_head(std::vector<T> num, const std::vector<T>& den, int min_exponent) {
  std::map<int, T> out;
  const int shift = std::max(0, -min_exponent);
  num.insert(num.begin(), static_cast<std::size_t>(shift), T(0));
  const int dd = static_cast<int>(den.size()) - 1;
  const T lead_inv = T(1) / den.back();
  for (int e = static_cast<int>(num.size()) - 1; e >= dd; --e) {
    const T& c = num[static_cast<std::size_t>(e)];
    if (c == T(0)) continue;
    const T f = c * lead_inv;
    for (int i = 0; i <= dd; ++i) num[static_cast<std::size_t>(e - dd + i)] -= f * den[static_cast<std::size_t>(i)];
    const int exponent = e - dd - shift;
    if (exponent >= min_exponent) out.emplace(exponent, f);
  }
  return out;
}

std::vector<FieldElement> x_coefficients(const Polynomial& p) {
  std::vector<FieldElement> c(static_cast<std::size_t>(p.degree(0)) + 1, FieldElement());
  for (int k = 0; k <= p.degree(0); ++k) c[static_cast<std::size_t>(k)] = FieldElement(p.coefficient(0, k));
  return c;
}

std::vector<Rational> y_coefficients(const Polynomial& p) {
  std::vector<Rational> c(static_cast<std::size_t>(p.degree(1)) + 1, Rational(0));
  for (const auto& [e, x] : p.terms()) c[static_cast<std::size_t>(e[1])] = x;
  return c;
}

}  // namespace

ResidueSplit reduce_modulo(const ValuationSpec& spec, const FieldElement& a, const LexValue& mu) {
  const FieldElement pivot = element_with_valuation(spec, mu);
  if (a.is_zero() || valuation(spec, a) >= mu) return {FieldElement(), a / pivot};

  const int mu1 = static_cast<int>(to_int64(mu[0]));
  const auto head = laurent_head(x_coefficients(a.numerator()), x_coefficients(a.denominator()), -mu1);
  FieldElement rep;
  for (const auto& [e, c] : head) {
    if (e > -mu1) {
      rep += c * FieldElement::monomial(e, 0);
    } else if (spec.kind == ValuationKind::LexMultidegree) {
      // Boundary X-power: keep the part of the Y-expansion below mu2.
      const int mu2 = static_cast<int>(to_int64(mu[1]));
      const auto yhead = laurent_head(y_coefficients(c.numerator()), y_coefficients(c.denominator()), -mu2 + 1);
      for (const auto& [f, d] : yhead) rep += FieldElement(d) * FieldElement::monomial(e, f);
    }
  }
  FieldElement quotient = (a - rep) / pivot;
  if (!in_valuation_ring(spec, quotient)) throw Error("internal: residue reduction left a non-integral quotient");
  return {rep, quotient};
}

Polynomial FieldSampler::polynomial(int max_degree, int max_terms) {
  Polynomial p;
  const int terms = integer(1, max_terms);
  for (int i = 0; i < terms; ++i) {
    const int a = integer(0, max_degree);
    const int b = kind_ == FieldKind::RationalXY ? integer(0, max_degree) : 0;
    Rational c = make_rational(integer(-3, 3), integer(1, 2));
    if (c == 0) c = 1;
    p += Polynomial::monomial({a, b}, c);
  }
  if (p.is_zero()) p = Polynomial(1);
  return p;
}

FieldElement FieldSampler::nonzero(int max_degree) {
  Polynomial num = polynomial(max_degree, 3);
  Polynomial den = integer(0, 2) == 0 ? Polynomial(1) : polynomial(max_degree, 3);
  return FieldElement(std::move(num), std::move(den));
}

FieldElement FieldSampler::any(int max_degree) {
  if (integer(0, 9) == 0) return FieldElement();
  return nonzero(max_degree);
}

FieldElement FieldSampler::unit(const ValuationSpec& spec, int max_degree) {
  const FieldElement x = nonzero(max_degree);
  return x / element_with_valuation(spec, valuation(spec, x));
}

FieldElement FieldSampler::integral(const ValuationSpec& spec, int max_degree) {
  if (integer(0, 7) == 0) return FieldElement();
  LexValue lambda;
  if (spec.value_rank() == 2) {
    const int a = integer(0, 2);
    lambda = LexValue{Rational(a), Rational(a == 0 ? integer(0, 2) : integer(-2, 2))};
  } else {
    lambda = LexValue{Rational(integer(0, 2))};
  }
  return unit(spec, max_degree) * element_with_valuation(spec, lambda);
}

LexValue FieldSampler::value(std::size_t rank, int bound) {
  RationalVector c(rank);
  for (auto& x : c) x = integer(-bound, bound);
  return LexValue(std::move(c));
}

nlohmann::json to_json(const CheckReport& r) {
  return {{"name", r.name},
          {"samples", r.samples},
          {"violations", r.violations},
          {"witnesses", r.witnesses},
          {"verdict", r.passed() ? "PASS" : "FAIL"}};
}

CheckReport valuation_axioms_check(const ValuationSpec& spec, std::size_t pairs, std::uint64_t seed) {
  CheckReport report{"valuation-axioms/" + spec.name()};
  FieldSampler sampler(spec.field(), seed);
  const auto kind = spec.field();
  for (std::size_t i = 0; i < pairs; ++i) {
    const FieldElement x = sampler.nonzero();
    // Every fourth pair exercises cancellation x + y = 0.
    const FieldElement y = i % 4 == 3 ? -x : sampler.nonzero();
    ++report.samples;
    const LexValue vx = valuation(spec, x);
    const LexValue vy = valuation(spec, y);
    if (valuation(spec, x * y) != vx + vy) report.fail("v(xy) != v(x)+v(y) at x=" + x.str(kind) + ", y=" + y.str(kind));
    if (valuation(spec, x + y) < std::min(vx, vy)) {
      report.fail("ultrametric violated at x=" + x.str(kind) + ", y=" + y.str(kind));
    }
  }
  if (valuation(spec, FieldElement(1)) != LexValue::zero(spec.value_rank())) report.fail("v(1) != 0");
  if (!valuation(spec, FieldElement()).is_infinite()) report.fail("v(0) != INFINITY");
  return report;
}

CheckReport is_order_compatible(const ValuationSpec& spec, std::size_t pairs, std::uint64_t seed) {
  CheckReport report{"order-compatibility/" + spec.name()};
  FieldSampler sampler(spec.field(), seed);
  for (std::size_t i = 0; i < pairs; ++i) {
    FieldElement x = sampler.nonzero();
    FieldElement y = sampler.nonzero();
    if (x.sign() < 0) x = -x;
    if (y.sign() < 0) y = -y;
    if ((y - x).sign() < 0) std::swap(x, y);
    ++report.samples;
    if (valuation(spec, x) < valuation(spec, y)) {
      report.fail("0 < x <= y but v(x) < v(y) at x=" + x.str(spec.field()) + ", y=" + y.str(spec.field()));
    }
  }
  return report;
}

Rational big_element_truncated_infimum(const FieldElement& x, int truncation) {
  if (x.is_zero()) throw Error("big-element valuation of zero");
  const FieldElement abs_x = x.sign() < 0 ? -x : x;
  const long bound = static_cast<long>(truncation) * truncation;
  std::optional<Rational> best;
  for (int q = 1; q <= truncation; ++q) {
    // |x|^q = n / d with d monic; |x|^q < X^p iff X^p d - n > 0 (p >= 0) or d - X^-p n > 0.
    const Polynomial n = abs_x.numerator().pow(static_cast<unsigned>(q));
    const Polynomial d = abs_x.denominator().pow(static_cast<unsigned>(q));
    auto holds = [&](long p) {
      const Polynomial diff = p >= 0 ? d.times_monomial({static_cast<int>(p), 0}) - n
                                     : d - n.times_monomial({static_cast<int>(-p), 0});
      return !diff.is_zero() && diff.leading_coefficient() > 0;
    };
    if (!holds(bound)) continue;
    long lo = -bound - 1;  // lo fails (or is out of range), hi holds
    long hi = bound;
    while (hi - lo > 1) {
      const long mid = lo + (hi - lo) / 2;
      (holds(mid) ? hi : lo) = mid;
    }
    const Rational candidate = make_rational(hi, q);
    if (!best || candidate < *best) best = candidate;
  }
  if (!best) throw Error("truncation too small for the big-element infimum");
  return *best;
}

CheckReport big_element_valuation_check(const ValuationSpec& spec, std::size_t samples, int truncation,
                                        std::uint64_t seed) {
  if (spec.value_rank() != 1) throw Error("big-element valuation needs a rank-one valuation");
  CheckReport report{"big-element/" + spec.name()};
  FieldSampler sampler(spec.field(), seed);
  const Rational tolerance(1, truncation);
  for (std::size_t i = 0; i < samples; ++i) {
    const FieldElement x = sampler.nonzero();
    ++report.samples;
    const Rational inf = big_element_truncated_infimum(x, truncation);
    const Rational v = valuation(spec, x)[0];
    const Rational gap = inf + v;  // inf >= -v always; truncation costs at most 1/N
    if (gap < 0 || gap > tolerance) {
      report.fail("x=" + x.str(spec.field()) + ": truncated -inf = " + to_string(Rational(-inf)) +
                  " vs v = " + to_string(v));
    }
  }
  return report;
}

FieldElement FieldMorphism::apply(const FieldElement& x) const {
  if (kind == FieldMorphismKind::VariableInclusion && x.depends_on(1)) {
    throw Error("variable inclusion applied to an element outside Q(t)");
  }
  return x;
}

namespace {

std::vector<FieldElement> value_group_generators(const ValuationSpec& spec) {
  if (spec.kind == ValuationKind::LexMultidegree) return {FieldElement::variable(0), FieldElement::variable(1)};
  return {FieldElement::variable(0)};
}

}  // namespace

OrderedGroupMorphism induced_gamma(const FieldMorphism& eta, std::size_t sample_size, std::uint64_t seed) {
  if (eta.kind == FieldMorphismKind::IdentityRevalue && eta.source.field() != eta.target.field()) {
    throw Error("identity revaluation between different fields");
  }
  if (eta.kind == FieldMorphismKind::VariableInclusion &&
      (eta.source.field() != FieldKind::RationalT || eta.target.field() != FieldKind::RationalXY)) {
    throw Error("variable inclusion must go from Q(t) to Q(X, Y)");
  }
  const std::size_t k = eta.source.value_rank();
  const std::size_t m = eta.target.value_rank();
  const auto gens = value_group_generators(eta.source);
  RationalMatrix source_values(k, k);
  RationalMatrix target_values(m, k);
  for (std::size_t j = 0; j < k; ++j) {
    const LexValue sv = valuation(eta.source, gens[j]);
    const LexValue tv = valuation(eta.target, eta.apply(gens[j]));
    for (std::size_t i = 0; i < k; ++i) source_values(i, j) = sv[i];
    for (std::size_t i = 0; i < m; ++i) target_values(i, j) = tv[i];
  }
  const OrderedGroupMorphism gamma(target_values * inverse(source_values));

  auto consistent = [&](const FieldElement& x) {
    return gamma.apply(valuation(eta.source, x)) == valuation(eta.target, eta.apply(x));
  };
  for (int var = 0; var < (eta.source.field() == FieldKind::RationalXY ? 2 : 1); ++var) {
    if (!consistent(FieldElement::variable(var))) {
      throw Error("no group morphism makes the valuation square commute (variable " + std::to_string(var) + ")");
    }
  }
  FieldSampler sampler(eta.source.field(), seed);
  for (std::size_t i = 0; i < sample_size; ++i) {
    const FieldElement x = sampler.nonzero();
    if (!consistent(x)) throw Error("valuation square fails at " + x.str(eta.source.field()));
  }
  if (!is_order_preserving(gamma).order_preserving) throw Error("induced value-group morphism is not order preserving");
  return gamma;
}

}  // namespace affbuild
