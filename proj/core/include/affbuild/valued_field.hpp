#pragma once

// Valuations on Q(t) and Q(X, Y), valuation rings, field morphisms and the
// value-group morphisms they induce.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affbuild/field_element.hpp"
#include "affbuild/ordered_group.hpp"

namespace affbuild {

enum class ValuationKind {
  Degree,          ///< Q(t): v(P/Q) = deg Q - deg P, values in Q
  LexMultidegree,  ///< Q(X,Y): minus the lex-leading multidegree, values in Q^2
  FirstVariable,   ///< Q(X,Y): first coordinate of LexMultidegree, values in Q
};

struct ValuationSpec {
  ValuationKind kind = ValuationKind::Degree;

  FieldKind field() const { return kind == ValuationKind::Degree ? FieldKind::RationalT : FieldKind::RationalXY; }
  std::size_t value_rank() const { return kind == ValuationKind::LexMultidegree ? 2 : 1; }
  std::string name() const;
  friend bool operator==(const ValuationSpec&, const ValuationSpec&) = default;
};

ValuationSpec parse_valuation_spec(const std::string& name);

/// v(x); INFINITY for x = 0.
LexValue valuation(const ValuationSpec& spec, const FieldElement& x);

bool in_valuation_ring(const ValuationSpec& spec, const FieldElement& x);

/// v(x) = 0.
bool is_unit(const ValuationSpec& spec, const FieldElement& x);

/// Canonical monomial with prescribed valuation: t^{-l} or X^{-l1} Y^{-l2}.
/// Throws Error when lambda has non-integral coordinates.
FieldElement element_with_valuation(const ValuationSpec& spec, const LexValue& lambda);

/// Splits a = r + q * x_mu with q in O and r the canonical representative of
/// a modulo x_mu O (a finite Laurent polynomial read off the expansion at
/// X = infinity). r = 0 iff v(a) >= mu.
struct ResidueSplit {
  FieldElement representative;
  FieldElement quotient;
};
ResidueSplit reduce_modulo(const ValuationSpec& spec, const FieldElement& a, const LexValue& mu);

/// Seeded generator of random field elements for property checks.
class FieldSampler {
 public:
  FieldSampler(FieldKind kind, std::uint64_t seed) : kind_(kind), rng_(seed) {}
  FieldSampler(FieldKind kind, std::mt19937_64& shared) : kind_(kind), rng_(shared()) {}

  Polynomial polynomial(int max_degree, int max_terms);
  /// Random nonzero element P/Q with small degrees and coefficients.
  FieldElement nonzero(int max_degree = 2);
  /// Random element, zero with small probability.
  FieldElement any(int max_degree = 2);
  /// Random unit of the valuation ring of `spec`.
  FieldElement unit(const ValuationSpec& spec, int max_degree = 2);
  /// Random element of the valuation ring.
  FieldElement integral(const ValuationSpec& spec, int max_degree = 2);
  /// Random integral LexValue with coordinates in [-bound, bound].
  LexValue value(std::size_t rank, int bound);
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& engine() { return rng_; }
  FieldKind kind() const { return kind_; }

 private:
  FieldKind kind_;
  std::mt19937_64 rng_;
};

struct CheckReport {
  explicit CheckReport(std::string check_name = {}) : name(std::move(check_name)) {}

  std::string name;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::vector<std::string> witnesses;
  bool passed() const { return violations == 0; }
  void fail(std::string witness) {
    ++violations;
    if (witnesses.size() < 5) witnesses.push_back(std::move(witness));
  }
};

nlohmann::json to_json(const CheckReport& r);

/// Multiplicativity and the ultrametric inequality on `pairs` random pairs.
CheckReport valuation_axioms_check(const ValuationSpec& spec, std::size_t pairs, std::uint64_t seed);

/// Samples 0 < x <= y and checks v(x) >= v(y).
CheckReport is_order_compatible(const ValuationSpec& spec, std::size_t pairs, std::uint64_t seed);

/// Brackets v(x) by the truncated big-element infimum -inf{p/q : |x|^q < b^p},
/// b = X (or t), q in [1, N], |p| <= N^2 (located by bisection since the
/// condition is monotone in p). Requires a rank-one spec.
CheckReport big_element_valuation_check(const ValuationSpec& spec, std::size_t samples, int truncation,
                                        std::uint64_t seed);

/// The truncated infimum itself, exposed for tests.
Rational big_element_truncated_infimum(const FieldElement& x, int truncation);

enum class FieldMorphismKind {
  IdentityRevalue,    ///< same field, different valuation
  VariableInclusion,  ///< Q(t) -> Q(X, Y), t -> X
};

struct FieldMorphism {
  FieldMorphismKind kind = FieldMorphismKind::IdentityRevalue;
  ValuationSpec source;
  ValuationSpec target;

  FieldElement apply(const FieldElement& x) const;
};

/// The ordered-group morphism gamma with gamma o v = v' o eta, validated on
/// `sample_size` random elements; throws Error if none exists or it is not
/// order preserving.
OrderedGroupMorphism induced_gamma(const FieldMorphism& eta, std::size_t sample_size = 100,
                                   std::uint64_t seed = 1);

}  // namespace affbuild
