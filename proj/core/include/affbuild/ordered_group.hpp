#pragma once

// Value groups Q^k with the lexicographic order, and morphisms between them.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affbuild/matrix.hpp"
#include "affbuild/rational.hpp"

namespace affbuild {

/// Element of Q^k (lexicographically ordered), or the symbol INFINITY that
/// valuations return on zero.
class LexValue {
 public:
  LexValue() = default;
  explicit LexValue(RationalVector coords);
  LexValue(std::initializer_list<Rational> coords) : LexValue(RationalVector(coords)) {}

  static LexValue zero(std::size_t rank);
  static LexValue infinity(std::size_t rank);
  static LexValue unit(std::size_t rank, std::size_t index);

  std::size_t rank() const { return rank_; }
  bool is_infinite() const { return infinite_; }
  bool is_zero() const;
  /// Finite and every coordinate integral.
  bool is_integral() const;
  const RationalVector& coords() const;
  const Rational& operator[](std::size_t i) const { return coords()[i]; }

  LexValue operator-() const;
  LexValue& operator+=(const LexValue& other);
  LexValue& operator-=(const LexValue& other);
  friend LexValue operator+(LexValue a, const LexValue& b) { return a += b; }
  friend LexValue operator-(LexValue a, const LexValue& b) { return a -= b; }
  /// Rational scalar action (Lambda is a Q-vector space). INFINITY is only
  /// scaled by positive scalars.
  LexValue scaled(const Rational& s) const;
  /// Lexicographic absolute value max(x, -x).
  LexValue abs() const;

  friend std::strong_ordering operator<=>(const LexValue& a, const LexValue& b);
  friend bool operator==(const LexValue& a, const LexValue& b);

  std::string str() const;

 private:
  std::size_t rank_ = 0;
  bool infinite_ = false;
  RationalVector coords_;
};

/// Three-way lexicographic comparison; throws DimensionError on rank mismatch.
std::strong_ordering compare(const LexValue& a, const LexValue& b);

/// Group homomorphism Q^k -> Q^m given by an m x k rational matrix.
class OrderedGroupMorphism {
 public:
  OrderedGroupMorphism() = default;
  explicit OrderedGroupMorphism(RationalMatrix matrix) : matrix_(std::move(matrix)) {}

  static OrderedGroupMorphism identity(std::size_t k);
  /// Projection onto the first coordinate, Q^k -> Q.
  static OrderedGroupMorphism first_projection(std::size_t k);
  /// x -> (x, 0, ..., 0), Q^k -> Q^m.
  static OrderedGroupMorphism inclusion(std::size_t k, std::size_t m);

  std::size_t source_rank() const { return matrix_.cols(); }
  std::size_t target_rank() const { return matrix_.rows(); }
  const RationalMatrix& matrix() const { return matrix_; }

  LexValue apply(const LexValue& x) const;
  LexValue operator()(const LexValue& x) const { return apply(x); }

  friend bool operator==(const OrderedGroupMorphism&, const OrderedGroupMorphism&) = default;

 private:
  RationalMatrix matrix_;
};

/// gamma2 o gamma1.
OrderedGroupMorphism compose(const OrderedGroupMorphism& gamma2, const OrderedGroupMorphism& gamma1);

struct OrderCheck {
  bool order_preserving = false;
  /// When not order preserving: x >_lex 0 with gamma(x) <_lex 0.
  std::optional<LexValue> witness;
};

/// Exact decision whether gamma maps the strictly positive cone into the
/// nonnegative cone.
OrderCheck is_order_preserving(const OrderedGroupMorphism& gamma);

struct RankFlags {
  bool injective = false;
  bool surjective = false;
  friend bool operator==(const RankFlags&, const RankFlags&) = default;
};

RankFlags morphism_rank_flags(const OrderedGroupMorphism& gamma);

// JSON: {"rows": m, "cols": k, "entries": [["p/q", ...], ...]}
nlohmann::json to_json(const RationalMatrix& m);
RationalMatrix rational_matrix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const OrderedGroupMorphism& gamma);
OrderedGroupMorphism ordered_group_morphism_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LexValue& x);

}  // namespace affbuild
