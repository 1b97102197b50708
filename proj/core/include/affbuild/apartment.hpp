#pragma once

// Model apartments Span_Q(Phi) (x) Lambda with the affine Weyl group T x| W_s.
// Points are stored in coordinates over the simple roots, one LexValue each.

#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affbuild/ordered_group.hpp"
#include "affbuild/root_system.hpp"

namespace affbuild {

class ApartmentPoint {
 public:
  ApartmentPoint() = default;
  explicit ApartmentPoint(std::vector<LexValue> coords);
  static ApartmentPoint zero(std::size_t dim, std::size_t lambda_rank);
  /// The point alpha_i (x) lambda.
  static ApartmentPoint basis(std::size_t dim, std::size_t i, const LexValue& lambda);

  std::size_t dim() const { return coords_.size(); }
  std::size_t lambda_rank() const { return coords_.empty() ? 0 : coords_.front().rank(); }
  const std::vector<LexValue>& coords() const { return coords_; }
  const LexValue& operator[](std::size_t i) const { return coords_.at(i); }
  bool is_zero() const;

  ApartmentPoint& operator+=(const ApartmentPoint& o);
  ApartmentPoint& operator-=(const ApartmentPoint& o);
  friend ApartmentPoint operator+(ApartmentPoint a, const ApartmentPoint& b) { return a += b; }
  friend ApartmentPoint operator-(ApartmentPoint a, const ApartmentPoint& b) { return a -= b; }
  ApartmentPoint operator-() const;
  ApartmentPoint scaled(const Rational& s) const;
  friend bool operator==(const ApartmentPoint&, const ApartmentPoint&) = default;

  /// Flattened rational coordinates, point-major (dim * lambda_rank entries).
  RationalVector flatten() const;
  std::string str() const;

 private:
  std::vector<LexValue> coords_;
};

/// y_i = sum_j m_ij x_j, rational scalars acting on Lambda.
ApartmentPoint apply_linear(const RationalMatrix& m, const ApartmentPoint& x);
/// gamma applied to every coordinate.
ApartmentPoint apply_gamma(const OrderedGroupMorphism& gamma, const ApartmentPoint& x);

enum class TranslationMode { Full, Generated };

struct AffineWeylElement {
  ApartmentPoint translation;
  std::size_t spherical = 0;  ///< index into the apartment's Weyl group
  friend bool operator==(const AffineWeylElement&, const AffineWeylElement&) = default;
};

struct HalfApartment {
  std::size_t root = 0;  ///< index into the root system
  LexValue threshold;
  int sign = 1;  ///< +1: <x, alpha> >= k, -1: <x, alpha> <= k
};

class ModelApartment {
 public:
  ModelApartment(RootSystem system, std::size_t lambda_rank);
  /// Translations restricted to the Z-span of linearly independent
  /// generators; throws unless W_s normalizes the span.
  ModelApartment(RootSystem system, std::size_t lambda_rank, std::vector<ApartmentPoint> generators);

  const RootSystem& system() const { return system_; }
  const WeylGroup& weyl() const { return weyl_; }
  std::size_t dim() const { return system_.rank(); }
  std::size_t lambda_rank() const { return lambda_rank_; }
  TranslationMode translation_mode() const { return mode_; }
  const std::vector<ApartmentPoint>& generators() const { return generators_; }

  ApartmentPoint zero() const { return ApartmentPoint::zero(dim(), lambda_rank_); }
  /// Delta-coordinates of root `alpha`.
  const Vector& root_coords(std::size_t alpha) const { return root_coords_.at(alpha); }

  /// <x, beta> for beta given in Delta-coordinates.
  LexValue pairing(const ApartmentPoint& x, const Vector& beta) const;
  LexValue pairing_root(const ApartmentPoint& x, std::size_t alpha) const {
    return pairing(x, root_coords_.at(alpha));
  }
  LexValue norm(const ApartmentPoint& x) const;

  bool in_translations(const ApartmentPoint& t) const;
  ApartmentPoint spherical_act(std::size_t w, const ApartmentPoint& x) const;
  ApartmentPoint act(const AffineWeylElement& w, const ApartmentPoint& x) const;
  AffineWeylElement multiply(const AffineWeylElement& a, const AffineWeylElement& b) const;
  AffineWeylElement inverse(const AffineWeylElement& a) const;
  AffineWeylElement identity() const { return {zero(), weyl_.identity()}; }
  AffineWeylElement translation(const ApartmentPoint& t) const;

  bool contains(const HalfApartment& h, const ApartmentPoint& x) const;
  /// x in the closed intersection; the empty list is the whole apartment.
  bool contains(const std::vector<HalfApartment>& closed_set, const ApartmentPoint& x) const;
  /// x in base + w(C_0).
  bool in_sector(const ApartmentPoint& x, std::size_t w, const ApartmentPoint& base) const;
  /// C_0 as the half-apartments H^+_{alpha, 0}, alpha simple.
  std::vector<HalfApartment> fundamental_chamber() const;
  /// The reflection in the wall M_{alpha, k}.
  AffineWeylElement wall_reflection(std::size_t alpha, const LexValue& k) const;

  /// Random point with integral coordinates in [-bound, bound].
  ApartmentPoint random_point(std::mt19937_64& rng, int bound) const;
  /// Random element of T (integral combination of generators when restricted).
  ApartmentPoint random_translation(std::mt19937_64& rng, int bound) const;
  AffineWeylElement random_element(std::mt19937_64& rng, int bound) const;

 private:
  RootSystem system_;
  WeylGroup weyl_;
  std::size_t lambda_rank_;
  TranslationMode mode_ = TranslationMode::Full;
  std::vector<ApartmentPoint> generators_;
  RationalMatrix delta_gram_;
  std::vector<Vector> root_coords_;
};

nlohmann::json to_json(const ApartmentPoint& x);
ApartmentPoint apartment_point_from_json(const nlohmann::json& j, std::size_t lambda_rank);
nlohmann::json to_json(const ModelApartment& a, const AffineWeylElement& w);
nlohmann::json to_json(const ModelApartment& a);

}  // namespace affbuild
