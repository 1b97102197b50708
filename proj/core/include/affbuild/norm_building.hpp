#pragma once

// The norm building of GL_n over a rank-one valued field: adapted ultrametric
// norms with rational weights, computed entirely on exponents (a norm value
// e^{-s} is stored as s, so larger exponents mean shorter vectors).

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "affbuild/lattice_building.hpp"

namespace affbuild {

/// eta(sum a_i e_i) = max_i |a_i| e^{-w_i} for the columns e_i of `basis`.
struct AdaptedNorm {
  FieldMatrix basis;
  std::vector<Rational> weights;
};

/// Homothety class; the representative has weights[0] = 0.
struct NormClass {
  AdaptedNorm norm;
};

class NormBuilding {
 public:
  /// Throws Error unless the valuation has rank one.
  NormBuilding(ValuationSpec spec, std::size_t n);

  const ValuationSpec& spec() const { return lattice_.spec(); }
  std::size_t n() const { return lattice_.n(); }
  FieldKind field() const { return lattice_.field(); }
  const std::shared_ptr<const ModelApartment>& apartment() const { return lattice_.apartment(); }
  /// The lattice model on the same field; shares the apartment conventions.
  const LatticeBuilding& lattice() const { return lattice_; }

  /// v(x) as a rational, INFINITY mapped to nullopt.
  std::optional<Rational> v(const FieldElement& x) const;

  AdaptedNorm standard() const;
  NormClass normalize(AdaptedNorm eta) const;
  NormClass base() const { return normalize(standard()); }

  /// min_i (v(a_i) + w_i) with a = E^-1 vec; INFINITY for vec = 0.
  LexValue eval_exponent(const AdaptedNorm& eta, const FieldVector& vec) const;

  std::vector<Rational> ambient_coords(const ApartmentPoint& x) const;
  ApartmentPoint point_from_ambient(const std::vector<Rational>& a) const;

  /// Weights base_weights + x in the basis E.
  NormClass chart_eval(const FieldMatrix& E, const std::vector<Rational>& base_weights, const ApartmentPoint& x) const;
  NormClass chart_eval(const FieldMatrix& E, const ApartmentPoint& x) const;

  /// g.eta = eta o g^-1, i.e. the basis becomes gE.
  AdaptedNorm act(const FieldMatrix& g, const AdaptedNorm& eta) const;
  NormClass act(const FieldMatrix& g, const NormClass& c) const;

  /// c with eval(a, .) = eval(b, .) + c everywhere, or nullopt when the norms
  /// are not proportional. Weighted elementary-divisor reduction of E_a^-1 E_b.
  std::optional<Rational> proportionality_shift(const AdaptedNorm& a, const AdaptedNorm& b) const;
  bool equal(const NormClass& a, const NormClass& b) const {
    return proportionality_shift(a.norm, b.norm).has_value();
  }

  /// v(h_ij) >= v(det h)/n - (x_i - x_j) for h = g and h = g^-1.
  bool stab_inequality_membership(const FieldMatrix& g, const ApartmentPoint& x) const;
  /// g.[eta_x] = [eta_x] decided by class equality.
  bool stabilizes(const FieldMatrix& g, const ApartmentPoint& x) const;

  /// sum_j eval(eta_x, g e_j) - sum_j x_j; equals v(det g) on the stabilizer
  /// and never exceeds it.
  Rational column_defect(const FieldMatrix& g, const ApartmentPoint& x) const;

 private:
  LatticeBuilding lattice_;
};

/// Stabilizer predicate against the class-equality oracle, plus the
/// determinant identity on every stabilizing sample and the Hadamard bound on
/// the others. Draws points with rational coordinates and a mix of
/// constructed stabilizers, near misses and generic matrices.
CheckReport stab_oracle_check(const NormBuilding& b, std::size_t samples, std::uint64_t seed);

nlohmann::json to_json(const AdaptedNorm& eta, FieldKind kind);
AdaptedNorm adapted_norm_from_json(const nlohmann::json& j, FieldKind kind);

}  // namespace affbuild
