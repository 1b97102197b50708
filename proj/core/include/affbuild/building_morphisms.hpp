#pragma once

// Morphisms of lattice G-buildings built from a group map rho and an apartment
// morphism tau: psi(g.f(x)) = rho(g).f'(tau(x)) and phi(g.f) = rho(g).f'.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affbuild/apartment_morphism.hpp"
#include "affbuild/lattice_building.hpp"

namespace affbuild {

/// The lattice building of SL_n with a base chart f = f_E. Charts are stored
/// as their bases; g.f_E = f_{gE}.
class GBuildingInstance {
 public:
  GBuildingInstance(ValuationSpec spec, std::size_t n, std::optional<FieldMatrix> base_chart = std::nullopt);

  const LatticeBuilding& building() const { return building_; }
  const FieldMatrix& base_chart() const { return base_; }
  std::size_t n() const { return building_.n(); }
  const ValuationSpec& spec() const { return building_.spec(); }
  const std::shared_ptr<const ModelApartment>& apartment() const { return building_.apartment(); }

  LatticeClass point(const FieldMatrix& chart, const ApartmentPoint& x) const { return building_.chart_eval(chart, x); }
  LatticeClass base_point() const { return point(base_, apartment()->zero()); }
  LatticeClass act(const FieldMatrix& g, const LatticeClass& c) const { return building_.act(g, c); }
  FieldMatrix act_chart(const FieldMatrix& g, const FieldMatrix& chart) const { return g * chart; }
  /// f_a = f_b: a^-1 b is diagonal with entries of equal valuation.
  bool charts_equal(const FieldMatrix& a, const FieldMatrix& b) const;

  /// g.f(0) = f(0): E^-1 g E has entries in O.
  bool fixes_base_point(const FieldMatrix& g) const;
  /// g.f = f: E^-1 g E diagonal with unit entries.
  bool fixes_base_chart(const FieldMatrix& g) const;

  /// g in SL_n with g.f(0) = f(x), for special x.
  FieldMatrix translation_witness(const ApartmentPoint& x) const;

  /// c = g.f(x) with g in SL_n and x realizable, read off a common apartment
  /// of f(0) and c.
  struct Presentation {
    FieldMatrix g;
    ApartmentPoint x;
  };
  Presentation present(const LatticeClass& c) const;

  /// (g.f)(x) = g.(f(x)) on sampled g in SL_n and realizable x.
  CheckReport compatibility_check(std::size_t samples, std::uint64_t seed) const;

 private:
  LatticeBuilding building_;
  FieldMatrix base_;
  FieldMatrix base_inverse_;
};

/// rho: SL_n(F) -> SL_n'(F'). Entrywise applies a field morphism; Block sends g
/// to diag(g, Id); InverseTranspose sends g to (g^T)^-1.
struct GroupMap {
  enum class Kind { Entrywise, Block, InverseTranspose };
  Kind kind = Kind::Entrywise;
  FieldMorphism eta;
  std::size_t block_size = 0;  ///< target n for Block

  FieldMatrix apply(const FieldMatrix& g) const;
  std::string describe() const;
};

struct ConditionReport {
  std::string name;
  std::string mode;  ///< "exact+sampled", "sampled" or "constructive"
  bool passed = true;
  std::size_t samples = 0;
  std::vector<std::string> witnesses;
  void fail(std::string w) {
    passed = false;
    if (witnesses.size() < 5) witnesses.push_back(std::move(w));
  }
};

struct MorphismInstance {
  std::string name;
  std::shared_ptr<const GBuildingInstance> source;
  std::shared_ptr<const GBuildingInstance> target;
  GroupMap rho;
  ApartmentMorphism tau;
  /// Whether the underlying field morphism is surjective.
  bool eta_surjective = true;
  /// psi is only defined on the SL_n-orbit of f(0) (special points).
  bool special_points_only = false;
};

struct MorphismCertificate {
  MorphismInstance instance;
  std::array<ConditionReport, 3> conditions;
  MorphismFlags flags;
  bool valid() const { return conditions[0].passed && conditions[1].passed && conditions[2].passed; }
};

/// Conditions (1) rho(Stab f(0)) in Stab f'(0), (2) rho(Stab f) in Stab f',
/// (3) g.f(0) = f(x) implies rho(g).f'(0) = f'(tau(x)). The three checks run
/// concurrently with independent seeded samplers.
MorphismCertificate check_conditions_baby(const MorphismInstance& inst, std::size_t samples = 100,
                                          std::uint64_t seed = 1);

/// rho(g).f'(tau(x)); throws unless the certificate is valid.
LatticeClass apply_morphism(const MorphismCertificate& cert, const FieldMatrix& g, const ApartmentPoint& x);
/// psi(c) through the presentation of c.
LatticeClass apply_morphism(const MorphismCertificate& cert, const LatticeClass& c);
/// phi(g.f) = rho(g).f'.
FieldMatrix apply_morphism_chart(const MorphismCertificate& cert, const FieldMatrix& g);

/// Presentation collisions g.f(x) = h.f(y) and, when tau has a kernel,
/// distinct points x != y with tau(x) = tau(y); psi must agree on each.
CheckReport collision_check(const MorphismCertificate& cert, std::size_t samples, std::uint64_t seed);
/// psi o z = phi(z) o tau for random charts z = g.f, psi evaluated through
/// presentations.
CheckReport diagram_check(const MorphismCertificate& cert, std::size_t samples, std::uint64_t seed);
/// psi(g.p) = rho(g).psi(p) and phi(g.z) = rho(g).phi(z).
CheckReport equivariance_check(const MorphismCertificate& cert, std::size_t samples, std::uint64_t seed);
/// For monomial g in A_{f,w}: rho(g) in A_{f',sigma(w)}.
CheckReport coset_check(const MorphismCertificate& cert, std::size_t samples, std::uint64_t seed);
/// Distinct source classes have distinct images.
CheckReport injectivity_check(const MorphismCertificate& cert, std::size_t samples, std::uint64_t seed);

/// Source (Q(X,Y), lex) and target (Q(X,Y), first variable), rho = Id,
/// tau = (Id, pr_1, id).
MorphismInstance instance_field_change(std::size_t n);
/// SL_m into SL_n as the upper-left block, tau from the embedding A_{m-1} in
/// A_{n-1} over Q(t).
MorphismInstance instance_block_embedding(std::size_t m, std::size_t n);
/// Same lex building on both sides with tau swapping the two coordinates of
/// Lambda; fails condition (3).
MorphismInstance instance_broken_tau(std::size_t n);
MorphismInstance instance_identity(ValuationSpec spec, std::size_t n);
/// rho(g) = (g^T)^-1 with the inversion of the apartment as tau.
MorphismInstance instance_inversion(ValuationSpec spec, std::size_t n);

/// For special y and a = point_to_diag(y): f_E(y) = (E a E^-1).f_E(0) and
/// a^-1 realizes f_E(-y), the inversion of the apartment.
CheckReport inversion_selfcheck(ValuationSpec spec, std::size_t n, std::size_t samples, std::uint64_t seed);

nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const MorphismCertificate& c);

}  // namespace affbuild
