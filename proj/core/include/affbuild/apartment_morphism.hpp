#pragma once

// Morphisms of model apartments (L, gamma, sigma_s) with tau = L (x) gamma and
// the affine sigma(t^x w) = t^{tau(x)} sigma_s(w).

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affbuild/apartment.hpp"

namespace affbuild {

struct ApartmentMorphism {
  std::shared_ptr<const ModelApartment> source;
  std::shared_ptr<const ModelApartment> target;
  RationalMatrix L;  ///< Delta' x Delta
  OrderedGroupMorphism gamma;
  std::vector<std::size_t> sigma_s;  ///< source Weyl index -> target Weyl index

  ApartmentPoint tau(const ApartmentPoint& x) const;
  AffineWeylElement sigma(const AffineWeylElement& w) const;
};

struct MorphismReport {
  bool homomorphism = true;
  bool diagram = true;
  bool translations = true;
  bool affine_samples = true;
  bool gamma_order_preserving = true;  ///< informational
  std::size_t samples = 0;
  std::vector<std::string> witnesses;
  bool passed() const { return homomorphism && diagram && translations && affine_samples; }
};

/// Exhaustive checks on W_s, tau(T) in T', then `samples` affine pairs.
MorphismReport verify_morphism(const ApartmentMorphism& m, std::size_t samples = 100, std::uint64_t seed = 1);

/// Throws Error with the first witness unless verify_morphism passes.
void require_valid(const ApartmentMorphism& m);

ApartmentMorphism identity_morphism(std::shared_ptr<const ModelApartment> a);
/// m2 o m1; throws on mismatched (co)domains.
ApartmentMorphism compose(const ApartmentMorphism& m2, const ApartmentMorphism& m1);
ApartmentMorphism inverse(const ApartmentMorphism& m);

struct MorphismFlags {
  bool injective = false;
  bool surjective = false;
  bool sigma_injective = false;
  bool sigma_surjective = false;
};
MorphismFlags flags(const ApartmentMorphism& m);

/// L = -Id, gamma = Id, sigma_s = id.
ApartmentMorphism inversion_morphism(std::shared_ptr<const ModelApartment> a);

/// Same root system on both sides, L = Id, sigma_s = id, arbitrary gamma.
ApartmentMorphism lambda_change_morphism(const RootSystem& system, const OrderedGroupMorphism& gamma);

bool operator==(const ApartmentMorphism& a, const ApartmentMorphism& b);

nlohmann::json to_json(const ApartmentMorphism& m);
nlohmann::json to_json(const MorphismReport& r);

}  // namespace affbuild
