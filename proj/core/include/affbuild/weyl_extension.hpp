#pragma once

// Sub-root-systems Sigma inside an ambient Sigma' (same coordinates), the
// compatibility condition on shared chambers, and the extension of the
// Weyl group of Sigma into that of Sigma'.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affbuild/apartment_morphism.hpp"
#include "affbuild/root_system.hpp"

namespace affbuild {

struct EmbeddedPair {
  std::string name;
  RootSystem ambient;  ///< positive system fixes C_0'
  RootSystem sub;      ///< roots in ambient coordinates; positive system fixes C_0
  WeylGroup ambient_weyl;
  WeylGroup sub_weyl;
  RationalMatrix v_basis;              ///< d' x r, columns the simple roots of Sigma
  std::vector<std::size_t> sigma_v;    ///< Sigma'_V as ambient root indices
  Vector ambient_chamber_point;        ///< a regular point of C_0'
};

/// Builds the pair. Without an explicit ambient chamber, C_0' is the chamber
/// of p + eps g for a V-regular p in C_0 and g regular in the original C_0'.
/// Throws if C_0 and C_0' share no V-regular point.
EmbeddedPair make_embedded_pair(const RootSystem& ambient, const std::vector<Vector>& sub_roots,
                                const std::optional<Vector>& sub_chamber = std::nullopt,
                                const std::optional<Vector>& ambient_chamber = std::nullopt,
                                std::string name = "");

/// Built-in pairs: a1-perp-in-a2, a1-tilted-in-a2, a1-diag-in-a1xa1,
/// a1-axis-in-a1xa1, a2-long-in-g2, b2-in-a3, a2-block-in-a3, a1-block-in-a2,
/// a1-block-in-a3, a2-in-a2.
EmbeddedPair named_embedding(const std::string& name);
std::vector<std::string> named_embeddings();

/// {"name"?, "ambient": {tag, rank} | custom, "sub_roots": [[...]],
///  "sub_chamber"?: [...], "ambient_chamber"?: [...]}
EmbeddedPair embedded_pair_from_json(const nlohmann::json& j);

/// A point p of C_0 and C_0' with Sigma'_p = Sigma'_V that is regular for Sigma.
Vector find_v_regular_point(const EmbeddedPair& pair);

struct TriangleWitness {
  std::size_t w = 0;        ///< sub Weyl index
  std::size_t w_prime = 0;  ///< ambient Weyl index
  Vector x;
  Vector wx;
  Vector w_prime_x;
};

struct TriangleReport {
  bool passed = true;
  std::size_t pairs_checked = 0;
  std::size_t empty_or_lower_dim = 0;
  std::optional<TriangleWitness> witness;
};

/// Exact decision: for each (w, w') the cone K = {x in V : x in C_0, x in C_0',
/// w(x) in w'(C_0')} and the test (w - w') = 0 on span(K).
TriangleReport check_condition_triangle(const EmbeddedPair& pair);

/// Direct evaluation: w(x) in w'(C_0') implies w(x) = w'(x) on `samples`
/// seeded points of C_0 and C_0' in V. Returns the number of counterexamples.
std::size_t triangle_sampling_counterexamples(const EmbeddedPair& pair, std::size_t samples, std::uint64_t seed);

/// Direct confirmation that a witness violates the condition.
bool confirms_violation(const EmbeddedPair& pair, const TriangleWitness& w);

struct SigmaTable {
  Vector p;
  std::vector<std::size_t> sigma;  ///< sub Weyl index -> ambient Weyl index
  bool homomorphism = false;
  bool injective = false;
  bool restricts = false;       ///< sigma(w)|_V = w
  bool preserves_f = false;     ///< sigma(w)(F) = F
  bool regularity_invariant = false;
  std::size_t image_size = 0;
};

/// Throws Error when the condition fails or a post-verification fails.
SigmaTable construct_sigma(const EmbeddedPair& pair);

/// The injective morphism of apartments induced by the embedding, with
/// sigma_s from construct_sigma. `source` may realize Sigma in other
/// coordinates: `j` maps its ambient space into the pair's (defaults to the
/// identity with source built from pair.sub). `target` must carry the same
/// Weyl matrices as pair.ambient (any base).
ApartmentMorphism build_apartment_morphism_from_embedding(const EmbeddedPair& pair, const SigmaTable& sigma,
                                                          const OrderedGroupMorphism& gamma,
                                                          std::shared_ptr<const ModelApartment> source = nullptr,
                                                          const std::optional<RationalMatrix>& j = std::nullopt,
                                                          std::shared_ptr<const ModelApartment> target = nullptr);

nlohmann::json to_json(const EmbeddedPair& pair);
nlohmann::json to_json(const TriangleReport& r);
nlohmann::json to_json(const SigmaTable& s);

}  // namespace affbuild
