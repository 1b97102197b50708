#pragma once

// Crystallographic root systems in exact rational coordinates, their Weyl
// groups, chambers and vanishing sets. Roots act on the ambient space as
// covectors through the Gram pairing: alpha(x) = <alpha, x>.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affbuild/matrix.hpp"

namespace affbuild {

using Vector = RationalVector;

enum class RootSystemTag { A, B, C, D, G2, Custom };

std::string tag_name(RootSystemTag tag);
RootSystemTag parse_tag(const std::string& name);

struct AxiomReport {
  bool finite_nonzero = true;       // (RS_I)
  bool reflection_closed = true;    // (RS_II)
  bool integral_pairings = true;    // (RS_III)
  bool reduced = true;
  bool gram_positive_definite = true;
  bool base_valid = true;
  std::string witness;
  bool passed() const {
    return finite_nonzero && reflection_closed && integral_pairings && reduced && gram_positive_definite && base_valid;
  }
};

class RootSystem {
 public:
  /// Standard rational realization: A_n in {sum = 0} of Q^{n+1}; B_n, C_n, D_n
  /// in Q^n; G_2 in {sum = 0} of Q^3. Gram matrix is the identity.
  static RootSystem standard(RootSystemTag tag, std::size_t rank = 2);
  /// Validates (RS_I)-(RS_III), reducedness and the Gram matrix; throws Error
  /// naming the failed axiom. The base comes from a generic linear form
  /// unless `chamber_point` fixes the positive system.
  static RootSystem custom(std::vector<Vector> roots, RationalMatrix gram, std::string name = "CUSTOM",
                           const std::optional<Vector>& chamber_point = std::nullopt);

  /// Same roots, positive system {alpha : alpha(point) > 0}; `point` must be regular.
  RootSystem rebased(const Vector& point) const;

  RootSystemTag tag() const { return tag_; }
  const std::string& name() const { return name_; }
  std::size_t ambient_dim() const { return gram_.rows(); }
  std::size_t rank() const { return simple_.size(); }
  std::size_t size() const { return roots_.size(); }
  const std::vector<Vector>& roots() const { return roots_; }
  const Vector& root(std::size_t i) const { return roots_.at(i); }
  const RationalMatrix& gram() const { return gram_; }
  const std::vector<std::size_t>& simple_indices() const { return simple_; }
  const std::vector<std::size_t>& positive_indices() const { return positive_; }
  const Vector& simple_root(std::size_t i) const { return roots_.at(simple_.at(i)); }
  std::optional<std::size_t> index_of(const Vector& v) const;

  Rational inner(const Vector& x, const Vector& y) const;
  /// alpha(x) = <alpha, x>.
  Rational evaluate(std::size_t alpha, const Vector& x) const { return inner(roots_.at(alpha), x); }
  /// The coroot as a covector: x -> 2<alpha, x>/<alpha, alpha>.
  Vector coroot(std::size_t alpha) const;
  Rational coroot_pairing(std::size_t alpha, const Vector& x) const;
  RationalMatrix reflection(std::size_t alpha) const;

  /// d x r matrix whose columns are the simple roots.
  RationalMatrix basis_matrix() const;
  /// Coordinates of v (in the span of the roots) with respect to the simple roots.
  Vector to_delta(const Vector& v) const;
  Vector from_delta(const Vector& c) const;
  /// r x r matrix of an ambient linear map preserving the root span.
  RationalMatrix delta_matrix(const RationalMatrix& ambient) const;
  /// Gram matrix of the simple roots.
  RationalMatrix delta_gram() const;

  AxiomReport verify_axioms() const;

 private:
  void choose_base(const std::optional<Vector>& chamber_point);

  RootSystemTag tag_ = RootSystemTag::Custom;
  std::string name_;
  std::vector<Vector> roots_;
  RationalMatrix gram_;
  std::vector<std::size_t> positive_;
  std::vector<std::size_t> simple_;
  std::map<Vector, std::size_t> lookup_;
};

struct WeylElement {
  RationalMatrix matrix;
  /// Word in simple reflections (leftmost factor first); best effort.
  std::vector<std::size_t> word;
};

class WeylGroup {
 public:
  WeylGroup() = default;
  WeylGroup(const RootSystem& system, std::vector<WeylElement> elements);

  std::size_t size() const { return elements_.size(); }
  const WeylElement& operator[](std::size_t i) const { return elements_.at(i); }
  const std::vector<WeylElement>& elements() const { return elements_; }
  const RationalMatrix& delta(std::size_t i) const { return delta_.at(i); }
  std::size_t identity() const { return identity_; }

  std::optional<std::size_t> index_of(const RationalMatrix& m) const;
  std::optional<std::size_t> index_of_delta(const RationalMatrix& m) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;

 private:
  std::vector<WeylElement> elements_;
  std::vector<RationalMatrix> delta_;
  std::map<std::vector<Rational>, std::size_t> by_matrix_;
  std::map<std::vector<Rational>, std::size_t> by_delta_;
  std::size_t identity_ = 0;
};

inline constexpr std::size_t kWeylGroupSizeCap = 1152;

/// Closure of the simple reflections, deduplicated by matrix and sorted
/// lexicographically by matrix entries. Throws Error past `cap` elements.
WeylGroup enumerate_weyl_group(const RootSystem& system, std::size_t cap = kWeylGroupSizeCap);

/// Roots vanishing on every vector of `subspace_basis` (a point is a
/// one-element basis; the empty basis is {0}).
std::vector<std::size_t> vanishing_roots(const RootSystem& system, const std::vector<Vector>& subspace_basis);

bool is_regular(const RootSystem& system, const Vector& p);

struct Chamber {
  /// Sign (+1/-1) of each positive root, in positive_indices() order.
  std::vector<int> signs;
  /// The unique w with p in w(C_0).
  std::size_t weyl_index = 0;
};

/// Throws Error for non-regular p.
Chamber chamber_of(const RootSystem& system, const WeylGroup& group, const Vector& p);

/// True iff x lies in the closed chamber w(C_0).
bool in_chamber(const RootSystem& system, const RationalMatrix& w, const Vector& x);

nlohmann::json to_json(const RootSystem& system);
RootSystem root_system_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

}  // namespace affbuild
