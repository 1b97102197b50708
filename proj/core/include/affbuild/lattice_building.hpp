#pragma once

// The lattice building of SL_n over Q(t) or Q(X, Y): homothety classes of
// O-lattices, the charts f_E, stabilizers and the monomial cosets A_{f,w}.

#include <cstdint>
#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "affbuild/apartment.hpp"
#include "affbuild/matrix.hpp"
#include "affbuild/valued_field.hpp"

namespace affbuild {

using FieldMatrix = Matrix<FieldElement>;
using FieldVector = std::vector<FieldElement>;

/// Homothety class of the O-span of the columns, stored in canonical form.
struct LatticeClass {
  FieldMatrix canonical;
  friend bool operator==(const LatticeClass&, const LatticeClass&) = default;
};

struct StabVerdict {
  bool fixes = false;    ///< g.[L_0] = [L_0]
  bool integral = false; ///< every entry of g lies in O
  bool agree() const { return fixes == integral; }
};

/// A chart adapted to two classes: f_E(x) = c1 and f_E(y) = c2.
struct CommonApartment {
  FieldMatrix basis;
  ApartmentPoint x;
  ApartmentPoint y;
};

class LatticeBuilding {
 public:
  LatticeBuilding(ValuationSpec spec, std::size_t n);

  const ValuationSpec& spec() const { return spec_; }
  std::size_t n() const { return n_; }
  FieldKind field() const { return spec_.field(); }
  const std::shared_ptr<const ModelApartment>& apartment() const { return apartment_; }

  LexValue v(const FieldElement& x) const { return valuation(spec_, x); }

  /// Column Hermite form over O, homothety-normalized so the first pivot is 1.
  LatticeClass canonical_form(const FieldMatrix& basis) const;
  LatticeClass base() const;  ///< [L_0] = [O^n]

  /// Ambient coordinates a_1..a_n (summing to zero) of a point in simple-root
  /// coordinates, and back (the mean is subtracted first).
  std::vector<LexValue> ambient_coords(const ApartmentPoint& x) const;
  ApartmentPoint point_from_ambient(std::vector<LexValue> a) const;

  /// Every root pairing lies in the value group Z^k.
  bool is_realizable(const ApartmentPoint& x) const;
  /// Lies in the coroot lattice (x) Z^k, the points of the SL_n-orbit of 0.
  bool is_special(const ApartmentPoint& x) const;

  LatticeClass chart_eval(const FieldMatrix& E, const ApartmentPoint& x) const;
  /// Same, with the i-th monomial witness multiplied by unit_twists[i].
  LatticeClass chart_eval(const FieldMatrix& E, const ApartmentPoint& x, const FieldVector& unit_twists) const;

  /// g.c; requires det g = 1 unless allow_gl.
  LatticeClass act(const FieldMatrix& g, const LatticeClass& c, bool allow_gl = false) const;

  StabVerdict stab_point_membership(const FieldMatrix& g) const;
  /// E^-1 g E is diagonal with entries of valuation zero.
  bool stab_apartment_membership(const FieldMatrix& g, const FieldMatrix& E) const;
  /// Whether g fixes f_E(x) for every x in `points`.
  bool fixes_chart_points(const FieldMatrix& g, const FieldMatrix& E, const std::vector<ApartmentPoint>& points) const;

  /// x with f_E(x) = (E a E^-1).f_E(0): lambda_k = v(a_1 ... a_k).
  ApartmentPoint diag_to_point(const FieldVector& a) const;
  /// Canonical monomial diagonal realizing a special point.
  FieldVector point_to_diag(const ApartmentPoint& x) const;

  CommonApartment common_apartment(const LatticeClass& c1, const LatticeClass& c2) const;

  /// w with g.f_E = f_E o w; throws unless E^-1 g E is monomial.
  AffineWeylElement monomial_to_affine_weyl(const FieldMatrix& g, const FieldMatrix& E) const;
  /// A monomial g in SL_n with monomial_to_affine_weyl(g, E) = w; the
  /// translation must be special.
  FieldMatrix monomial_from_affine_weyl(const AffineWeylElement& w, const FieldMatrix& E) const;

 private:
  ValuationSpec spec_;
  std::size_t n_;
  std::shared_ptr<const ModelApartment> apartment_;
};

/// Seeded sampler of matrices and points for the lattice model.
class LatticeSampler {
 public:
  LatticeSampler(const LatticeBuilding& b, std::uint64_t seed) : b_(b), fs_(b.field(), seed) {}

  /// Product of elementary and torus factors, integral about half the time.
  FieldMatrix sl(int factors = 3);
  /// Element of SL_n(O).
  FieldMatrix sl_integral(int factors = 3);
  FieldVector diagonal();
  FieldMatrix monomial();
  /// Element of GL_n: monomial matrix times elementary factors.
  FieldMatrix invertible();
  /// Laurent polynomials with at most two terms keep the arithmetic cheap.
  FieldElement nonzero();
  FieldElement unit();
  /// Element of the valuation ring, zero now and then.
  FieldElement integral();
  ApartmentPoint special_point(int bound = 3);
  ApartmentPoint realizable_point(int bound = 3);
  FieldSampler& fields() { return fs_; }

 private:
  FieldMatrix elementary(bool integral);
  FieldMatrix torus(bool integral);

  const LatticeBuilding& b_;
  FieldSampler fs_;
};

FieldMatrix diagonal_matrix(const FieldVector& d);
bool is_monomial(const FieldMatrix& m);

nlohmann::json to_json(const FieldMatrix& m, FieldKind kind);
FieldMatrix field_matrix_from_json(const nlohmann::json& j, FieldKind kind);
nlohmann::json to_json(const LatticeClass& c, FieldKind kind);

/// Report of the dual-path stabilizer test on `samples` random SL_n elements.
CheckReport stab_theorem_check(const LatticeBuilding& b, std::size_t samples, std::uint64_t seed);
/// f_E(x) is unchanged under `twists` unit-twisted witnesses for each of
/// `points` sampled (E, x), and distinct points give distinct classes.
CheckReport chart_twist_check(const LatticeBuilding& b, std::size_t points, std::size_t twists, std::uint64_t seed);
/// For random diagonals a, x = diag_to_point(a) has alpha_ij(x) = v(a_i/a_j)
/// and f(x) = a.[L_0].
CheckReport diagonal_roundtrip_check(const LatticeBuilding& b, std::size_t samples, std::uint64_t seed);
/// monomial_to_affine_weyl(gh) = monomial_to_affine_weyl(g) monomial_to_affine_weyl(h)
/// for sampled monomial pairs and charts.
CheckReport coset_algebra_check(const LatticeBuilding& b, std::size_t samples, std::uint64_t seed);

}  // namespace affbuild
