#include <random>

#include "affbuild/lattice_building.hpp"
#include "doctest.h"

using namespace affbuild;

namespace {

const ValuationSpec kDegree{ValuationKind::Degree};
const ValuationSpec kLex{ValuationKind::LexMultidegree};

FieldElement t(const char* s) { return parse_field_element(s, FieldKind::RationalT); }

FieldMatrix tmat(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<FieldVector> r;
  for (const auto& row : rows) {
    FieldVector v;
    for (const char* e : row) v.push_back(t(e));
    r.push_back(v);
  }
  return FieldMatrix::from_rows(r);
}

bool integral_matrix(const ValuationSpec& spec, const FieldMatrix& m) {
  for (const auto& x : m.data())
    if (!in_valuation_ring(spec, x)) return false;
  return true;
}

// Homothety oracle independent of the canonical form: scale so that
// rep2^-1 rep1 has minimal valuation 0, then test containment both ways.
bool same_class_oracle(const LatticeBuilding& b, const FieldMatrix& a, const FieldMatrix& c) {
  const FieldMatrix m = inverse(c) * a;
  std::optional<LexValue> low;
  for (const auto& x : m.data())
    if (!x.is_zero() && (!low || b.v(x) < *low)) low = b.v(x);
  const FieldMatrix scaled = element_with_valuation(b.spec(), *low).inverse() * m;
  return integral_matrix(b.spec(), scaled) && integral_matrix(b.spec(), inverse(scaled));
}

ApartmentPoint pt(std::initializer_list<Rational> xs) {
  std::vector<LexValue> c;
  for (const auto& x : xs) c.push_back(LexValue{x});
  return ApartmentPoint(std::move(c));
}

std::size_t root_index(const LatticeBuilding& b, std::size_t i, std::size_t j) {
  Vector r(b.n(), 0);
  r[i] = 1;
  r[j] = -1;
  return *b.apartment()->system().index_of(r);
}

}  // namespace

TEST_CASE("canonical form examples") {
  const LatticeBuilding b(kDegree, 2);
  CHECK(b.canonical_form(FieldMatrix::identity(2)) == b.base());
  const FieldMatrix l = tmat({{"1/t", "0"}, {"0", "t"}});
  const LatticeClass c = b.canonical_form(l);
  CHECK(c.canonical == tmat({{"1", "0"}, {"0", "t^2"}}));
  CHECK(b.canonical_form(c.canonical) == c);
  CHECK(same_class_oracle(b, l, c.canonical));

  // Span oracle: random O-combinations of either basis lie in the other lattice up to the scale t.
  FieldSampler s(FieldKind::RationalT, 5);
  const FieldMatrix scaled_l = FieldElement(t("t")) * l;
  for (int i = 0; i < 20; ++i) {
    const FieldVector coeffs{s.integral(kDegree), s.integral(kDegree)};
    const FieldVector in_l = scaled_l * coeffs;
    CHECK(integral_matrix(kDegree, FieldMatrix::from_columns({inverse(c.canonical) * in_l})));
    const FieldVector in_c = c.canonical * coeffs;
    CHECK(integral_matrix(kDegree, FieldMatrix::from_columns({inverse(scaled_l) * in_c})));
  }
}

TEST_CASE("canonical form is constant on orbits") {
  for (const auto& spec : {kDegree, kLex}) {
    for (std::size_t n : {2, 3}) {
      const LatticeBuilding b(spec, n);
      LatticeSampler s(b, 11 + n);
      for (int i = 0; i < 15; ++i) {
        const FieldMatrix l = s.invertible();
        const LatticeClass c = b.canonical_form(l);
        CHECK(b.canonical_form(c.canonical) == c);
        CHECK(b.canonical_form(l * s.sl_integral()) == c);
        CHECK(b.canonical_form(s.nonzero() * l) == c);
        const FieldMatrix other = l * s.sl();
        CHECK((b.canonical_form(other) == c) == same_class_oracle(b, l, other));
      }
    }
  }
}

TEST_CASE("chart evaluation") {
  const LatticeBuilding b(kDegree, 2);
  const FieldMatrix id = FieldMatrix::identity(2);
  CHECK(b.chart_eval(id, pt({0})) == b.base());
  CHECK(b.chart_eval(id, pt({1})).canonical == tmat({{"1", "0"}, {"0", "t^2"}}));
  CHECK(b.is_realizable(pt({Rational(1, 2)})));
  CHECK_FALSE(b.is_realizable(pt({Rational(1, 3)})));
  CHECK_FALSE(b.is_special(pt({Rational(1, 2)})));
  CHECK_THROWS_AS(b.chart_eval(id, pt({Rational(1, 3)})), Error);
  CHECK(b.chart_eval(id, pt({Rational(1, 2)})).canonical == tmat({{"1", "0"}, {"0", "t"}}));

  const LatticeBuilding b3(kLex, 3);
  LatticeSampler s(b3, 21);
  for (int i = 0; i < 20; ++i) {
    const FieldMatrix E = s.invertible();
    const ApartmentPoint x = s.realizable_point(2);
    const LatticeClass c = b3.chart_eval(E, x);
    for (int k = 0; k < 3; ++k) CHECK(b3.chart_eval(E, x, {s.unit(), s.unit(), s.unit()}) == c);
    const ApartmentPoint y = s.realizable_point(2);
    CHECK((b3.chart_eval(E, y) == c) == (x == y));
  }
}

TEST_CASE("group action") {
  const LatticeBuilding b(kDegree, 2);
  CHECK(b.act(FieldMatrix::identity(2), b.base()) == b.base());
  const LatticeClass moved = b.act(tmat({{"1", "t"}, {"0", "1"}}), b.base());
  CHECK_FALSE(moved == b.base());
  // (t, 1) lies in the moved lattice but not in O^2.
  CHECK(integral_matrix(kDegree, FieldMatrix::from_columns({inverse(moved.canonical) * FieldVector{t("t"), 1}})));
  CHECK(b.act(tmat({{"1", "1/t"}, {"0", "1"}}), b.base()) == b.base());
  CHECK_THROWS_AS(b.act(tmat({{"1", "1"}, {"1", "1"}}), b.base()), Error);
  CHECK_THROWS_AS(b.act(tmat({{"t", "0"}, {"0", "1"}}), b.base()), Error);
  CHECK_NOTHROW(b.act(tmat({{"t", "0"}, {"0", "1"}}), b.base(), true));

  LatticeSampler s(b, 3);
  for (int i = 0; i < 20; ++i) {
    const FieldMatrix g = s.sl(), h = s.sl();
    const LatticeClass c = b.chart_eval(FieldMatrix::identity(2), s.realizable_point());
    CHECK(b.act(g, b.act(h, c)) == b.act(g * h, c));
  }
}

TEST_CASE("stabilizer of the base point") {
  const LatticeBuilding b(kDegree, 2);
  const StabVerdict id = b.stab_point_membership(FieldMatrix::identity(2));
  CHECK(id.fixes);
  CHECK(id.integral);
  const StabVerdict d = b.stab_point_membership(tmat({{"t", "0"}, {"0", "1/t"}}));
  CHECK_FALSE(d.fixes);
  CHECK_FALSE(d.integral);
  for (const auto& spec : {kDegree, kLex}) {
    for (std::size_t n : {2, 3}) {
      const LatticeBuilding bn(spec, n);
      const CheckReport r = stab_theorem_check(bn, 200, 100 + n);
      CHECK(r.samples == 200);
      CHECK(r.passed());
      // The sampler must exercise both outcomes.
      LatticeSampler s(bn, 100 + n);
      int inside = 0;
      for (int i = 0; i < 200; ++i) inside += bn.stab_point_membership(s.sl()).integral ? 1 : 0;
      CHECK(inside > 20);
      CHECK(inside < 180);
    }
  }
}

TEST_CASE("stabilizer of the standard apartment") {
  const LatticeBuilding b(kDegree, 2);
  const FieldMatrix id = FieldMatrix::identity(2);
  LatticeSampler s(b, 8);
  std::vector<ApartmentPoint> pts;
  for (int i = 0; i < 25; ++i) pts.push_back(s.realizable_point(4));

  const FieldElement u = t("(t + 1)/t");
  const FieldMatrix du = diagonal_matrix({u, u.inverse()});
  CHECK(b.stab_apartment_membership(du, id));
  CHECK(b.fixes_chart_points(du, id, pts));

  const FieldMatrix dt = tmat({{"t", "0"}, {"0", "1/t"}});
  CHECK_FALSE(b.stab_apartment_membership(dt, id));
  CHECK_FALSE(b.fixes_chart_points(dt, id, pts));
  // dt shifts the chart by a translation.
  for (const auto& x : pts) CHECK(b.act(dt, b.chart_eval(id, x)) == b.chart_eval(id, x + pt({-1})));

  const FieldMatrix swap = tmat({{"0", "1"}, {"-1", "0"}});
  CHECK_FALSE(b.stab_apartment_membership(swap, id));
  CHECK_FALSE(b.fixes_chart_points(swap, id, pts));

  // Conjugated charts.
  const LatticeBuilding b3(kDegree, 3);
  LatticeSampler s3(b3, 9);
  std::vector<ApartmentPoint> pts3;
  for (int i = 0; i < 25; ++i) pts3.push_back(s3.realizable_point(3));
  for (int i = 0; i < 10; ++i) {
    const FieldMatrix E = s3.invertible();
    const FieldElement u1 = s3.unit(), u2 = s3.unit();
    const FieldMatrix g = E * diagonal_matrix({u1, u2, (u1 * u2).inverse()}) * inverse(E);
    CHECK(b3.stab_apartment_membership(g, E));
    CHECK(b3.fixes_chart_points(g, E, pts3));
  }
}

TEST_CASE("diagonals and points") {
  const LatticeBuilding b(kDegree, 2);
  CHECK(b.diag_to_point({1, 1}) == pt({0}));
  const FieldVector a{t("1/t"), t("t")};
  const ApartmentPoint x = b.diag_to_point(a);
  CHECK(x == pt({1}));
  CHECK(b.chart_eval(FieldMatrix::identity(2), x) == b.act(diagonal_matrix(a), b.base()));
  CHECK(b.point_to_diag(x) == a);

  for (const auto& spec : {kDegree, kLex}) {
    const LatticeBuilding b3(spec, 3);
    LatticeSampler s(b3, 31);
    for (int i = 0; i < 40; ++i) {
      const FieldVector d = s.diagonal();
      const ApartmentPoint p = b3.diag_to_point(d);
      CHECK(b3.is_special(p));
      for (std::size_t i1 = 0; i1 < 3; ++i1)
        for (std::size_t j1 = 0; j1 < 3; ++j1)
          if (i1 != j1) CHECK(b3.apartment()->pairing_root(p, root_index(b3, i1, j1)) == b3.v(d[i1] / d[j1]));
      CHECK(b3.chart_eval(FieldMatrix::identity(3), p) == b3.act(diagonal_matrix(d), b3.base()));
      const FieldVector back = b3.point_to_diag(p);
      for (std::size_t k = 0; k < 3; ++k) CHECK(is_unit(spec, back[k] / d[k]));
    }
  }
}

TEST_CASE("common apartments") {
  const LatticeBuilding b(kDegree, 2);
  const CommonApartment same = b.common_apartment(b.base(), b.base());
  CHECK(same.x == pt({0}));
  CHECK(same.y == pt({0}));
  const LatticeClass c2 = b.canonical_form(tmat({{"1", "0"}, {"0", "t^2"}}));
  const CommonApartment ca = b.common_apartment(b.base(), c2);
  CHECK(ca.x == pt({0}));
  CHECK(b.chart_eval(ca.basis, ca.y) == c2);
  CHECK(b.apartment()->norm(ca.y) == LexValue{4});

  for (const auto& spec : {kDegree, kLex}) {
    const LatticeBuilding b3(spec, 3);
    LatticeSampler s(b3, 41);
    for (int i = 0; i < 15; ++i) {
      const LatticeClass p = b3.canonical_form(s.invertible());
      const LatticeClass q = b3.canonical_form(s.invertible());
      const CommonApartment c = b3.common_apartment(p, q);
      CHECK(b3.chart_eval(c.basis, c.x) == p);
      CHECK(b3.chart_eval(c.basis, c.y) == q);
    }
  }
}

TEST_CASE("monomial cosets") {
  const LatticeBuilding b(kDegree, 2);
  const FieldMatrix id = FieldMatrix::identity(2);
  const FieldElement u = t("(t + 1)/t");
  CHECK(b.monomial_to_affine_weyl(diagonal_matrix({u, u.inverse()}), id) == b.apartment()->identity());
  const AffineWeylElement r = b.monomial_to_affine_weyl(tmat({{"0", "1"}, {"1", "0"}}), id);
  CHECK(r.translation == pt({0}));
  CHECK(b.apartment()->weyl()[r.spherical].word.size() == 1);
  const AffineWeylElement tr = b.monomial_to_affine_weyl(tmat({{"1/t", "0"}, {"0", "t"}}), id);
  CHECK(tr == AffineWeylElement{pt({1}), b.apartment()->weyl().identity()});
  CHECK_THROWS_AS(b.monomial_to_affine_weyl(tmat({{"1", "1"}, {"0", "1"}}), id), Error);

  for (const auto& spec : {kDegree, kLex}) {
    for (std::size_t n : {2, 3}) {
      const LatticeBuilding bn(spec, n);
      LatticeSampler s(bn, 51 + n);
      std::vector<ApartmentPoint> pts;
      for (int i = 0; i < 10; ++i) pts.push_back(s.realizable_point(2));
      for (int i = 0; i < 10; ++i) {
        const FieldMatrix E = s.invertible();
        const FieldMatrix g = E * s.monomial() * inverse(E);
        const FieldMatrix h = E * s.monomial() * inverse(E);
        const AffineWeylElement wg = bn.monomial_to_affine_weyl(g, E);
        const AffineWeylElement wh = bn.monomial_to_affine_weyl(h, E);
        for (const auto& x : pts)
          CHECK(bn.act(g, bn.chart_eval(E, x)) == bn.chart_eval(E, bn.apartment()->act(wg, x)));
        CHECK(bn.monomial_to_affine_weyl(g * h, E) == bn.apartment()->multiply(wg, wh));
        // Every special affine Weyl element has a monomial preimage.
        const FieldMatrix back = bn.monomial_from_affine_weyl(wg, E);
        CHECK(determinant(back) == FieldElement(1));
        CHECK(bn.monomial_to_affine_weyl(back, E) == wg);
      }
    }
  }
}

TEST_CASE("json") {
  const FieldMatrix m = tmat({{"1/t", "t + 1"}, {"0", "-2"}});
  const auto j = to_json(m, FieldKind::RationalT);
  CHECK(field_matrix_from_json(j, FieldKind::RationalT) == m);
  CHECK_THROWS_AS(field_matrix_from_json(nlohmann::json::array({{"x"}}), FieldKind::RationalT), ParseError);
}

TEST_CASE("sampled lattice checks") {
  for (const auto& spec : {kDegree, kLex}) {
    for (std::size_t n : {2u, 3u}) {
      const LatticeBuilding b(spec, n);
      const CheckReport twists = chart_twist_check(b, 8, 3, 5);
      CHECK(twists.passed());
      CHECK(twists.samples == 24);
      const CheckReport diag = diagonal_roundtrip_check(b, 10, 6);
      CHECK(diag.passed());
      CHECK(diag.samples == 10);
      const CheckReport cosets = coset_algebra_check(b, 10, 7);
      CHECK(cosets.passed());
      CHECK(to_json(cosets)["verdict"] == "PASS");
    }
  }
}
