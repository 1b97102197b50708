#include "affbuild/building_morphisms.hpp"
#include "doctest.h"

using namespace affbuild;

namespace {

const ValuationSpec kDegree{ValuationKind::Degree};
const ValuationSpec kLex{ValuationKind::LexMultidegree};

FieldElement t(const char* s) { return parse_field_element(s, FieldKind::RationalT); }
FieldElement xy(const char* s) { return parse_field_element(s, FieldKind::RationalXY); }

ApartmentPoint pt(std::initializer_list<Rational> xs) {
  std::vector<LexValue> c;
  for (const auto& x : xs) c.push_back(LexValue{x});
  return ApartmentPoint(std::move(c));
}

// The class of the O-span of diag(d) computed from scratch in the target.
LatticeClass diagonal_class(const LatticeBuilding& b, const FieldVector& d) {
  return b.canonical_form(diagonal_matrix(d));
}

void require_passed(const CheckReport& r) {
  INFO(r.name);
  for (const auto& w : r.witnesses) INFO(w);
  CHECK(r.passed());
}

}  // namespace

TEST_CASE("chart equality and stabilizers of the base instance") {
  const GBuildingInstance g(kDegree, 2);
  CHECK(g.charts_equal(FieldMatrix::identity(2), diagonal_matrix({t("t"), t("3*t")})));
  CHECK_FALSE(g.charts_equal(FieldMatrix::identity(2), diagonal_matrix({t("t"), t("1")})));
  CHECK_FALSE(g.charts_equal(FieldMatrix::identity(2), FieldMatrix::from_rows({{t("1"), t("1")}, {t("0"), t("1")}})));

  const FieldMatrix u = FieldMatrix::from_rows({{t("1"), t("t/(t+1)")}, {t("0"), t("1")}});
  CHECK(g.fixes_base_point(u));
  CHECK_FALSE(g.fixes_base_chart(u));
  CHECK(g.fixes_base_chart(diagonal_matrix({t("2"), t("1/2")})));
  CHECK_FALSE(g.fixes_base_point(diagonal_matrix({t("t"), t("1/t")})));
}

TEST_CASE("translation witnesses and presentations") {
  for (const auto& spec : {kDegree, kLex}) {
    for (std::size_t n : {2u, 3u}) {
      LatticeSampler s0(LatticeBuilding(spec, n), 5);
      const GBuildingInstance g(spec, n, s0.invertible());
      LatticeSampler s(g.building(), 41);
      for (int k = 0; k < 12; ++k) {
        const ApartmentPoint x = s.special_point(3);
        const FieldMatrix w = g.translation_witness(x);
        CHECK(determinant(w) == FieldElement(1));
        CHECK(g.act(w, g.base_point()) == g.point(g.base_chart(), x));

        const LatticeClass c = g.act(s.sl(), g.point(g.base_chart(), s.realizable_point(2)));
        const auto p = g.present(c);
        CHECK(determinant(p.g) == FieldElement(1));
        CHECK(g.act(p.g, g.point(g.base_chart(), p.x)) == c);
      }
      require_passed(g.compatibility_check(15, 3));
    }
  }
}

TEST_CASE("group maps") {
  GroupMap block;
  block.kind = GroupMap::Kind::Block;
  block.block_size = 3;
  const FieldMatrix g = FieldMatrix::from_rows({{t("t"), t("1")}, {t("0"), t("1/t")}});
  const FieldMatrix expected = FieldMatrix::from_rows(
      {{t("t"), t("1"), t("0")}, {t("0"), t("1/t"), t("0")}, {t("0"), t("0"), t("1")}});
  CHECK(block.apply(g) == expected);
  block.block_size = 1;
  CHECK_THROWS_AS(block.apply(g), DimensionError);

  GroupMap entrywise;
  entrywise.eta = FieldMorphism{FieldMorphismKind::IdentityRevalue, kLex, ValuationSpec{ValuationKind::FirstVariable}};
  const FieldMatrix h = FieldMatrix::from_rows({{xy("X"), xy("Y")}, {xy("0"), xy("1/X")}});
  CHECK(entrywise.apply(h) == h);
}

TEST_CASE("identity morphism is valid") {
  for (const auto& spec : {kDegree, kLex}) {
    const MorphismCertificate cert = check_conditions_baby(instance_identity(spec, 2), 40, 7);
    CHECK(cert.valid());
    for (const auto& c : cert.conditions) {
      CHECK(c.passed);
      CHECK(c.samples > 0);
    }
    CHECK(cert.conditions[0].mode == "exact+sampled");
    CHECK(cert.conditions[2].mode == "constructive");
    CHECK(cert.flags.injective);
    CHECK(cert.flags.surjective);
    require_passed(diagram_check(cert, 15, 2));
    require_passed(equivariance_check(cert, 10, 3));
    require_passed(injectivity_check(cert, 15, 4));
  }
}

TEST_CASE("field change morphism") {
  for (std::size_t n : {2u, 3u}) {
    const MorphismCertificate cert = check_conditions_baby(instance_field_change(n), 40, 11);
    for (const auto& c : cert.conditions) {
      INFO(c.name);
      for (const auto& w : c.witnesses) INFO(w);
      CHECK(c.passed);
    }
    CHECK_FALSE(cert.flags.injective);
    CHECK(cert.flags.surjective);
    require_passed(collision_check(cert, 12, 5));
    require_passed(diagram_check(cert, 12, 6));
    require_passed(equivariance_check(cert, 8, 7));
    require_passed(coset_check(cert, 20, 8));
  }

  const MorphismCertificate cert = check_conditions_baby(instance_field_change(2), 20, 13);
  const LatticeBuilding& src = cert.instance.source->building();
  const LatticeBuilding& tgt = cert.instance.target->building();
  const FieldMatrix id = FieldMatrix::identity(2);
  // Y is a unit for the first-variable valuation, so the Y-translation dies.
  const ApartmentPoint y_shift = src.diag_to_point({xy("1/Y"), xy("Y")});
  CHECK_FALSE(y_shift == src.apartment()->zero());
  CHECK(apply_morphism(cert, id, y_shift) == tgt.base());
  const ApartmentPoint x_shift = src.diag_to_point({xy("1/X"), xy("X")});
  CHECK(apply_morphism(cert, id, x_shift) == diagonal_class(tgt, {xy("1/X"), xy("X")}));
  CHECK(apply_morphism(cert, id, x_shift + y_shift) == apply_morphism(cert, id, x_shift));
}

TEST_CASE("a tau that swaps the value coordinates breaks condition (3)") {
  const MorphismCertificate cert = check_conditions_baby(instance_broken_tau(2), 30, 3);
  CHECK(cert.conditions[0].passed);
  CHECK(cert.conditions[1].passed);
  CHECK_FALSE(cert.conditions[2].passed);
  CHECK_FALSE(cert.conditions[2].witnesses.empty());
  CHECK_FALSE(cert.valid());
  CHECK_THROWS_AS(apply_morphism(cert, FieldMatrix::identity(2), pt({0})), Error);
  CHECK(to_json(cert)["valid"] == false);
}

TEST_CASE("block embedding") {
  const MorphismCertificate cert = check_conditions_baby(instance_block_embedding(2, 3), 40, 19);
  for (const auto& c : cert.conditions) {
    INFO(c.name);
    for (const auto& w : c.witnesses) INFO(w);
    CHECK(c.passed);
  }
  CHECK(cert.flags.injective);
  CHECK_FALSE(cert.flags.surjective);

  const GBuildingInstance& src = *cert.instance.source;
  const LatticeBuilding& tgt = cert.instance.target->building();
  CHECK(apply_morphism(cert, src.base_point()) == tgt.base());
  const FieldMatrix id = FieldMatrix::identity(2);
  CHECK(apply_morphism(cert, id, pt({1})) == diagonal_class(tgt, {t("1/t"), t("t"), t("1")}));
  CHECK(apply_morphism(cert, id, pt({-2})) == diagonal_class(tgt, {t("t^2"), t("1/t^2"), t("1")}));
  CHECK_THROWS_AS(apply_morphism(cert, id, pt({Rational(1, 2)})), Error);
  CHECK(apply_morphism_chart(cert, id) == FieldMatrix::identity(3));

  require_passed(injectivity_check(cert, 20, 2));
  require_passed(collision_check(cert, 10, 3));
  require_passed(diagram_check(cert, 10, 4));
  require_passed(equivariance_check(cert, 8, 5));
  require_passed(coset_check(cert, 20, 6));

  for (auto [m, n] : {std::pair{3u, 4u}, std::pair{2u, 4u}}) {
    const MorphismCertificate c = check_conditions_baby(instance_block_embedding(m, n), 15, 23);
    CHECK(c.valid());
    CHECK(c.flags.injective);
    require_passed(injectivity_check(c, 6, 9));
  }
  CHECK_THROWS_AS(instance_block_embedding(3, 3), Error);
}

TEST_CASE("apartment inversion inside the building") {
  const LatticeBuilding b(kDegree, 2);
  const ApartmentMorphism inv = inversion_morphism(b.apartment());
  const FieldVector a{t("1/t"), t("t")};
  CHECK(b.diag_to_point(a) == pt({1}));
  CHECK(inv.tau(pt({1})) == pt({-1}));
  CHECK(b.diag_to_point({t("t"), t("1/t")}) == pt({-1}));

  for (const auto& spec : {kDegree, kLex})
    for (std::size_t n : {2u, 3u}) require_passed(inversion_selfcheck(spec, n, 15, 29));
}

TEST_CASE("certificate json") {
  const MorphismCertificate cert = check_conditions_baby(instance_block_embedding(2, 3), 10, 1);
  const auto j = to_json(cert);
  CHECK(j["instance"] == "block-embed/m=2/n=3");
  CHECK(j["valid"] == true);
  CHECK(j["conditions"].size() == 3);
  CHECK(j["flags"]["injective"] == true);
  CHECK(j["special_points_only"] == true);
  CHECK(j.dump() == to_json(check_conditions_baby(instance_block_embedding(2, 3), 10, 1)).dump());
}

TEST_CASE("inverse transpose over the apartment inversion") {
  for (const auto& spec : {kDegree, kLex}) {
    for (std::size_t n : {2u, 3u}) {
      const MorphismCertificate cert = check_conditions_baby(instance_inversion(spec, n), 30, 37);
      for (const auto& c : cert.conditions) {
        INFO(c.name);
        for (const auto& w : c.witnesses) INFO(w);
        CHECK(c.passed);
      }
      CHECK(cert.flags.injective);
      CHECK(cert.flags.surjective);
      require_passed(diagram_check(cert, 8, 2));
      require_passed(equivariance_check(cert, 6, 3));
      require_passed(coset_check(cert, 15, 4));
    }
  }
  const MorphismCertificate cert = check_conditions_baby(instance_inversion(kDegree, 2), 20, 1);
  const LatticeBuilding& b = cert.instance.target->building();
  CHECK(apply_morphism(cert, FieldMatrix::identity(2), pt({1})) == diagonal_class(b, {t("t"), t("1/t")}));
}
