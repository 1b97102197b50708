#include <set>
#include <string>

#include "affbuild/weyl_extension.hpp"
#include "doctest.h"

using namespace affbuild;

TEST_CASE("V-regular points") {
  const EmbeddedPair perp = named_embedding("a1-perp-in-a2");
  CHECK(perp.sigma_v.empty());
  const Vector p = find_v_regular_point(perp);
  CHECK(vanishing_roots(perp.ambient, {p}).empty());

  const EmbeddedPair diag = named_embedding("a1-diag-in-a1xa1");
  const Vector q = find_v_regular_point(diag);
  CHECK(q[0] == q[1]);
  CHECK(q[0] > 0);
  CHECK(vanishing_roots(diag.ambient, {q}).empty());

  const EmbeddedPair same = named_embedding("a2-in-a2");
  CHECK(same.sigma_v.empty());
  CHECK(is_regular(same.ambient, find_v_regular_point(same)));

  const EmbeddedPair axis = named_embedding("a1-axis-in-a1xa1");
  CHECK(axis.sigma_v.size() == 2);
  const Vector a = find_v_regular_point(axis);
  CHECK(vanishing_roots(axis.ambient, {a}) == axis.sigma_v);
}

TEST_CASE("condition triangle matches the expected verdicts") {
  const TriangleReport perp = check_condition_triangle(named_embedding("a1-perp-in-a2"));
  CHECK(perp.passed);
  const EmbeddedPair tilted = named_embedding("a1-tilted-in-a2");
  const TriangleReport t = check_condition_triangle(tilted);
  REQUIRE_FALSE(t.passed);
  REQUIRE(t.witness.has_value());
  CHECK(confirms_violation(tilted, *t.witness));
  CHECK(t.witness->wx != t.witness->w_prime_x);
  CHECK(check_condition_triangle(named_embedding("a2-in-a2")).passed);
  for (std::string name : {"a1-diag-in-a1xa1", "a2-long-in-g2", "b2-in-a3", "a2-block-in-a3"}) {
    CAPTURE(name);
    const EmbeddedPair pair = named_embedding(name);
    CHECK(check_condition_triangle(pair).passed);
  }
}

TEST_CASE("sampling oracle agrees") {
  for (std::string name : {"a1-perp-in-a2", "a1-diag-in-a1xa1", "a2-long-in-g2"}) {
    CAPTURE(name);
    CHECK(triangle_sampling_counterexamples(named_embedding(name), 300, 9) == 0);
  }
  CHECK(triangle_sampling_counterexamples(named_embedding("a1-tilted-in-a2"), 50, 9) > 0);
}

TEST_CASE("sigma for A2 long roots in G2") {
  const EmbeddedPair pair = named_embedding("a2-long-in-g2");
  const SigmaTable s = construct_sigma(pair);
  CHECK(s.sigma.size() == 6);
  CHECK(s.image_size == 6);
  CHECK(pair.ambient_weyl.size() == 12);
  CHECK(s.homomorphism);
  CHECK(s.injective);
  CHECK(s.restricts);
  CHECK(s.sigma[pair.sub_weyl.identity()] == pair.ambient_weyl.identity());
}

TEST_CASE("sigma for A1 diagonal in A1xA1") {
  const EmbeddedPair pair = named_embedding("a1-diag-in-a1xa1");
  const SigmaTable s = construct_sigma(pair);
  const std::size_t r = 1 - pair.sub_weyl.identity();
  // On the diagonal the reflection is x -> -x; the extension is -Id.
  CHECK(pair.ambient_weyl[s.sigma[r]].matrix == RationalMatrix::from_rows({{-1, 0}, {0, -1}}));
}

TEST_CASE("sigma for A1 on an axis of A1xA1 picks the factor reflection") {
  const EmbeddedPair pair = named_embedding("a1-axis-in-a1xa1");
  const SigmaTable s = construct_sigma(pair);
  const std::size_t r = 1 - pair.sub_weyl.identity();
  CHECK(pair.ambient_weyl[s.sigma[r]].matrix == RationalMatrix::from_rows({{-1, 0}, {0, 1}}));
  CHECK(s.preserves_f);
}

TEST_CASE("apartment morphisms from embeddings") {
  const EmbeddedPair b2 = named_embedding("b2-in-a3");
  CHECK(b2.sub_weyl.size() == 8);
  const SigmaTable sb = construct_sigma(b2);
  const ApartmentMorphism mb = build_apartment_morphism_from_embedding(b2, sb, OrderedGroupMorphism::identity(1));
  CHECK(verify_morphism(mb).passed());
  const MorphismFlags fb = flags(mb);
  CHECK(fb.injective);
  CHECK_FALSE(fb.surjective);
  CHECK(fb.sigma_injective);

  const EmbeddedPair g2 = named_embedding("a2-long-in-g2");
  const ApartmentMorphism mg =
      build_apartment_morphism_from_embedding(g2, construct_sigma(g2), OrderedGroupMorphism::identity(1));
  const MorphismFlags fg = flags(mg);
  CHECK(fg.injective);
  CHECK(fg.surjective);
  CHECK(fg.sigma_injective);
  CHECK_FALSE(fg.sigma_surjective);

  const EmbeddedPair same = named_embedding("a2-in-a2");
  const ApartmentMorphism ms =
      build_apartment_morphism_from_embedding(same, construct_sigma(same), OrderedGroupMorphism::identity(2));
  CHECK(ms.L == RationalMatrix::identity(2));
  for (std::size_t i = 0; i < ms.sigma_s.size(); ++i) CHECK(ms.sigma_s[i] == i);

  CHECK_THROWS_AS(build_apartment_morphism_from_embedding(
                      same, construct_sigma(same), OrderedGroupMorphism(RationalMatrix::from_rows({{0, 1}, {1, 0}}))),
                  Error);
}

TEST_CASE("block embedding fixes the extra letters") {
  const EmbeddedPair pair = named_embedding("a2-block-in-a3");
  const SigmaTable s = construct_sigma(pair);
  for (std::size_t w = 0; w < pair.sub_weyl.size(); ++w) {
    const RationalMatrix& m = pair.ambient_weyl[s.sigma[w]].matrix;
    CHECK(m(3, 3) == 1);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(m(i, j) == pair.sub_weyl[w].matrix(i, j));
  }
  // The standard A2 apartment in Q^3 mapped through the coordinate inclusion.
  RationalMatrix j(4, 3);
  for (std::size_t i = 0; i < 3; ++i) j(i, i) = 1;
  auto src = std::make_shared<const ModelApartment>(RootSystem::standard(RootSystemTag::A, 2), 1);
  auto dst = std::make_shared<const ModelApartment>(RootSystem::standard(RootSystemTag::A, 3), 1);
  const ApartmentMorphism m =
      build_apartment_morphism_from_embedding(pair, s, OrderedGroupMorphism::identity(1), src, j, dst);
  CHECK(m.L == RationalMatrix::from_rows({{1, 0}, {0, 1}, {0, 0}}));
}

TEST_CASE("embedding json") {
  nlohmann::json j = {{"ambient", {{"tag", "A"}, {"rank", 2}}},
                      {"sub_roots", {{"3", "-1", "-2"}}},
                      {"add_negatives", true},
                      {"name", "tilted"}};
  const EmbeddedPair pair = embedded_pair_from_json(j);
  CHECK_FALSE(check_condition_triangle(pair).passed);
  CHECK_THROWS_AS(construct_sigma(pair), Error);
}
