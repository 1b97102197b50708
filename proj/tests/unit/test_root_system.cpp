#include <set>

#include "affbuild/ordered_group.hpp"
#include "affbuild/root_system.hpp"
#include "doctest.h"

using namespace affbuild;

namespace {

std::vector<std::pair<RootSystemTag, std::size_t>> shipped() {
  return {{RootSystemTag::A, 1}, {RootSystemTag::A, 2}, {RootSystemTag::A, 3}, {RootSystemTag::B, 2},
          {RootSystemTag::B, 3}, {RootSystemTag::C, 2}, {RootSystemTag::C, 3}, {RootSystemTag::D, 4},
          {RootSystemTag::G2, 2}};
}

}  // namespace

TEST_CASE("standard systems") {
  CHECK(RootSystem::standard(RootSystemTag::A, 2).size() == 6);
  CHECK(RootSystem::standard(RootSystemTag::A, 3).size() == 12);
  CHECK(RootSystem::standard(RootSystemTag::B, 2).size() == 8);
  CHECK(RootSystem::standard(RootSystemTag::D, 4).size() == 24);
  const RootSystem g2 = RootSystem::standard(RootSystemTag::G2);
  CHECK(g2.size() == 12);
  CHECK(g2.rank() == 2);
  for (const auto& [tag, rank] : shipped()) {
    const RootSystem rs = RootSystem::standard(tag, rank);
    CHECK(rs.verify_axioms().passed());
    CHECK(rs.positive_indices().size() * 2 == rs.size());
  }
}

TEST_CASE("long roots of G2 form A2") {
  const RootSystem g2 = RootSystem::standard(RootSystemTag::G2);
  std::vector<Vector> longs;
  for (const auto& r : g2.roots())
    if (g2.inner(r, r) == 6) longs.push_back(r);
  CHECK(longs.size() == 6);
  const RootSystem a2 = RootSystem::custom(longs, g2.gram());
  CHECK(a2.rank() == 2);
  CHECK(enumerate_weyl_group(a2).size() == 6);
}

TEST_CASE("custom systems and axiom violations") {
  const RootSystem a1 = RootSystem::custom({{1}, {-1}}, RationalMatrix::from_rows({{2}}));
  CHECK(a1.size() == 2);
  CHECK(a1.coroot_pairing(0, a1.root(0)) == 2);
  CHECK_THROWS_WITH_AS(RootSystem::custom({{1, 0}, {-1, 0}, {1, 1}, {-1, -1}}, RationalMatrix::identity(2)),
                       doctest::Contains("RS_"), Error);
  CHECK_THROWS_WITH_AS(RootSystem::custom({{1}, {-1}, {2}, {-2}}, RationalMatrix::identity(1)),
                       doctest::Contains("not reduced"), Error);
  CHECK_THROWS_AS(parse_tag("BC"), ParseError);
}

TEST_CASE("reflections and coroots") {
  const RootSystem a2 = RootSystem::standard(RootSystemTag::A, 2);
  const auto a1 = a2.simple_indices()[0];
  const auto a2i = a2.simple_indices()[1];
  const RationalMatrix r = a2.reflection(a1);
  Vector neg = a2.root(a1);
  for (auto& x : neg) x = -x;
  CHECK(r * a2.root(a1) == neg);
  Vector sum = a2.root(a1);
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += a2.root(a2i)[i];
  CHECK(r * a2.root(a2i) == sum);
  CHECK(r * r == RationalMatrix::identity(3));
  CHECK(a2.coroot_pairing(a1, a2.root(a2i)) == -1);
  CHECK(a2.coroot_pairing(a1, {1, 1, 1}) == 0);
}

TEST_CASE("Weyl group orders") {
  CHECK(enumerate_weyl_group(RootSystem::standard(RootSystemTag::A, 2)).size() == 6);
  CHECK(enumerate_weyl_group(RootSystem::standard(RootSystemTag::B, 2)).size() == 8);
  CHECK(enumerate_weyl_group(RootSystem::standard(RootSystemTag::G2)).size() == 12);
  CHECK(enumerate_weyl_group(RootSystem::standard(RootSystemTag::A, 3)).size() == 24);
  CHECK(enumerate_weyl_group(RootSystem::standard(RootSystemTag::B, 3)).size() == 48);
  CHECK_THROWS_AS(enumerate_weyl_group(RootSystem::standard(RootSystemTag::A, 3), 10), Error);
}

TEST_CASE("Weyl group structure") {
  for (const auto& [tag, rank] : shipped()) {
    const RootSystem rs = RootSystem::standard(tag, rank);
    const WeylGroup w = enumerate_weyl_group(rs);
    for (std::size_t a = 0; a < rs.size(); ++a) CHECK(w.index_of(rs.reflection(a)).has_value());
    // Sorted by matrix entries.
    for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i - 1].matrix.data() < w[i].matrix.data());
    for (std::size_t i = 0; i < w.size(); ++i) {
      const RationalMatrix& m = w[i].matrix;
      CHECK(m.transpose() * rs.gram() * m == rs.gram());
      std::set<Vector> image;
      for (const auto& r : rs.roots()) image.insert(m * r);
      CHECK(image == std::set<Vector>(rs.roots().begin(), rs.roots().end()));
      // The word reproduces the matrix.
      RationalMatrix prod = RationalMatrix::identity(rs.ambient_dim());
      for (auto s : w[i].word) prod = prod * rs.reflection(rs.simple_indices()[s]);
      CHECK(prod == m);
    }
  }
}

TEST_CASE("walls move with the group") {
  const RootSystem b2 = RootSystem::standard(RootSystemTag::B, 2);
  const WeylGroup W = enumerate_weyl_group(b2);
  for (std::size_t i = 0; i < W.size(); ++i) {
    for (std::size_t a = 0; a < b2.size(); ++a) {
      const auto wa = b2.index_of(W[i].matrix * b2.root(a));
      REQUIRE(wa.has_value());
      CHECK(W[i].matrix * b2.reflection(a) * inverse(W[i].matrix) == b2.reflection(*wa));
    }
  }
}

TEST_CASE("vanishing roots") {
  const RootSystem a2 = RootSystem::standard(RootSystemTag::A, 2);
  CHECK(vanishing_roots(a2, {}).size() == 6);
  CHECK(vanishing_roots(a2, {{0, 0, 0}}).size() == 6);
  CHECK(vanishing_roots(a2, {{1, -1, 0}}).empty());
  const RootSystem a1a1 = RootSystem::custom({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, RationalMatrix::identity(2));
  CHECK(vanishing_roots(a1a1, {{1, 1}}).empty());
  const auto v = vanishing_roots(a1a1, {{1, 0}});
  REQUIRE(v.size() == 2);
  CHECK(a1a1.root(v[0])[0] == 0);
  CHECK(a1a1.root(v[1])[0] == 0);
}

TEST_CASE("regularity and chambers") {
  const RootSystem a2 = RootSystem::standard(RootSystemTag::A, 2);
  const WeylGroup W = enumerate_weyl_group(a2);
  const Vector rho{1, 0, -1};
  CHECK(is_regular(a2, rho));
  const Chamber c = chamber_of(a2, W, rho);
  CHECK(c.weyl_index == W.identity());
  for (int s : c.signs) CHECK(s == 1);
  CHECK_FALSE(is_regular(a2, {0, 0, 0}));
  CHECK_FALSE(is_regular(a2, {1, 1, -2}));
  CHECK_THROWS_AS(chamber_of(a2, W, {1, 1, -2}), Error);

  // Chambers correspond bijectively to group elements.
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < W.size(); ++i) {
    const Chamber ci = chamber_of(a2, W, W[i].matrix * rho);
    CHECK(ci.weyl_index == i);
    seen.insert(ci.signs);
  }
  CHECK(seen.size() == W.size());
}

TEST_CASE("json") {
  const RootSystem g2 = RootSystem::standard(RootSystemTag::G2);
  const auto j = to_json(g2);
  CHECK(j.at("roots").size() == 12);
  CHECK(root_system_from_json(j).roots() == g2.roots());
  nlohmann::json custom = {{"tag", "CUSTOM"}, {"roots", {{"1"}, {"-1"}}}, {"gram", to_json(RationalMatrix::from_rows({{2}}))}};
  CHECK(root_system_from_json(custom).size() == 2);
}
