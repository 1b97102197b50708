#include <random>

#include "affbuild/ordered_group.hpp"
#include "doctest.h"

using namespace affbuild;

namespace {

// Independent positivity oracle: first nonzero coordinate > 0.
bool lex_positive(const RationalVector& v) {
  for (const auto& x : v) {
    if (x > 0) return true;
    if (x < 0) return false;
  }
  return false;
}

bool lex_negative(const RationalVector& v) {
  for (const auto& x : v) {
    if (x < 0) return true;
    if (x > 0) return false;
  }
  return false;
}

RationalVector random_vec(std::mt19937_64& rng, std::size_t k, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  RationalVector v(k);
  for (auto& x : v) x = make_rational(d(rng), 1 + std::abs(d(rng)));
  return v;
}

}  // namespace

TEST_CASE("lexicographic comparison") {
  CHECK(compare(LexValue{1, -100}, LexValue{0, 100}) == std::strong_ordering::greater);
  CHECK(compare(LexValue{0, 0}, LexValue{0, 0}) == std::strong_ordering::equal);
  CHECK(compare(LexValue{2, 3}, LexValue{2, Rational(7, 2)}) == std::strong_ordering::less);
  CHECK(LexValue::infinity(2) > LexValue{1000, 1000});
  CHECK_THROWS_AS(compare(LexValue{1}, LexValue{1, 2}), DimensionError);
}

TEST_CASE("infinity absorbs addition") {
  CHECK((LexValue::infinity(1) + LexValue{3}).is_infinite());
  CHECK((LexValue{3} + LexValue::infinity(1)).is_infinite());
}

TEST_CASE("order is compatible with addition") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const LexValue a(random_vec(rng, 3, 4)), b(random_vec(rng, 3, 4)), c(random_vec(rng, 3, 4));
    if (a < b) CHECK(a + c < b + c);
  }
}

TEST_CASE("apply") {
  CHECK(OrderedGroupMorphism::first_projection(2)(LexValue{3, 5}) == LexValue{3});
  CHECK(OrderedGroupMorphism::identity(2)(LexValue{Rational(1, 3), -2}) == LexValue{Rational(1, 3), -2});
  CHECK(OrderedGroupMorphism::inclusion(1, 2)(LexValue{4}) == LexValue{4, 0});
  CHECK(OrderedGroupMorphism::identity(2)(LexValue::infinity(2)).is_infinite());
  CHECK_THROWS_AS(OrderedGroupMorphism::identity(2)(LexValue{1}), DimensionError);
}

TEST_CASE("order preservation decision") {
  CHECK(is_order_preserving(OrderedGroupMorphism::first_projection(2)).order_preserving);
  CHECK(is_order_preserving(OrderedGroupMorphism::identity(3)).order_preserving);

  const OrderedGroupMorphism swap(RationalMatrix::from_rows({{0, 1}, {1, 0}}));
  const OrderCheck c = is_order_preserving(swap);
  REQUIRE_FALSE(c.order_preserving);
  REQUIRE(c.witness.has_value());
  CHECK(lex_positive(c.witness->coords()));
  CHECK(lex_negative(swap(*c.witness).coords()));
  CHECK(*c.witness == LexValue{1, -1});
}

TEST_CASE("decision agrees with a sampling oracle") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    RationalMatrix m(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) m(i, j) = entry(rng);
    const OrderedGroupMorphism g(m);
    const OrderCheck c = is_order_preserving(g);
    bool sampled_violation = false;
    for (int s = 0; s < 1000 && !sampled_violation; ++s) {
      const RationalVector x = random_vec(rng, 2, 6);
      if (lex_positive(x) && lex_negative(g(LexValue(x)).coords())) sampled_violation = true;
    }
    if (c.order_preserving) CHECK_FALSE(sampled_violation);
    if (!c.order_preserving) {
      CHECK(lex_positive(c.witness->coords()));
      CHECK(lex_negative(g(*c.witness).coords()));
    }
  }
}

TEST_CASE("composition of order-preserving maps") {
  const auto p = OrderedGroupMorphism::first_projection(2);
  const auto i = OrderedGroupMorphism::inclusion(1, 2);
  CHECK(is_order_preserving(compose(p, i)).order_preserving);
  CHECK(compose(p, i) == OrderedGroupMorphism::identity(1));
  CHECK(is_order_preserving(compose(i, p)).order_preserving);
}

TEST_CASE("rank flags") {
  CHECK(morphism_rank_flags(OrderedGroupMorphism::first_projection(2)) == RankFlags{false, true});
  CHECK(morphism_rank_flags(OrderedGroupMorphism::inclusion(1, 2)) == RankFlags{true, false});
  CHECK(morphism_rank_flags(OrderedGroupMorphism::identity(2)) == RankFlags{true, true});
}

TEST_CASE("json round trip") {
  const OrderedGroupMorphism g(RationalMatrix::from_rows({{Rational(1, 2), 0}, {3, -1}}));
  const auto j = to_json(g);
  CHECK(j.at("rows") == 2);
  CHECK(j.at("entries")[0][0] == "1/2");
  CHECK(ordered_group_morphism_from_json(j) == g);
}
