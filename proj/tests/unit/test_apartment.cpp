#include <random>

#include "affbuild/apartment_morphism.hpp"
#include "doctest.h"

using namespace affbuild;

namespace {

std::shared_ptr<const ModelApartment> apt(RootSystemTag tag, std::size_t rank, std::size_t k = 1) {
  return std::make_shared<const ModelApartment>(RootSystem::standard(tag, rank), k);
}

ApartmentPoint pt(std::initializer_list<Rational> xs) {
  std::vector<LexValue> c;
  for (const auto& x : xs) c.push_back(LexValue{x});
  return ApartmentPoint(std::move(c));
}

}  // namespace

TEST_CASE("pairing") {
  const auto a1 = apt(RootSystemTag::A, 1, 2);
  const ApartmentPoint x = ApartmentPoint::basis(1, 0, LexValue{3, -1});
  CHECK(a1->pairing(x, {1}) == LexValue{6, -2});
  CHECK(a1->pairing(a1->zero(), {1}) == LexValue{0, 0});
  const auto a2 = apt(RootSystemTag::A, 2);
  CHECK(a2->pairing(pt({1, 0}), {0, 1}) == LexValue{-1});
}

TEST_CASE("affine Weyl action") {
  const auto a1 = apt(RootSystemTag::A, 1);
  const std::size_t r = *a1->weyl().index_of(a1->system().reflection(a1->system().simple_indices()[0]));
  const AffineWeylElement w{pt({5}), r};
  CHECK(a1->act(w, pt({2})) == pt({3}));
  CHECK(a1->act(a1->identity(), pt({2})) == pt({2}));

  const auto a2 = apt(RootSystemTag::A, 2, 2);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto g = a2->random_element(rng, 4);
    const auto h = a2->random_element(rng, 4);
    const auto x = a2->random_point(rng, 4);
    CHECK(a2->act(g, a2->act(h, x)) == a2->act(a2->multiply(g, h), x));
    CHECK(a2->act(a2->inverse(g), a2->act(g, x)) == x);
    // Translations are recovered from the orbit of 0.
    CHECK(a2->act(a2->translation(g.translation), a2->zero()) == g.translation);
  }
}

TEST_CASE("norm") {
  const auto a1 = apt(RootSystemTag::A, 1);
  CHECK(a1->norm(a1->zero()) == LexValue{0});
  CHECK(a1->norm(pt({Rational(3, 2)})) == LexValue{6});
  const auto g2 = apt(RootSystemTag::G2, 2, 2);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const auto x = g2->random_point(rng, 3);
    CHECK(g2->norm(x) >= LexValue{0, 0});
    CHECK((g2->norm(x) == LexValue{0, 0}) == x.is_zero());
    for (std::size_t w = 0; w < g2->weyl().size(); ++w) CHECK(g2->norm(g2->spherical_act(w, x)) == g2->norm(x));
  }
}

TEST_CASE("half-apartments, chambers and closed sets") {
  const auto a2 = apt(RootSystemTag::A, 2);
  const std::size_t alpha = a2->system().simple_indices()[0];
  const HalfApartment plus{alpha, LexValue{0}, 1}, minus{alpha, LexValue{0}, -1};
  CHECK(a2->contains(plus, a2->zero()));
  CHECK(a2->contains(minus, a2->zero()));
  CHECK(a2->contains(std::vector<HalfApartment>{}, pt({7, -3})));
  const auto c0 = a2->fundamental_chamber();
  const ApartmentPoint rho = pt({1, 1});
  CHECK(a2->contains(c0, rho));
  CHECK(a2->in_sector(rho, a2->weyl().identity(), a2->zero()));
  CHECK(a2->in_sector(rho + pt({5, 2}), a2->weyl().identity(), pt({5, 2})));
  CHECK_FALSE(a2->contains(c0, pt({-1, 1})));

  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto x = a2->random_point(rng, 5);
    // Agreement of closed-chamber membership with sector membership.
    CHECK(a2->contains(c0, x) == a2->in_sector(x, a2->weyl().identity(), a2->zero()));
    // Wall: intersection of opposite half-apartments.
    const HalfApartment hp{alpha, LexValue{2}, 1}, hm{alpha, LexValue{2}, -1};
    CHECK(a2->contains({hp, hm}, x) == (a2->pairing_root(x, alpha) == LexValue{2}));
    // Reflection in the wall swaps the two sides.
    const auto r = a2->wall_reflection(alpha, LexValue{2});
    CHECK(a2->contains(hp, x) == a2->contains(hm, a2->act(r, x)));
    CHECK(a2->act(r, a2->act(r, x)) == x);
  }
}

TEST_CASE("restricted translations") {
  const RootSystem a1 = RootSystem::standard(RootSystemTag::A, 1);
  const ModelApartment a(a1, 1, {pt({1})});
  CHECK(a.in_translations(pt({-4})));
  CHECK_FALSE(a.in_translations(pt({Rational(1, 2)})));
  CHECK_THROWS_AS(a.translation(pt({Rational(1, 3)})), Error);
  const RootSystem b2 = RootSystem::standard(RootSystemTag::B, 2);
  CHECK_THROWS_AS(ModelApartment(b2, 1, {pt({1, 0})}), Error);
}

TEST_CASE("tau and flags") {
  const auto m = lambda_change_morphism(RootSystem::standard(RootSystemTag::A, 1), OrderedGroupMorphism::first_projection(2));
  CHECK(m.tau(ApartmentPoint::basis(1, 0, LexValue{3, 5})) == pt({3}));
  CHECK(m.tau(m.source->zero()).is_zero());
  CHECK(verify_morphism(m).passed());
  const MorphismFlags f = flags(m);
  CHECK_FALSE(f.injective);
  CHECK(f.surjective);
}

TEST_CASE("inversion") {
  for (std::size_t n : {1, 2, 3}) {
    const auto a = apt(RootSystemTag::A, n);
    const auto inv = inversion_morphism(a);
    CHECK(verify_morphism(inv).passed());
    for (std::size_t i = 0; i < inv.sigma_s.size(); ++i) CHECK(inv.sigma_s[i] == i);
    CHECK(inverse(inv) == inv);
    CHECK(compose(inv, inv) == identity_morphism(a));
    const MorphismFlags f = flags(inv);
    CHECK(f.injective);
    CHECK(f.surjective);
    std::mt19937_64 rng(n);
    const auto x = a->random_point(rng, 5);
    CHECK(inv.tau(x) == -x);
    const auto t = inv.sigma(a->translation(x));
    CHECK(t.translation == -x);
  }
}

TEST_CASE("broken sigma is rejected") {
  const auto a2 = apt(RootSystemTag::A, 2);
  ApartmentMorphism m = identity_morphism(a2);
  const std::size_t r = *a2->weyl().index_of(a2->system().reflection(a2->system().simple_indices()[0]));
  m.sigma_s[r] = a2->weyl().identity();
  const MorphismReport rep = verify_morphism(m);
  CHECK_FALSE(rep.passed());
  CHECK_FALSE(rep.diagram);
  CHECK_FALSE(rep.witnesses.empty());
}

TEST_CASE("category laws") {
  const RootSystem a2 = RootSystem::standard(RootSystemTag::A, 2);
  const auto p = lambda_change_morphism(a2, OrderedGroupMorphism::first_projection(2));
  const auto i = lambda_change_morphism(a2, OrderedGroupMorphism::inclusion(1, 2));
  const auto pi = compose(p, ApartmentMorphism{p.target, p.source, i.L, i.gamma, i.sigma_s});
  CHECK(pi.gamma == OrderedGroupMorphism::identity(1));
  CHECK(compose(p, identity_morphism(p.source)) == p);
  CHECK(compose(identity_morphism(p.target), p) == p);

  // Associativity on random automorphisms built from Weyl elements.
  const auto a = std::make_shared<const ModelApartment>(a2, 1);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> pick(0, a->weyl().size() - 1);
  auto conj = [&](std::size_t u) {
    // x -> u x, sigma(w) = u w u^-1.
    ApartmentMorphism m = identity_morphism(a);
    m.L = a->weyl().delta(u);
    for (std::size_t w = 0; w < m.sigma_s.size(); ++w)
      m.sigma_s[w] = a->weyl().multiply(a->weyl().multiply(u, w), a->weyl().inverse(u));
    return m;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto m1 = conj(pick(rng)), m2 = conj(pick(rng)), m3 = conj(pick(rng));
    CHECK(verify_morphism(m1, 10).passed());
    CHECK(compose(m3, compose(m2, m1)) == compose(compose(m3, m2), m1));
    CHECK(compose(inverse(m1), m1) == identity_morphism(a));
    CHECK(verify_morphism(inverse(m1), 10).passed());
  }
}
