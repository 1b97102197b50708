#include "affbuild/apartment_morphism.hpp"

#include <random>

namespace affbuild {

ApartmentPoint ApartmentMorphism::tau(const ApartmentPoint& x) const { return apply_linear(L, apply_gamma(gamma, x)); }

AffineWeylElement ApartmentMorphism::sigma(const AffineWeylElement& w) const {
  return {tau(w.translation), sigma_s.at(w.spherical)};
}

namespace {

void check_shapes(const ApartmentMorphism& m) {
  if (!m.source || !m.target) throw Error("apartment morphism without (co)domain");
  if (m.L.rows() != m.target->dim() || m.L.cols() != m.source->dim()) {
    throw DimensionError("L must be " + std::to_string(m.target->dim()) + " x " + std::to_string(m.source->dim()));
  }
  if (m.gamma.source_rank() != m.source->lambda_rank() || m.gamma.target_rank() != m.target->lambda_rank()) {
    throw DimensionError("gamma does not match the value groups");
  }
  if (m.sigma_s.size() != m.source->weyl().size()) throw DimensionError("sigma_s table has the wrong size");
  for (auto s : m.sigma_s)
    if (s >= m.target->weyl().size()) throw DimensionError("sigma_s refers to a missing Weyl element");
}

std::string word_str(const WeylGroup& g, std::size_t w) {
  std::string s = "w" + std::to_string(w);
  if (!g[w].word.empty()) {
    s += "=";
    for (auto i : g[w].word) s += "s" + std::to_string(i + 1);
  }
  return s;
}

}  // namespace

MorphismReport verify_morphism(const ApartmentMorphism& m, std::size_t samples, std::uint64_t seed) {
  check_shapes(m);
  MorphismReport r;
  const WeylGroup& W = m.source->weyl();
  const WeylGroup& W2 = m.target->weyl();
  auto note = [&](std::string s) {
    if (r.witnesses.size() < 8) r.witnesses.push_back(std::move(s));
  };

  for (std::size_t a = 0; a < W.size(); ++a) {
    for (std::size_t b = 0; b < W.size(); ++b) {
      if (m.sigma_s[W.multiply(a, b)] != W2.multiply(m.sigma_s[a], m.sigma_s[b])) {
        r.homomorphism = false;
        note("sigma_s(" + word_str(W, a) + " * " + word_str(W, b) + ") != sigma_s(w1) sigma_s(w2)");
      }
    }
  }

  const bool gamma_zero = m.gamma.matrix().is_zero();
  for (std::size_t w = 0; w < W.size(); ++w) {
    if (gamma_zero) break;
    if (!(m.L * W.delta(w) == W2.delta(m.sigma_s[w]) * m.L)) {
      r.diagram = false;
      note("diagram fails at " + word_str(W, w) + ": L M_w != M_sigma(w) L");
    }
  }

  const ModelApartment& T2 = *m.target;
  if (T2.translation_mode() == TranslationMode::Generated) {
    if (m.source->translation_mode() == TranslationMode::Generated) {
      for (const auto& g : m.source->generators()) {
        if (!T2.in_translations(m.tau(g))) {
          r.translations = false;
          note("tau(" + g.str() + ") = " + m.tau(g).str() + " is not in T'");
        }
      }
    } else if (!gamma_zero && !m.L.is_zero()) {
      for (std::size_t j = 0; j < m.source->dim() && r.translations; ++j) {
        for (std::size_t i = 0; i < m.source->lambda_rank() && r.translations; ++i) {
          const ApartmentPoint x =
              ApartmentPoint::basis(m.source->dim(), j, LexValue::unit(m.source->lambda_rank(), i)).scaled(Rational(1, 7919));
          if (!T2.in_translations(m.tau(x))) {
            r.translations = false;
            note("tau(" + x.str() + ") is not in T'");
          }
        }
      }
    }
  }

  r.gamma_order_preserving = is_order_preserving(m.gamma).order_preserving;

  if (r.homomorphism && r.diagram && r.translations) {
    std::mt19937_64 rng(seed);
    const ModelApartment& A = *m.source;
    for (std::size_t i = 0; i < samples; ++i) {
      const AffineWeylElement a = A.random_element(rng, 5);
      const AffineWeylElement b = A.random_element(rng, 5);
      const ApartmentPoint x = A.random_point(rng, 5);
      ++r.samples;
      if (!(m.sigma(A.multiply(a, b)) == T2.multiply(m.sigma(a), m.sigma(b)))) {
        r.affine_samples = false;
        note("sigma not multiplicative on sampled affine pair " + std::to_string(i));
      }
      if (!(m.tau(A.act(a, x)) == T2.act(m.sigma(a), m.tau(x)))) {
        r.affine_samples = false;
        note("tau(w.x) != sigma(w).tau(x) at x = " + x.str());
      }
    }
  }
  return r;
}

void require_valid(const ApartmentMorphism& m) {
  const MorphismReport r = verify_morphism(m);
  if (!r.passed()) throw Error("invalid apartment morphism: " + (r.witnesses.empty() ? "?" : r.witnesses.front()));
}

ApartmentMorphism identity_morphism(std::shared_ptr<const ModelApartment> a) {
  ApartmentMorphism m;
  m.L = RationalMatrix::identity(a->dim());
  m.gamma = OrderedGroupMorphism::identity(a->lambda_rank());
  m.sigma_s.resize(a->weyl().size());
  for (std::size_t i = 0; i < m.sigma_s.size(); ++i) m.sigma_s[i] = i;
  m.source = a;
  m.target = std::move(a);
  return m;
}

ApartmentMorphism compose(const ApartmentMorphism& m2, const ApartmentMorphism& m1) {
  if (m1.target != m2.source) {
    const bool same = m1.target && m2.source && m1.target->system().roots() == m2.source->system().roots() &&
                      m1.target->system().simple_indices() == m2.source->system().simple_indices() &&
                      m1.target->lambda_rank() == m2.source->lambda_rank();
    if (!same) throw Error("compose: codomain of the first morphism is not the domain of the second");
  }
  ApartmentMorphism m;
  m.source = m1.source;
  m.target = m2.target;
  m.L = m2.L * m1.L;
  m.gamma = affbuild::compose(m2.gamma, m1.gamma);
  m.sigma_s.resize(m1.sigma_s.size());
  for (std::size_t i = 0; i < m.sigma_s.size(); ++i) m.sigma_s[i] = m2.sigma_s.at(m1.sigma_s[i]);
  return m;
}

ApartmentMorphism inverse(const ApartmentMorphism& m) {
  check_shapes(m);
  if (!m.L.is_square() || !m.gamma.matrix().is_square()) throw Error("inverse: L or gamma is not invertible");
  if (determinant(m.L) == 0 || determinant(m.gamma.matrix()) == 0) {
    throw Error("inverse: L or gamma is not invertible");
  }
  if (m.source->weyl().size() != m.target->weyl().size()) throw Error("inverse: sigma_s is not bijective");
  ApartmentMorphism r;
  r.source = m.target;
  r.target = m.source;
  r.L = affbuild::inverse(m.L);
  r.gamma = OrderedGroupMorphism(affbuild::inverse(m.gamma.matrix()));
  r.sigma_s.assign(m.target->weyl().size(), m.source->weyl().size());
  for (std::size_t i = 0; i < m.sigma_s.size(); ++i) {
    if (r.sigma_s[m.sigma_s[i]] != m.source->weyl().size()) throw Error("inverse: sigma_s is not bijective");
    r.sigma_s[m.sigma_s[i]] = i;
  }
  return r;
}

MorphismFlags flags(const ApartmentMorphism& m) {
  check_shapes(m);
  MorphismFlags f;
  const RankFlags g = morphism_rank_flags(m.gamma);
  const std::size_t rl = affbuild::rank(m.L);
  f.injective = rl == m.L.cols() && g.injective;
  f.surjective = rl == m.L.rows() && g.surjective;
  std::vector<bool> hit(m.target->weyl().size(), false);
  std::size_t distinct = 0;
  for (auto s : m.sigma_s) {
    if (!hit[s]) ++distinct;
    hit[s] = true;
  }
  f.sigma_injective = distinct == m.sigma_s.size();
  f.sigma_surjective = distinct == hit.size();
  return f;
}

ApartmentMorphism inversion_morphism(std::shared_ptr<const ModelApartment> a) {
  ApartmentMorphism m = identity_morphism(std::move(a));
  m.L = Rational(-1) * m.L;
  return m;
}

ApartmentMorphism lambda_change_morphism(const RootSystem& system, const OrderedGroupMorphism& gamma) {
  auto src = std::make_shared<const ModelApartment>(system, gamma.source_rank());
  auto dst = std::make_shared<const ModelApartment>(system, gamma.target_rank());
  ApartmentMorphism m;
  m.source = src;
  m.target = dst;
  m.L = RationalMatrix::identity(src->dim());
  m.gamma = gamma;
  m.sigma_s.resize(src->weyl().size());
  for (std::size_t i = 0; i < m.sigma_s.size(); ++i) m.sigma_s[i] = i;
  return m;
}

bool operator==(const ApartmentMorphism& a, const ApartmentMorphism& b) {
  return a.L == b.L && a.gamma == b.gamma && a.sigma_s == b.sigma_s;
}

nlohmann::json to_json(const ApartmentMorphism& m) {
  return {{"source", m.source ? m.source->system().name() : ""},
          {"target", m.target ? m.target->system().name() : ""},
          {"L", to_json(m.L)},
          {"gamma", to_json(m.gamma)},
          {"sigma_s", m.sigma_s}};
}

nlohmann::json to_json(const MorphismReport& r) {
  return {{"passed", r.passed()},
          {"sigma_s_homomorphism", r.homomorphism},
          {"diagram", r.diagram},
          {"translations", r.translations},
          {"affine_samples", r.affine_samples},
          {"samples", r.samples},
          {"gamma_order_preserving", r.gamma_order_preserving},
          {"witnesses", r.witnesses}};
}

}  // namespace affbuild
