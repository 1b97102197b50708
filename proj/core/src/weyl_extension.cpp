#include "affbuild/weyl_extension.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "affbuild/polyhedral.hpp"

namespace affbuild {

namespace {

/// Row of the covector x -> <alpha, B c> in the coordinates c.
RationalVector covector_row(const RootSystem& ambient, const Vector& alpha, const RationalMatrix& basis) {
  RationalVector row(basis.cols());
  for (std::size_t j = 0; j < basis.cols(); ++j) row[j] = ambient.inner(alpha, basis.column(j));
  return row;
}

std::vector<RationalVector> chamber_rows(const RootSystem& system, const RootSystem& ambient,
                                         const RationalMatrix& basis) {
  std::vector<RationalVector> rows;
  // Simple roots vanishing on V carry no constraint.
  for (auto s : system.simple_indices()) {
    RationalVector row = covector_row(ambient, system.root(s), basis);
    if (std::any_of(row.begin(), row.end(), [](const Rational& x) { return x != 0; })) rows.push_back(std::move(row));
  }
  return rows;
}

bool strictly_inside(const std::vector<RationalVector>& rows, const RationalVector& c) {
  for (const auto& r : rows)
    if (dot(r, c) <= 0) return false;
  return true;
}

const std::vector<int>& small_primes() {
  static const std::vector<int> p{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  return p;
}

/// Moves c inside the open cone until `good(B c)` holds.
template <class Pred>
std::optional<RationalVector> perturb_until(const std::vector<RationalVector>& rows, RationalVector c,
                                            const RationalMatrix& basis, Pred good) {
  if (good(basis * c)) return c;
  const auto& primes = small_primes();
  for (std::size_t attempt = 0; attempt < 256; ++attempt) {
    RationalVector d(c.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = primes[(i + attempt) % primes.size()] * (i % 2 ? -1 : 1);
    Rational delta(1, 2 + static_cast<long>(attempt));
    for (;;) {
      RationalVector cand = c;
      for (std::size_t i = 0; i < d.size(); ++i) cand[i] += delta * d[i];
      if (strictly_inside(rows, cand)) {
        if (good(basis * cand)) return cand;
        break;
      }
      delta /= 2;
    }
  }
  return std::nullopt;
}

bool sub_regular(const RootSystem& sub, const Vector& p) { return is_regular(sub, p); }

bool same_vanishing(const RootSystem& ambient, const std::vector<std::size_t>& sigma_v, const Vector& p) {
  return vanishing_roots(ambient, {p}) == sigma_v;
}

/// A point of the open chamber C_0 of `system` (full ambient coordinates).
Vector chamber_interior(const RootSystem& system) {
  const RationalMatrix id = RationalMatrix::identity(system.ambient_dim());
  const ConeAnalysis cone = analyze_cone(chamber_rows(system, system, id), system.ambient_dim());
  return cone.relative_interior;
}

std::string vec_str(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

}  // namespace

EmbeddedPair make_embedded_pair(const RootSystem& ambient, const std::vector<Vector>& sub_roots,
                                const std::optional<Vector>& sub_chamber, const std::optional<Vector>& ambient_chamber,
                                std::string name) {
  EmbeddedPair pair;
  pair.name = std::move(name);
  pair.sub = RootSystem::custom(sub_roots, ambient.gram(), "SUB", sub_chamber);
  for (const auto& r : pair.sub.roots()) {
    try {
      (void)ambient.to_delta(r);
    } catch (const Error&) {
      throw Error("sub-root " + vec_str(r) + " is not in the span of the ambient roots");
    }
  }
  pair.v_basis = pair.sub.basis_matrix();
  std::vector<Vector> v_cols;
  for (std::size_t j = 0; j < pair.v_basis.cols(); ++j) v_cols.push_back(pair.v_basis.column(j));
  pair.sigma_v = vanishing_roots(ambient, v_cols);

  if (ambient_chamber) {
    pair.ambient = ambient.rebased(*ambient_chamber);
    pair.ambient_chamber_point = *ambient_chamber;
  } else {
    const auto rows = chamber_rows(pair.sub, ambient, pair.v_basis);
    const ConeAnalysis cone = analyze_cone(rows, pair.v_basis.cols());
    auto c = perturb_until(rows, cone.relative_interior, pair.v_basis, [&](const Vector& p) {
      return sub_regular(pair.sub, p) && same_vanishing(ambient, pair.sigma_v, p);
    });
    if (!c) throw Error("no V-regular point in the sub-chamber");
    const Vector p0 = pair.v_basis * *c;
    const Vector g = chamber_interior(ambient);
    Rational min_p = -1, max_g = 0;
    for (std::size_t a = 0; a < ambient.size(); ++a) {
      const Rational ap = abs_value(ambient.evaluate(a, p0));
      if (ap != 0 && (min_p < 0 || ap < min_p)) min_p = ap;
      max_g = std::max(max_g, abs_value(ambient.evaluate(a, g)));
    }
    const Rational eps = min_p < 0 ? Rational(1) : min_p / (2 * max_g + 1);
    Vector q = p0;
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += eps * g[i];
    pair.ambient = ambient.rebased(q);
    pair.ambient_chamber_point = q;
  }
  if (!is_regular(pair.ambient, pair.ambient_chamber_point)) throw Error("ambient chamber point is not regular");
  pair.ambient_weyl = enumerate_weyl_group(pair.ambient);
  pair.sub_weyl = enumerate_weyl_group(pair.sub);
  (void)find_v_regular_point(pair);
  return pair;
}

Vector find_v_regular_point(const EmbeddedPair& pair) {
  auto rows = chamber_rows(pair.sub, pair.ambient, pair.v_basis);
  const auto amb_rows = chamber_rows(pair.ambient, pair.ambient, pair.v_basis);
  rows.insert(rows.end(), amb_rows.begin(), amb_rows.end());
  const ConeAnalysis cone = analyze_cone(rows, pair.v_basis.cols());
  if (!cone.implicit_rows.empty()) {
    throw Error("C_0 and C_0' meet in a cone with empty interior in V; no V-regular point exists");
  }
  auto c = perturb_until(rows, cone.relative_interior, pair.v_basis, [&](const Vector& p) {
    return sub_regular(pair.sub, p) && same_vanishing(pair.ambient, pair.sigma_v, p);
  });
  if (!c) throw Error("no V-regular point found in C_0 and C_0'");
  return pair.v_basis * *c;
}

TriangleReport check_condition_triangle(const EmbeddedPair& pair) {
  TriangleReport report;
  const RationalMatrix& B = pair.v_basis;
  const std::size_t r = B.cols();
  auto base = chamber_rows(pair.sub, pair.ambient, B);
  const auto amb = chamber_rows(pair.ambient, pair.ambient, B);
  base.insert(base.end(), amb.begin(), amb.end());
  const WeylGroup& W = pair.sub_weyl;
  const WeylGroup& W2 = pair.ambient_weyl;
  for (std::size_t w = 0; w < W.size(); ++w) {
    const RationalMatrix wB = W[w].matrix * B;
    for (std::size_t w2 = 0; w2 < W2.size(); ++w2) {
      ++report.pairs_checked;
      const RationalMatrix M = W2[W2.inverse(w2)].matrix * wB;
      std::vector<RationalVector> rows = base;
      for (auto s : pair.ambient.simple_indices()) {
        RationalVector row(r);
        for (std::size_t j = 0; j < r; ++j) row[j] = pair.ambient.inner(pair.ambient.root(s), M.column(j));
        rows.push_back(std::move(row));
      }
      const ConeAnalysis cone = analyze_cone(rows, r);
      if (!cone.implicit_rows.empty()) ++report.empty_or_lower_dim;
      const RationalMatrix D = wB - W2[w2].matrix * B;
      for (const auto& s : cone.span) {
        const Vector ds = D * s;
        if (std::all_of(ds.begin(), ds.end(), [](const Rational& x) { return x == 0; })) continue;
        report.passed = false;
        RationalVector c = cone.relative_interior;
        const Vector dc = D * c;
        if (std::all_of(dc.begin(), dc.end(), [](const Rational& x) { return x == 0; })) {
          std::vector<RationalVector> open_rows;
          for (std::size_t i = 0; i < rows.size(); ++i)
            if (std::find(cone.implicit_rows.begin(), cone.implicit_rows.end(), i) == cone.implicit_rows.end())
              open_rows.push_back(rows[i]);
          Rational delta = 1;
          for (;;) {
            RationalVector cand = c;
            for (std::size_t i = 0; i < r; ++i) cand[i] += delta * s[i];
            if (strictly_inside(open_rows, cand)) {
              c = cand;
              break;
            }
            delta /= 2;
          }
        }
        TriangleWitness wit;
        wit.w = w;
        wit.w_prime = w2;
        wit.x = B * c;
        wit.wx = W[w].matrix * wit.x;
        wit.w_prime_x = W2[w2].matrix * wit.x;
        report.witness = std::move(wit);
        return report;
      }
    }
  }
  return report;
}

bool confirms_violation(const EmbeddedPair& pair, const TriangleWitness& w) {
  const Vector& x = w.x;
  if (!in_chamber(pair.sub, RationalMatrix::identity(x.size()), x)) return false;
  if (!in_chamber(pair.ambient, RationalMatrix::identity(x.size()), x)) return false;
  const Vector wx = pair.sub_weyl[w.w].matrix * x;
  const Vector w2x = pair.ambient_weyl[w.w_prime].matrix * x;
  return in_chamber(pair.ambient, pair.ambient_weyl[w.w_prime].matrix, wx) && wx != w2x;
}

std::size_t triangle_sampling_counterexamples(const EmbeddedPair& pair, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-30, 30);
  std::uniform_int_distribution<int> den(1, 5);
  const RationalMatrix& B = pair.v_basis;
  auto rows = chamber_rows(pair.sub, pair.ambient, B);
  const auto amb = chamber_rows(pair.ambient, pair.ambient, B);
  rows.insert(rows.end(), amb.begin(), amb.end());
  const WeylGroup& W = pair.sub_weyl;
  const WeylGroup& W2 = pair.ambient_weyl;
  std::vector<RationalMatrix> inv2;
  for (std::size_t i = 0; i < W2.size(); ++i) inv2.push_back(W2[W2.inverse(i)].matrix);
  std::size_t bad = 0, taken = 0;
  for (std::size_t attempt = 0; taken < samples && attempt < 1000 * samples + 1000; ++attempt) {
    RationalVector c(B.cols());
    bool nonzero = false;
    for (auto& x : c) {
      x = make_rational(num(rng), den(rng));
      nonzero = nonzero || x != 0;
    }
    if (!nonzero) continue;
    bool inside = true;
    for (const auto& row : rows)
      if (dot(row, c) < 0) inside = false;
    if (!inside) continue;
    ++taken;
    const Vector x = B * c;
    bool counterexample = false;
    for (std::size_t w = 0; w < W.size() && !counterexample; ++w) {
      const Vector wx = W[w].matrix * x;
      for (std::size_t w2 = 0; w2 < W2.size(); ++w2) {
        const Vector y = inv2[w2] * wx;
        bool in = true;
        for (auto s : pair.ambient.simple_indices())
          if (pair.ambient.evaluate(s, y) < 0) {
            in = false;
            break;
          }
        if (in && W2[w2].matrix * x != wx) {
          counterexample = true;
          break;
        }
      }
    }
    if (counterexample) ++bad;
  }
  if (taken < samples) throw Error("could not sample enough points of C_0 and C_0'");
  return bad;
}

SigmaTable construct_sigma(const EmbeddedPair& pair) {
  const TriangleReport tri = check_condition_triangle(pair);
  if (!tri.passed) throw Error("construct_sigma: the chamber compatibility condition fails for " + pair.name);
  SigmaTable out;
  out.p = find_v_regular_point(pair);
  const WeylGroup& W = pair.sub_weyl;
  const WeylGroup& W2 = pair.ambient_weyl;
  const RootSystem& amb = pair.ambient;
  const std::set<std::size_t> sv(pair.sigma_v.begin(), pair.sigma_v.end());
  const auto& pos = amb.positive_indices();

  std::vector<std::vector<int>> chamber_signs(W2.size());
  for (std::size_t w2 = 0; w2 < W2.size(); ++w2) {
    const Vector q = W2[w2].matrix * pair.ambient_chamber_point;
    for (auto a : pos) chamber_signs[w2].push_back(amb.evaluate(a, q) > 0 ? 1 : -1);
  }
  out.regularity_invariant = true;
  for (std::size_t w = 0; w < W.size(); ++w) {
    const Vector wp = W[w].matrix * out.p;
    if (!same_vanishing(amb, pair.sigma_v, wp)) out.regularity_invariant = false;
    std::vector<int> target;
    for (auto a : pos) target.push_back(sv.count(a) ? 1 : (amb.evaluate(a, wp) > 0 ? 1 : -1));
    std::vector<std::size_t> hits;
    for (std::size_t w2 = 0; w2 < W2.size(); ++w2)
      if (chamber_signs[w2] == target) hits.push_back(w2);
    if (hits.size() != 1) throw Error("construct_sigma: chamber location is ambiguous");
    out.sigma.push_back(hits.front());
  }
  if (!out.regularity_invariant) throw Error("construct_sigma: W does not preserve V-regularity of p");

  out.homomorphism = true;
  for (std::size_t a = 0; a < W.size(); ++a)
    for (std::size_t b = 0; b < W.size(); ++b)
      if (out.sigma[W.multiply(a, b)] != W2.multiply(out.sigma[a], out.sigma[b])) out.homomorphism = false;
  std::set<std::size_t> image(out.sigma.begin(), out.sigma.end());
  out.image_size = image.size();
  out.injective = image.size() == W.size();
  out.restricts = true;
  for (std::size_t w = 0; w < W.size(); ++w)
    if (!(W2[out.sigma[w]].matrix * pair.v_basis == W[w].matrix * pair.v_basis)) out.restricts = false;
  std::set<std::size_t> f_roots;
  for (auto a : pos)
    if (sv.count(a)) f_roots.insert(a);
  out.preserves_f = true;
  for (std::size_t w = 0; w < W.size(); ++w) {
    std::set<std::size_t> moved;
    for (auto a : f_roots) {
      auto idx = amb.index_of(W2[out.sigma[w]].matrix * amb.root(a));
      if (idx) moved.insert(*idx);
    }
    if (moved != f_roots) out.preserves_f = false;
  }
  if (!out.homomorphism || !out.injective || !out.restricts || !out.preserves_f) {
    throw Error("construct_sigma: post-verification failed");
  }
  return out;
}

ApartmentMorphism build_apartment_morphism_from_embedding(const EmbeddedPair& pair, const SigmaTable& sigma,
                                                          const OrderedGroupMorphism& gamma,
                                                          std::shared_ptr<const ModelApartment> source,
                                                          const std::optional<RationalMatrix>& j,
                                                          std::shared_ptr<const ModelApartment> target) {
  const OrderCheck oc = is_order_preserving(gamma);
  if (!oc.order_preserving) throw Error("gamma is not order preserving");
  if (!source) source = std::make_shared<const ModelApartment>(pair.sub, gamma.source_rank());
  if (!target) target = std::make_shared<const ModelApartment>(pair.ambient, gamma.target_rank());
  const RationalMatrix J = j ? *j : RationalMatrix::identity(pair.ambient.ambient_dim());
  if (J.rows() != pair.ambient.ambient_dim() || J.cols() != source->system().ambient_dim()) {
    throw DimensionError("embedding matrix has the wrong shape");
  }
  const RootSystem& src = source->system();
  ApartmentMorphism m;
  m.source = source;
  m.target = target;
  m.gamma = gamma;
  std::vector<Vector> cols;
  std::vector<Vector> images;
  for (auto s : src.simple_indices()) {
    images.push_back(J * src.root(s));
    cols.push_back(target->system().to_delta(images.back()));
  }
  m.L = RationalMatrix::from_columns(cols);
  for (std::size_t w = 0; w < source->weyl().size(); ++w) {
    std::optional<std::size_t> u;
    for (std::size_t cand = 0; cand < pair.sub_weyl.size() && !u; ++cand) {
      bool match = true;
      for (std::size_t i = 0; i < images.size() && match; ++i) {
        const Vector lhs = pair.sub_weyl[cand].matrix * images[i];
        const Vector rhs = J * (source->weyl()[w].matrix * src.root(src.simple_indices()[i]));
        match = lhs == rhs;
      }
      if (match) u = cand;
    }
    if (!u) throw Error("source Weyl element has no counterpart in the embedded sub-system");
    const auto t = target->weyl().index_of(pair.ambient_weyl[sigma.sigma.at(*u)].matrix);
    if (!t) throw Error("target apartment does not carry the ambient Weyl group");
    m.sigma_s.push_back(*t);
  }
  require_valid(m);
  return m;
}

namespace {

Vector v(std::initializer_list<int> xs) {
  Vector out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

std::vector<Vector> with_negatives(std::vector<Vector> roots) {
  const std::size_t n = roots.size();
  for (std::size_t i = 0; i < n; ++i) {
    Vector m = roots[i];
    for (auto& x : m) x = -x;
    roots.push_back(std::move(m));
  }
  return roots;
}

RootSystem a1xa1() {
  return RootSystem::custom(with_negatives({v({1, 0}), v({0, 1})}), RationalMatrix::identity(2), "A1xA1");
}

std::vector<Vector> block_roots(std::size_t m, std::size_t n) {
  std::vector<Vector> roots;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      if (i == k) continue;
      Vector r(n, Rational(0));
      r[i] = 1;
      r[k] = -1;
      roots.push_back(std::move(r));
    }
  return roots;
}

}  // namespace

std::vector<std::string> named_embeddings() {
  return {"a1-perp-in-a2", "a1-tilted-in-a2", "a1-diag-in-a1xa1", "a1-axis-in-a1xa1", "a2-long-in-g2",
          "b2-in-a3",      "a2-block-in-a3",  "a1-block-in-a2",   "a1-block-in-a3",   "a2-in-a2"};
}

EmbeddedPair named_embedding(const std::string& name) {
  const RootSystem a2 = RootSystem::standard(RootSystemTag::A, 2);
  const RootSystem a3 = RootSystem::standard(RootSystemTag::A, 3);
  if (name == "a1-perp-in-a2") return make_embedded_pair(a2, with_negatives({v({1, -1, 0})}), {}, {}, name);
  if (name == "a1-tilted-in-a2") return make_embedded_pair(a2, with_negatives({v({3, -1, -2})}), {}, {}, name);
  if (name == "a1-diag-in-a1xa1") return make_embedded_pair(a1xa1(), with_negatives({v({1, 1})}), {}, {}, name);
  if (name == "a1-axis-in-a1xa1") return make_embedded_pair(a1xa1(), with_negatives({v({1, 0})}), {}, {}, name);
  if (name == "a2-long-in-g2") {
    return make_embedded_pair(RootSystem::standard(RootSystemTag::G2),
                              with_negatives({v({2, -1, -1}), v({-1, 2, -1}), v({-1, -1, 2})}), {}, {}, name);
  }
  if (name == "b2-in-a3") {
    return make_embedded_pair(
        a3, with_negatives({v({1, 0, 0, -1}), v({0, 1, -1, 0}), v({1, 1, -1, -1}), v({1, -1, 1, -1})}), {}, {},
        name);
  }
  if (name == "a2-block-in-a3") return make_embedded_pair(a3, block_roots(3, 4), {}, {}, name);
  if (name == "a1-block-in-a2") return make_embedded_pair(a2, block_roots(2, 3), {}, {}, name);
  if (name == "a1-block-in-a3") return make_embedded_pair(a3, block_roots(2, 4), {}, {}, name);
  if (name == "a2-in-a2") return make_embedded_pair(a2, a2.roots(), {}, {}, name);
  throw ParseError("unknown embedding", name);
}

EmbeddedPair embedded_pair_from_json(const nlohmann::json& j) {
  if (j.contains("builtin")) return named_embedding(j.at("builtin").get<std::string>());
  const RootSystem ambient = root_system_from_json(j.at("ambient"));
  std::vector<Vector> roots;
  for (const auto& r : j.at("sub_roots")) roots.push_back(vector_from_json(r));
  if (j.value("add_negatives", false)) roots = with_negatives(std::move(roots));
  std::optional<Vector> sub_chamber, amb_chamber;
  if (j.contains("sub_chamber")) sub_chamber = vector_from_json(j.at("sub_chamber"));
  if (j.contains("ambient_chamber")) amb_chamber = vector_from_json(j.at("ambient_chamber"));
  return make_embedded_pair(ambient, roots, sub_chamber, amb_chamber, j.value("name", std::string("embedding")));
}

nlohmann::json to_json(const EmbeddedPair& pair) {
  nlohmann::json sub = nlohmann::json::array();
  for (const auto& r : pair.sub.roots()) sub.push_back(to_json(r));
  nlohmann::json sv = nlohmann::json::array();
  for (auto a : pair.sigma_v) sv.push_back(to_json(pair.ambient.root(a)));
  return {{"name", pair.name},
          {"ambient", to_json(pair.ambient)},
          {"sub_roots", sub},
          {"sub_weyl_order", pair.sub_weyl.size()},
          {"ambient_weyl_order", pair.ambient_weyl.size()},
          {"ambient_chamber_point", to_json(pair.ambient_chamber_point)},
          {"sigma_prime_v", sv}};
}

nlohmann::json to_json(const TriangleReport& r) {
  nlohmann::json j = {{"passed", r.passed},
                      {"pairs_checked", r.pairs_checked},
                      {"lower_dimensional_cones", r.empty_or_lower_dim}};
  if (r.witness) {
    j["witness"] = {{"w", r.witness->w},
                    {"w_prime", r.witness->w_prime},
                    {"x", to_json(r.witness->x)},
                    {"w_x", to_json(r.witness->wx)},
                    {"w_prime_x", to_json(r.witness->w_prime_x)}};
  }
  return j;
}

nlohmann::json to_json(const SigmaTable& s) {
  return {{"p", to_json(s.p)},
          {"sigma", s.sigma},
          {"homomorphism", s.homomorphism},
          {"injective", s.injective},
          {"restricts_to_w_on_V", s.restricts},
          {"preserves_F", s.preserves_f},
          {"regularity_invariant", s.regularity_invariant},
          {"image_size", s.image_size}};
}

}  // namespace affbuild
