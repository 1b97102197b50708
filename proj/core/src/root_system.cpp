#include "affbuild/root_system.hpp"

#include "affbuild/ordered_group.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace affbuild {

std::string tag_name(RootSystemTag tag) {
  switch (tag) {
    case RootSystemTag::A: return "A";
    case RootSystemTag::B: return "B";
    case RootSystemTag::C: return "C";
    case RootSystemTag::D: return "D";
    case RootSystemTag::G2: return "G2";
    case RootSystemTag::Custom: return "CUSTOM";
  }
  return "?";
}

RootSystemTag parse_tag(const std::string& name) {
  if (name == "A") return RootSystemTag::A;
  if (name == "B") return RootSystemTag::B;
  if (name == "C") return RootSystemTag::C;
  if (name == "D") return RootSystemTag::D;
  if (name == "G2" || name == "G") return RootSystemTag::G2;
  if (name == "CUSTOM" || name == "custom") return RootSystemTag::Custom;
  if (name == "BC") throw ParseError("non-reduced root systems are not supported", name);
  throw ParseError("unknown root system tag", name);
}

namespace {

Vector unit(std::size_t d, std::size_t i, const Rational& c = 1) {
  Vector v(d, Rational(0));
  v[i] = c;
  return v;
}

Vector add(Vector a, const Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vector scale(Vector a, const Rational& c) {
  for (auto& x : a) x *= c;
  return a;
}

Vector neg(const Vector& a) { return scale(a, -1); }

bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

std::string vec_str(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

bool positive_definite(const RationalMatrix& g) {
  if (!g.is_square() || !(g == g.transpose())) return false;
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    RationalMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = g(i, j);
    if (determinant(minor) <= 0) return false;
  }
  return true;
}

}  // namespace

RootSystem RootSystem::standard(RootSystemTag tag, std::size_t rank) {
  RootSystem rs;
  rs.tag_ = tag;
  std::vector<Vector> simple;
  switch (tag) {
    case RootSystemTag::A: {
      if (rank < 1) throw Error("A_n needs rank >= 1");
      const std::size_t d = rank + 1;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (i != j) rs.roots_.push_back(add(unit(d, i), unit(d, j, -1)));
      for (std::size_t i = 0; i < rank; ++i) simple.push_back(add(unit(d, i), unit(d, i + 1, -1)));
      rs.gram_ = RationalMatrix::identity(d);
      break;
    }
    case RootSystemTag::B:
    case RootSystemTag::C:
    case RootSystemTag::D: {
      const std::size_t min_rank = tag == RootSystemTag::D ? 2 : (tag == RootSystemTag::C ? 2 : 1);
      if (rank < min_rank) throw Error(tag_name(tag) + "_n needs rank >= " + std::to_string(min_rank));
      const std::size_t d = rank;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
          for (int si : {1, -1})
            for (int sj : {1, -1}) rs.roots_.push_back(add(unit(d, i, si), unit(d, j, sj)));
        }
        if (tag == RootSystemTag::B) {
          rs.roots_.push_back(unit(d, i));
          rs.roots_.push_back(unit(d, i, -1));
        } else if (tag == RootSystemTag::C) {
          rs.roots_.push_back(unit(d, i, 2));
          rs.roots_.push_back(unit(d, i, -2));
        }
      }
      for (std::size_t i = 0; i + 1 < d; ++i) simple.push_back(add(unit(d, i), unit(d, i + 1, -1)));
      if (tag == RootSystemTag::B) simple.push_back(unit(d, d - 1));
      if (tag == RootSystemTag::C) simple.push_back(unit(d, d - 1, 2));
      if (tag == RootSystemTag::D) simple.push_back(add(unit(d, d - 2), unit(d, d - 1)));
      rs.gram_ = RationalMatrix::identity(d);
      break;
    }
    case RootSystemTag::G2: {
      const std::size_t d = 3;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          if (i == j) continue;
          rs.roots_.push_back(add(unit(d, i), unit(d, j, -1)));
        }
      for (std::size_t i = 0; i < d; ++i) {
        Vector longroot(d, Rational(-1));
        longroot[i] = 2;
        rs.roots_.push_back(longroot);
        rs.roots_.push_back(neg(longroot));
      }
      simple.push_back({1, -1, 0});
      simple.push_back({-2, 1, 1});
      rs.gram_ = RationalMatrix::identity(d);
      break;
    }
    case RootSystemTag::Custom: throw Error("use RootSystem::custom for custom root systems");
  }
  rs.name_ = tag == RootSystemTag::G2 ? "G2" : tag_name(tag) + std::to_string(rank);
  std::sort(rs.roots_.begin(), rs.roots_.end());
  for (std::size_t i = 0; i < rs.roots_.size(); ++i) rs.lookup_.emplace(rs.roots_[i], i);
  for (const auto& s : simple) rs.simple_.push_back(rs.lookup_.at(s));
  // Positive roots: nonnegative coordinates in the simple basis.
  for (std::size_t i = 0; i < rs.roots_.size(); ++i) {
    const Vector c = rs.to_delta(rs.roots_[i]);
    if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return x >= 0; })) rs.positive_.push_back(i);
  }
  return rs;
}

RootSystem RootSystem::custom(std::vector<Vector> roots, RationalMatrix gram, std::string name,
                              const std::optional<Vector>& chamber_point) {
  RootSystem rs;
  rs.tag_ = RootSystemTag::Custom;
  rs.name_ = std::move(name);
  rs.gram_ = std::move(gram);
  if (roots.empty()) throw Error("axiom (RS_I) violated: empty root system");
  for (const auto& r : roots) {
    if (r.size() != rs.gram_.rows()) throw DimensionError("root dimension does not match the Gram matrix");
  }
  std::sort(roots.begin(), roots.end());
  if (std::adjacent_find(roots.begin(), roots.end()) != roots.end()) {
    throw Error("axiom (RS_I) violated: repeated root");
  }
  rs.roots_ = std::move(roots);
  for (std::size_t i = 0; i < rs.roots_.size(); ++i) rs.lookup_.emplace(rs.roots_[i], i);
  if (!positive_definite(rs.gram_)) throw Error("Gram matrix is not symmetric positive definite");
  // Axioms before the base: a base need not exist otherwise.
  {
    AxiomReport pre;
    for (std::size_t a = 0; a < rs.size() && pre.passed(); ++a) {
      if (is_zero_vector(rs.roots_[a])) {
        pre.finite_nonzero = false;
        pre.witness = "zero vector in root list";
      }
    }
    if (!pre.passed()) throw Error("axiom (RS_I) violated: " + pre.witness);
    for (std::size_t a = 0; a < rs.size(); ++a) {
      for (std::size_t b = 0; b < rs.size(); ++b) {
        const Rational c = rs.coroot_pairing(a, rs.roots_[b]);
        if (!is_integer(c)) {
          throw Error("axiom (RS_III) violated: coroot of " + vec_str(rs.roots_[a]) + " on " + vec_str(rs.roots_[b]) +
                      " = " + to_string(c));
        }
        Vector image = rs.roots_[b];
        for (std::size_t i = 0; i < image.size(); ++i) image[i] -= c * rs.roots_[a][i];
        if (!rs.index_of(image)) {
          throw Error("axiom (RS_II) violated: reflection in " + vec_str(rs.roots_[a]) + " maps " +
                      vec_str(rs.roots_[b]) + " outside the root set");
        }
        if (a != b) {
          // Reducedness: proportional roots must be +-.
          const Rational ratio = rs.inner(rs.roots_[a], rs.roots_[b]);
          const Rational aa = rs.inner(rs.roots_[a], rs.roots_[a]);
          const Rational bb = rs.inner(rs.roots_[b], rs.roots_[b]);
          if (ratio * ratio == aa * bb && aa != bb) {
            throw Error("root system is not reduced: " + vec_str(rs.roots_[a]) + " and " + vec_str(rs.roots_[b]));
          }
        }
      }
    }
  }
  rs.choose_base(chamber_point);
  const AxiomReport report = rs.verify_axioms();
  if (!report.passed()) throw Error("root system validation failed: " + report.witness);
  return rs;
}

void RootSystem::choose_base(const std::optional<Vector>& chamber_point) {
  Vector g;
  if (chamber_point) {
    g = *chamber_point;
    for (std::size_t a = 0; a < size(); ++a)
      if (evaluate(a, g) == 0) throw Error("chamber point " + vec_str(g) + " lies on a wall");
  } else {
    for (int c = 2;; ++c) {
      g.assign(ambient_dim(), Rational(0));
      Rational power(1);
      for (std::size_t i = 0; i < ambient_dim(); ++i) {
        g[i] = power;
        power *= c;
      }
      bool regular = true;
      for (std::size_t a = 0; a < size() && regular; ++a) regular = evaluate(a, g) != 0;
      if (regular) break;
    }
  }
  positive_.clear();
  simple_.clear();
  for (std::size_t a = 0; a < size(); ++a)
    if (evaluate(a, g) > 0) positive_.push_back(a);
  std::set<Vector> sums;
  for (auto a : positive_)
    for (auto b : positive_) sums.insert(add(roots_[a], roots_[b]));
  for (auto a : positive_)
    if (!sums.count(roots_[a])) simple_.push_back(a);
}

RootSystem RootSystem::rebased(const Vector& point) const {
  RootSystem rs = *this;
  rs.choose_base(point);
  return rs;
}

std::optional<std::size_t> RootSystem::index_of(const Vector& v) const {
  auto it = lookup_.find(v);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Rational RootSystem::inner(const Vector& x, const Vector& y) const {
  if (x.size() != ambient_dim() || y.size() != ambient_dim()) throw DimensionError("inner product dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * gram_(i, j) * y[j];
  }
  return s;
}

Vector RootSystem::coroot(std::size_t alpha) const {
  const Vector& a = roots_.at(alpha);
  const Rational norm2 = inner(a, a);
  Vector c(ambient_dim(), Rational(0));
  for (std::size_t j = 0; j < ambient_dim(); ++j) {
    for (std::size_t i = 0; i < ambient_dim(); ++i) c[j] += a[i] * gram_(i, j);
    c[j] = 2 * c[j] / norm2;
  }
  return c;
}

Rational RootSystem::coroot_pairing(std::size_t alpha, const Vector& x) const {
  const Vector& a = roots_.at(alpha);
  return 2 * inner(a, x) / inner(a, a);
}

RationalMatrix RootSystem::reflection(std::size_t alpha) const {
  const Vector& a = roots_.at(alpha);
  const Vector c = coroot(alpha);
  RationalMatrix r = RationalMatrix::identity(ambient_dim());
  for (std::size_t i = 0; i < ambient_dim(); ++i)
    for (std::size_t j = 0; j < ambient_dim(); ++j) r(i, j) -= a[i] * c[j];
  return r;
}

RationalMatrix RootSystem::basis_matrix() const {
  std::vector<Vector> cols;
  for (auto s : simple_) cols.push_back(roots_[s]);
  return RationalMatrix::from_columns(cols);
}

Vector RootSystem::to_delta(const Vector& v) const {
  auto sol = solve(basis_matrix(), v);
  if (!sol) throw Error("vector " + vec_str(v) + " is not in the span of the roots");
  return *sol;
}

Vector RootSystem::from_delta(const Vector& c) const { return basis_matrix() * c; }

RationalMatrix RootSystem::delta_matrix(const RationalMatrix& ambient) const {
  std::vector<Vector> cols;
  for (auto s : simple_) cols.push_back(to_delta(ambient * roots_[s]));
  return RationalMatrix::from_columns(cols);
}

RationalMatrix RootSystem::delta_gram() const {
  const RationalMatrix b = basis_matrix();
  return b.transpose() * gram_ * b;
}

AxiomReport RootSystem::verify_axioms() const {
  AxiomReport r;
  if (roots_.empty()) {
    r.finite_nonzero = false;
    r.witness = "empty root system";
    return r;
  }
  for (const auto& a : roots_) {
    if (is_zero_vector(a)) {
      r.finite_nonzero = false;
      r.witness = "zero root";
      return r;
    }
  }
  r.gram_positive_definite = positive_definite(gram_);
  if (!r.gram_positive_definite) {
    r.witness = "Gram matrix not positive definite";
    return r;
  }
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = 0; b < size(); ++b) {
      const Rational c = coroot_pairing(a, roots_[b]);
      if (!is_integer(c)) {
        r.integral_pairings = false;
        r.witness = "non-integral pairing " + to_string(c);
        return r;
      }
      Vector image = roots_[b];
      for (std::size_t i = 0; i < image.size(); ++i) image[i] -= c * roots_[a][i];
      if (!index_of(image)) {
        r.reflection_closed = false;
        r.witness = "reflection leaves the root set at " + vec_str(roots_[b]);
        return r;
      }
      if (a != b) {
        const Rational ab = inner(roots_[a], roots_[b]);
        const Rational aa = inner(roots_[a], roots_[a]);
        const Rational bb = inner(roots_[b], roots_[b]);
        if (ab * ab == aa * bb && aa != bb) {
          r.reduced = false;
          r.witness = "proportional roots " + vec_str(roots_[a]) + ", " + vec_str(roots_[b]);
          return r;
        }
      }
    }
  }
  // Base: linearly independent, every root an integer combination of one sign.
  if (affbuild::rank(basis_matrix()) != simple_.size()) {
    r.base_valid = false;
    r.witness = "simple roots are dependent";
    return r;
  }
  for (const auto& a : roots_) {
    auto c = solve(basis_matrix(), a);
    if (!c) {
      r.base_valid = false;
      r.witness = "root outside the span of the base: " + vec_str(a);
      return r;
    }
    bool nonneg = true;
    bool nonpos = true;
    for (const auto& x : *c) {
      if (!is_integer(x)) nonneg = nonpos = false;
      if (x < 0) nonneg = false;
      if (x > 0) nonpos = false;
    }
    if (!nonneg && !nonpos) {
      r.base_valid = false;
      r.witness = "root " + vec_str(a) + " has mixed coordinates in the base";
      return r;
    }
  }
  return r;
}

WeylGroup::WeylGroup(const RootSystem& system, std::vector<WeylElement> elements) : elements_(std::move(elements)) {
  const RationalMatrix id = RationalMatrix::identity(system.ambient_dim());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    by_matrix_.emplace(elements_[i].matrix.data(), i);
    delta_.push_back(system.delta_matrix(elements_[i].matrix));
    by_delta_.emplace(delta_.back().data(), i);
    if (elements_[i].matrix == id) identity_ = i;
  }
}

std::optional<std::size_t> WeylGroup::index_of(const RationalMatrix& m) const {
  auto it = by_matrix_.find(m.data());
  if (it == by_matrix_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> WeylGroup::index_of_delta(const RationalMatrix& m) const {
  auto it = by_delta_.find(m.data());
  if (it == by_delta_.end()) return std::nullopt;
  return it->second;
}

std::size_t WeylGroup::multiply(std::size_t a, std::size_t b) const {
  auto idx = index_of(elements_.at(a).matrix * elements_.at(b).matrix);
  if (!idx) throw Error("Weyl group not closed under multiplication");
  return *idx;
}

std::size_t WeylGroup::inverse(std::size_t a) const {
  auto idx = index_of(affbuild::inverse(elements_.at(a).matrix));
  if (!idx) throw Error("Weyl group not closed under inversion");
  return *idx;
}

WeylGroup enumerate_weyl_group(const RootSystem& system, std::size_t cap) {
  std::vector<RationalMatrix> gens;
  for (auto s : system.simple_indices()) gens.push_back(system.reflection(s));
  std::map<std::vector<Rational>, WeylElement> seen;
  std::deque<std::vector<Rational>> queue;
  WeylElement id{RationalMatrix::identity(system.ambient_dim()), {}};
  queue.push_back(id.matrix.data());
  seen.emplace(id.matrix.data(), id);
  while (!queue.empty()) {
    const WeylElement current = seen.at(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      WeylElement next{gens[i] * current.matrix, {}};
      if (seen.count(next.matrix.data())) continue;
      if (seen.size() >= cap) {
        throw Error("Weyl group exceeds the size guard of " + std::to_string(cap) + " elements");
      }
      next.word.push_back(i);
      next.word.insert(next.word.end(), current.word.begin(), current.word.end());
      queue.push_back(next.matrix.data());
      seen.emplace(next.matrix.data(), std::move(next));
    }
  }
  std::vector<WeylElement> elements;
  elements.reserve(seen.size());
  for (auto& [key, element] : seen) elements.push_back(std::move(element));
  return WeylGroup(system, std::move(elements));
}

std::vector<std::size_t> vanishing_roots(const RootSystem& system, const std::vector<Vector>& subspace_basis) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < system.size(); ++a) {
    bool vanishes = true;
    for (const auto& s : subspace_basis) {
      if (system.evaluate(a, s) != 0) {
        vanishes = false;
        break;
      }
    }
    if (vanishes) out.push_back(a);
  }
  return out;
}

bool is_regular(const RootSystem& system, const Vector& p) { return vanishing_roots(system, {p}).empty(); }

bool in_chamber(const RootSystem& system, const RationalMatrix& w, const Vector& x) {
  const Vector y = inverse(w) * x;
  for (auto s : system.simple_indices())
    if (system.evaluate(s, y) < 0) return false;
  return true;
}

Chamber chamber_of(const RootSystem& system, const WeylGroup& group, const Vector& p) {
  if (!is_regular(system, p)) throw Error("chamber_of: point " + vec_str(p) + " is not regular");
  Chamber c;
  for (auto a : system.positive_indices()) c.signs.push_back(system.evaluate(a, p) > 0 ? 1 : -1);
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (in_chamber(system, group[i].matrix, p)) {
      c.weyl_index = i;
      return c;
    }
  }
  throw Error("internal: regular point in no chamber");
}

nlohmann::json to_json(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Vector vector_from_json(const nlohmann::json& j) {
  Vector v;
  for (const auto& e : j) v.push_back(e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<long>()));
  return v;
}

nlohmann::json to_json(const RootSystem& system) {
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& r : system.roots()) roots.push_back(to_json(r));
  return {{"tag", tag_name(system.tag())},
          {"name", system.name()},
          {"rank", system.rank()},
          {"ambient_dim", system.ambient_dim()},
          {"roots", roots},
          {"gram", to_json(system.gram())},
          {"basis", system.simple_indices()}};
}

RootSystem root_system_from_json(const nlohmann::json& j) {
  const RootSystemTag tag = parse_tag(j.at("tag").get<std::string>());
  if (tag != RootSystemTag::Custom) {
    return RootSystem::standard(tag, j.value("rank", std::size_t{2}));
  }
  std::vector<Vector> roots;
  for (const auto& r : j.at("roots")) roots.push_back(vector_from_json(r));
  RationalMatrix gram = j.contains("gram") ? rational_matrix_from_json(j.at("gram"))
                                           : RationalMatrix::identity(roots.empty() ? 0 : roots.front().size());
  std::optional<Vector> chamber;
  if (j.contains("chamber_point")) chamber = vector_from_json(j.at("chamber_point"));
  return RootSystem::custom(std::move(roots), std::move(gram), j.value("name", std::string("CUSTOM")), chamber);
}

}  // namespace affbuild
