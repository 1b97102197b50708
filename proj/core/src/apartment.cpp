#include "affbuild/apartment.hpp"

#include <sstream>

namespace affbuild {

ApartmentPoint::ApartmentPoint(std::vector<LexValue> coords) : coords_(std::move(coords)) {
  for (const auto& c : coords_) {
    if (c.is_infinite()) throw Error("apartment coordinates must be finite");
    if (c.rank() != coords_.front().rank()) throw DimensionError("apartment coordinates of mixed rank");
  }
}

ApartmentPoint ApartmentPoint::zero(std::size_t dim, std::size_t lambda_rank) {
  return ApartmentPoint(std::vector<LexValue>(dim, LexValue::zero(lambda_rank)));
}

ApartmentPoint ApartmentPoint::basis(std::size_t dim, std::size_t i, const LexValue& lambda) {
  std::vector<LexValue> c(dim, LexValue::zero(lambda.rank()));
  c.at(i) = lambda;
  return ApartmentPoint(std::move(c));
}

bool ApartmentPoint::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

ApartmentPoint& ApartmentPoint::operator+=(const ApartmentPoint& o) {
  if (o.dim() != dim()) throw DimensionError("apartment point dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

ApartmentPoint& ApartmentPoint::operator-=(const ApartmentPoint& o) {
  if (o.dim() != dim()) throw DimensionError("apartment point dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

ApartmentPoint ApartmentPoint::operator-() const { return scaled(-1); }

ApartmentPoint ApartmentPoint::scaled(const Rational& s) const {
  ApartmentPoint r = *this;
  for (auto& c : r.coords_) c = c.scaled(s);
  return r;
}

RationalVector ApartmentPoint::flatten() const {
  RationalVector v;
  for (const auto& c : coords_) v.insert(v.end(), c.coords().begin(), c.coords().end());
  return v;
}

std::string ApartmentPoint::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dim(); ++i) os << (i ? ", " : "") << coords_[i].str();
  os << ']';
  return os.str();
}

ApartmentPoint apply_linear(const RationalMatrix& m, const ApartmentPoint& x) {
  if (m.cols() != x.dim()) throw DimensionError("linear map does not match the apartment dimension");
  const std::size_t k = x.lambda_rank();
  std::vector<LexValue> out;
  out.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    LexValue acc = LexValue::zero(k);
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) acc += x[j].scaled(m(i, j));
    out.push_back(std::move(acc));
  }
  return ApartmentPoint(std::move(out));
}

ApartmentPoint apply_gamma(const OrderedGroupMorphism& gamma, const ApartmentPoint& x) {
  std::vector<LexValue> out;
  out.reserve(x.dim());
  for (const auto& c : x.coords()) out.push_back(gamma(c));
  return ApartmentPoint(std::move(out));
}

ModelApartment::ModelApartment(RootSystem system, std::size_t lambda_rank)
    : system_(std::move(system)), weyl_(enumerate_weyl_group(system_)), lambda_rank_(lambda_rank) {
  if (lambda_rank_ == 0) throw Error("value group rank must be positive");
  delta_gram_ = system_.delta_gram();
  for (const auto& r : system_.roots()) root_coords_.push_back(system_.to_delta(r));
}

ModelApartment::ModelApartment(RootSystem system, std::size_t lambda_rank, std::vector<ApartmentPoint> generators)
    : ModelApartment(std::move(system), lambda_rank) {
  mode_ = TranslationMode::Generated;
  generators_ = std::move(generators);
  std::vector<RationalVector> cols;
  for (const auto& g : generators_) {
    if (g.dim() != dim() || g.lambda_rank() != lambda_rank_) throw DimensionError("translation generator shape");
    cols.push_back(g.flatten());
  }
  if (!cols.empty() && affbuild::rank(RationalMatrix::from_columns(cols)) != cols.size()) {
    throw Error("translation generators must be linearly independent");
  }
  for (const auto& g : generators_) {
    for (std::size_t s = 0; s < system_.rank(); ++s) {
      const auto r = weyl_.index_of(system_.reflection(system_.simple_indices()[s]));
      const ApartmentPoint image = spherical_act(*r, g);
      if (!in_translations(image)) {
        throw Error("translation group is not normalized by W_s: s_" + std::to_string(s + 1) + " maps " + g.str() +
                    " to " + image.str());
      }
    }
  }
}

LexValue ModelApartment::pairing(const ApartmentPoint& x, const Vector& beta) const {
  if (beta.size() != dim() || x.dim() != dim()) throw DimensionError("pairing dimension mismatch");
  const Vector g = delta_gram_ * beta;
  LexValue acc = LexValue::zero(x.lambda_rank());
  for (std::size_t a = 0; a < dim(); ++a)
    if (g[a] != 0) acc += x[a].scaled(g[a]);
  return acc;
}

LexValue ModelApartment::norm(const ApartmentPoint& x) const {
  LexValue acc = LexValue::zero(x.lambda_rank());
  for (std::size_t a = 0; a < system_.size(); ++a) acc += pairing_root(x, a).abs();
  return acc;
}

bool ModelApartment::in_translations(const ApartmentPoint& t) const {
  if (t.dim() != dim() || t.lambda_rank() != lambda_rank_) return false;
  if (mode_ == TranslationMode::Full) return true;
  if (generators_.empty()) return t.is_zero();
  std::vector<RationalVector> cols;
  for (const auto& g : generators_) cols.push_back(g.flatten());
  auto c = solve(RationalMatrix::from_columns(cols), t.flatten());
  if (!c) return false;
  for (const auto& x : *c)
    if (!is_integer(x)) return false;
  return true;
}

ApartmentPoint ModelApartment::spherical_act(std::size_t w, const ApartmentPoint& x) const {
  return apply_linear(weyl_.delta(w), x);
}

ApartmentPoint ModelApartment::act(const AffineWeylElement& w, const ApartmentPoint& x) const {
  return spherical_act(w.spherical, x) + w.translation;
}

AffineWeylElement ModelApartment::multiply(const AffineWeylElement& a, const AffineWeylElement& b) const {
  return {a.translation + spherical_act(a.spherical, b.translation), weyl_.multiply(a.spherical, b.spherical)};
}

AffineWeylElement ModelApartment::inverse(const AffineWeylElement& a) const {
  const std::size_t winv = weyl_.inverse(a.spherical);
  return {-spherical_act(winv, a.translation), winv};
}

AffineWeylElement ModelApartment::translation(const ApartmentPoint& t) const {
  if (!in_translations(t)) throw Error("translation " + t.str() + " is not in T");
  return {t, weyl_.identity()};
}

bool ModelApartment::contains(const HalfApartment& h, const ApartmentPoint& x) const {
  const LexValue p = pairing_root(x, h.root);
  return h.sign > 0 ? p >= h.threshold : p <= h.threshold;
}

bool ModelApartment::contains(const std::vector<HalfApartment>& closed_set, const ApartmentPoint& x) const {
  for (const auto& h : closed_set)
    if (!contains(h, x)) return false;
  return true;
}

bool ModelApartment::in_sector(const ApartmentPoint& x, std::size_t w, const ApartmentPoint& base) const {
  const ApartmentPoint y = spherical_act(weyl_.inverse(w), x - base);
  const LexValue zero = LexValue::zero(lambda_rank_);
  for (auto s : system_.simple_indices())
    if (pairing_root(y, s) < zero) return false;
  return true;
}

std::vector<HalfApartment> ModelApartment::fundamental_chamber() const {
  std::vector<HalfApartment> c;
  for (auto s : system_.simple_indices()) c.push_back({s, LexValue::zero(lambda_rank_), 1});
  return c;
}

AffineWeylElement ModelApartment::wall_reflection(std::size_t alpha, const LexValue& k) const {
  const auto w = weyl_.index_of(system_.reflection(alpha));
  const Rational norm2 = system_.inner(system_.root(alpha), system_.root(alpha));
  std::vector<LexValue> t;
  for (const auto& c : root_coords_.at(alpha)) t.push_back(k.scaled(2 * c / norm2));
  return {ApartmentPoint(std::move(t)), *w};
}

ApartmentPoint ModelApartment::random_point(std::mt19937_64& rng, int bound) const {
  std::uniform_int_distribution<int> d(-bound, bound);
  std::vector<LexValue> c;
  for (std::size_t i = 0; i < dim(); ++i) {
    RationalVector v(lambda_rank_);
    for (auto& x : v) x = d(rng);
    c.emplace_back(std::move(v));
  }
  return ApartmentPoint(std::move(c));
}

ApartmentPoint ModelApartment::random_translation(std::mt19937_64& rng, int bound) const {
  if (mode_ == TranslationMode::Full) return random_point(rng, bound);
  std::uniform_int_distribution<int> d(-bound, bound);
  ApartmentPoint t = zero();
  for (const auto& g : generators_) t += g.scaled(d(rng));
  return t;
}

AffineWeylElement ModelApartment::random_element(std::mt19937_64& rng, int bound) const {
  std::uniform_int_distribution<std::size_t> d(0, weyl_.size() - 1);
  ApartmentPoint t = random_translation(rng, bound);
  return {std::move(t), d(rng)};
}

nlohmann::json to_json(const ApartmentPoint& x) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : x.coords()) a.push_back(to_json(c));
  return a;
}

ApartmentPoint apartment_point_from_json(const nlohmann::json& j, std::size_t lambda_rank) {
  std::vector<LexValue> coords;
  for (const auto& c : j) {
    if (c.is_array()) {
      RationalVector v;
      for (const auto& e : c) v.push_back(e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<long>()));
      coords.emplace_back(std::move(v));
    } else {
      const Rational q = c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>());
      RationalVector v(lambda_rank, Rational(0));
      v.at(0) = q;
      if (lambda_rank != 1) throw ParseError("scalar coordinate for a higher-rank value group", c.dump());
      coords.emplace_back(std::move(v));
    }
  }
  return ApartmentPoint(std::move(coords));
}

nlohmann::json to_json(const ModelApartment& a, const AffineWeylElement& w) {
  return {{"translation", to_json(w.translation)},
          {"spherical", w.spherical},
          {"spherical_matrix", to_json(a.weyl().delta(w.spherical))}};
}

nlohmann::json to_json(const ModelApartment& a) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : a.generators()) gens.push_back(to_json(g));
  return {{"root_system", to_json(a.system())},
          {"lambda_rank", a.lambda_rank()},
          {"translations", a.translation_mode() == TranslationMode::Full ? "full" : "generated"},
          {"generators", gens},
          {"weyl_order", a.weyl().size()}};
}

}  // namespace affbuild
