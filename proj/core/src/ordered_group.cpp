#include "affbuild/ordered_group.hpp"

#include <sstream>

namespace affbuild {

LexValue::LexValue(RationalVector coords) : rank_(coords.size()), coords_(std::move(coords)) {
  if (rank_ == 0) throw DimensionError("LexValue needs at least one coordinate");
}

LexValue LexValue::zero(std::size_t rank) { return LexValue(RationalVector(rank, Rational(0))); }

LexValue LexValue::infinity(std::size_t rank) {
  LexValue v;
  v.rank_ = rank;
  v.infinite_ = true;
  return v;
}

LexValue LexValue::unit(std::size_t rank, std::size_t index) {
  RationalVector c(rank, Rational(0));
  c.at(index) = 1;
  return LexValue(std::move(c));
}

bool LexValue::is_zero() const {
  if (infinite_) return false;
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool LexValue::is_integral() const {
  if (infinite_) return false;
  for (const auto& c : coords_)
    if (!is_integer(c)) return false;
  return true;
}

const RationalVector& LexValue::coords() const {
  if (infinite_) throw Error("coordinates of INFINITY requested");
  return coords_;
}

LexValue LexValue::operator-() const {
  if (infinite_) throw Error("negation of INFINITY");
  LexValue r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

LexValue& LexValue::operator+=(const LexValue& other) {
  if (rank_ != other.rank_) throw DimensionError("LexValue rank mismatch in addition");
  if (infinite_ || other.infinite_) {
    *this = infinity(rank_);
    return *this;
  }
  for (std::size_t i = 0; i < rank_; ++i) coords_[i] += other.coords_[i];
  return *this;
}

LexValue& LexValue::operator-=(const LexValue& other) {
  if (other.infinite_) throw Error("subtraction of INFINITY");
  return *this += -other;
}

LexValue LexValue::scaled(const Rational& s) const {
  if (infinite_) {
    if (s > 0) return *this;
    throw Error("INFINITY scaled by a non-positive rational");
  }
  LexValue r = *this;
  for (auto& c : r.coords_) c *= s;
  return r;
}

LexValue LexValue::abs() const {
  if (infinite_) return *this;
  return *this < zero(rank_) ? -*this : *this;
}

std::strong_ordering operator<=>(const LexValue& a, const LexValue& b) { return compare(a, b); }

bool operator==(const LexValue& a, const LexValue& b) { return compare(a, b) == 0; }

std::strong_ordering compare(const LexValue& a, const LexValue& b) {
  if (a.rank() != b.rank()) throw DimensionError("LexValue rank mismatch in comparison");
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  for (std::size_t i = 0; i < a.rank(); ++i) {
    const int c = cmp(a[i], b[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string LexValue::str() const {
  if (infinite_) return "inf";
  if (rank_ == 1) return to_string(coords_[0]);
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < rank_; ++i) os << (i ? ", " : "") << to_string(coords_[i]);
  os << ')';
  return os.str();
}

OrderedGroupMorphism OrderedGroupMorphism::identity(std::size_t k) {
  return OrderedGroupMorphism(RationalMatrix::identity(k));
}

OrderedGroupMorphism OrderedGroupMorphism::first_projection(std::size_t k) {
  RationalMatrix m(1, k);
  m(0, 0) = 1;
  return OrderedGroupMorphism(std::move(m));
}

OrderedGroupMorphism OrderedGroupMorphism::inclusion(std::size_t k, std::size_t m) {
  if (m < k) throw DimensionError("inclusion into a smaller group");
  RationalMatrix a(m, k);
  for (std::size_t i = 0; i < k; ++i) a(i, i) = 1;
  return OrderedGroupMorphism(std::move(a));
}

LexValue OrderedGroupMorphism::apply(const LexValue& x) const {
  if (x.rank() != source_rank()) throw DimensionError("morphism applied to a value of the wrong rank");
  if (x.is_infinite()) return LexValue::infinity(target_rank());
  return LexValue(matrix_ * x.coords());
}

OrderedGroupMorphism compose(const OrderedGroupMorphism& gamma2, const OrderedGroupMorphism& gamma1) {
  return OrderedGroupMorphism(gamma2.matrix() * gamma1.matrix());
}

namespace {

// Index of the first nonzero coordinate, or size() for the zero vector.
std::size_t lead_index(const RationalVector& v) {
  std::size_t i = 0;
  while (i < v.size() && v[i] == 0) ++i;
  return i;
}

LexValue combination(std::size_t k, std::size_t i, std::size_t l, const Rational& c) {
  RationalVector x(k, Rational(0));
  x[i] = 1;
  x[l] = c;
  return LexValue(std::move(x));
}

}  // namespace

OrderCheck is_order_preserving(const OrderedGroupMorphism& gamma) {
  const std::size_t k = gamma.source_rank();
  const std::size_t m = gamma.target_rank();
  std::vector<RationalVector> cols;
  for (std::size_t i = 0; i < k; ++i) cols.push_back(gamma.matrix().column(i));

  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t lead = lead_index(cols[i]);
    if (lead < m && cols[i][lead] < 0) return {false, LexValue::unit(k, i)};
    for (std::size_t l = i + 1; l < k; ++l) {
      const std::size_t p = lead_index(cols[l]);
      if (p == m) continue;
      if (lead == m) {
        // gamma(e_i) = 0: e_i + c e_l is positive and maps to c gamma(e_l).
        return {false, combination(k, i, l, cols[l][p] > 0 ? Rational(-1) : Rational(1))};
      }
      if (p < lead) return {false, combination(k, i, l, cols[l][p] > 0 ? Rational(-1) : Rational(1))};
      if (p == lead) {
        return {false, combination(k, i, l, Rational(-2 * cols[i][lead] / cols[l][p]))};
      }
    }
  }
  return {true, std::nullopt};
}

RankFlags morphism_rank_flags(const OrderedGroupMorphism& gamma) {
  const auto r = rank(gamma.matrix());
  return {r == gamma.source_rank(), r == gamma.target_rank()};
}

nlohmann::json to_json(const RationalMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    entries.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

RationalMatrix rational_matrix_from_json(const nlohmann::json& j) {
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  const auto& entries = j.at("entries");
  if (entries.size() != rows) throw ParseError("row count does not match 'rows'", entries.dump());
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (entries[i].size() != cols) throw ParseError("column count does not match 'cols'", entries[i].dump());
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& e = entries[i][c];
      m(i, c) = e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<long>());
    }
  }
  return m;
}

nlohmann::json to_json(const OrderedGroupMorphism& gamma) { return to_json(gamma.matrix()); }

OrderedGroupMorphism ordered_group_morphism_from_json(const nlohmann::json& j) {
  return OrderedGroupMorphism(rational_matrix_from_json(j));
}

nlohmann::json to_json(const LexValue& x) {
  if (x.is_infinite()) return "inf";
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : x.coords()) a.push_back(to_string(c));
  return a;
}

}  // namespace affbuild
