#include "affbuild/lattice_building.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace affbuild {

namespace {

bool is_zero(const FieldElement& x) { return x.is_zero(); }

// Column operation col_dst -= f * col_src.
void column_axpy(FieldMatrix& m, std::size_t dst, std::size_t src, const FieldElement& f) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!is_zero(m(i, src))) m(i, dst) -= f * m(i, src);
}

void row_axpy(FieldMatrix& m, std::size_t dst, std::size_t src, const FieldElement& f) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_zero(m(src, j))) m(dst, j) -= f * m(src, j);
}

void scale_column(FieldMatrix& m, std::size_t j, const FieldElement& f) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!is_zero(m(i, j))) m(i, j) *= f;
}

std::vector<LexValue> per_component(const RationalMatrix& map, const std::vector<LexValue>& x, std::size_t k) {
  std::vector<LexValue> out(map.rows(), LexValue::zero(k));
  for (std::size_t c = 0; c < k; ++c) {
    Vector comp(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) comp[i] = x[i][c];
    const Vector img = map * comp;
    for (std::size_t i = 0; i < img.size(); ++i) {
      RationalVector v = out[i].coords();
      v[c] = img[i];
      out[i] = LexValue(std::move(v));
    }
  }
  return out;
}

}  // namespace

FieldMatrix diagonal_matrix(const FieldVector& d) { return FieldMatrix::diagonal(d); }

bool is_monomial(const FieldMatrix& m) {
  if (!m.is_square()) return false;
  std::vector<bool> row_used(m.rows(), false);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (is_zero(m(i, j))) continue;
      if (row_used[i]) return false;
      row_used[i] = true;
      ++count;
    }
    if (count != 1) return false;
  }
  return true;
}

LatticeBuilding::LatticeBuilding(ValuationSpec spec, std::size_t n) : spec_(spec), n_(n) {
  if (n < 2) throw Error("the lattice building needs n >= 2");
  apartment_ = std::make_shared<const ModelApartment>(RootSystem::standard(RootSystemTag::A, n - 1), spec.value_rank());
}

LatticeClass LatticeBuilding::canonical_form(const FieldMatrix& basis) const {
  if (basis.rows() != n_ || basis.cols() != n_) throw DimensionError("lattice basis must be n x n");
  auto hermite = [&](FieldMatrix m) {
    // Bottom row up: pivot of minimal valuation among the remaining columns.
    for (std::size_t step = 0; step < n_; ++step) {
      const std::size_t r = n_ - 1 - step;
      std::optional<std::size_t> best;
      for (std::size_t j = 0; j <= r; ++j) {
        if (is_zero(m(r, j))) continue;
        if (!best || v(m(r, j)) < v(m(r, *best))) best = j;
      }
      if (!best) throw Error("singular lattice basis");
      m.swap_columns(*best, r);
      const FieldElement pivot = m(r, r);
      for (std::size_t j = 0; j < r; ++j)
        if (!is_zero(m(r, j))) column_axpy(m, j, r, m(r, j) / pivot);
      scale_column(m, r, element_with_valuation(spec_, v(pivot)) / pivot);
    }
    // Reduce above-pivot entries modulo the pivot of their row.
    for (std::size_t j = 1; j < n_; ++j) {
      for (std::size_t rr = j; rr-- > 0;) {
        if (is_zero(m(rr, j))) continue;
        const ResidueSplit s = reduce_modulo(spec_, m(rr, j), v(m(rr, rr)));
        if (!s.quotient.is_zero()) column_axpy(m, j, rr, s.quotient);
      }
    }
    return m;
  };
  FieldMatrix h = hermite(basis);
  const FieldElement first = h(0, 0);
  if (!(first == FieldElement(1))) {
    const FieldElement inv = first.inverse();
    for (std::size_t j = 0; j < n_; ++j) scale_column(h, j, inv);
    h = hermite(h);
  }
  return {h};
}

LatticeClass LatticeBuilding::base() const { return {FieldMatrix::identity(n_)}; }

std::vector<LexValue> LatticeBuilding::ambient_coords(const ApartmentPoint& x) const {
  if (x.dim() != n_ - 1) throw DimensionError("point dimension does not match A_{n-1}");
  return per_component(apartment_->system().basis_matrix(), x.coords(), spec_.value_rank());
}

ApartmentPoint LatticeBuilding::point_from_ambient(std::vector<LexValue> a) const {
  if (a.size() != n_) throw DimensionError("expected n ambient coordinates");
  const std::size_t k = spec_.value_rank();
  LexValue mean = LexValue::zero(k);
  for (const auto& x : a) mean += x;
  mean = mean.scaled(Rational(1, static_cast<long>(n_)));
  for (auto& x : a) x -= mean;
  const RationalMatrix& sys_basis = apartment_->system().basis_matrix();
  // Columns of the basis are independent, so a left inverse recovers coordinates.
  const RationalMatrix bt = sys_basis.transpose();
  const RationalMatrix left = inverse(bt * sys_basis) * bt;
  return ApartmentPoint(per_component(left, a, k));
}

bool LatticeBuilding::is_realizable(const ApartmentPoint& x) const {
  const auto a = ambient_coords(x);
  for (std::size_t i = 1; i < n_; ++i)
    if (!(a[i] - a[0]).is_integral()) return false;
  return true;
}

bool LatticeBuilding::is_special(const ApartmentPoint& x) const {
  for (const auto& c : x.coords())
    if (!c.is_integral()) return false;
  return true;
}

LatticeClass LatticeBuilding::chart_eval(const FieldMatrix& E, const ApartmentPoint& x) const {
  return chart_eval(E, x, FieldVector(n_, FieldElement(1)));
}

LatticeClass LatticeBuilding::chart_eval(const FieldMatrix& E, const ApartmentPoint& x,
                                         const FieldVector& unit_twists) const {
  if (unit_twists.size() != n_) throw DimensionError("expected n unit twists");
  if (!is_realizable(x)) throw Error("point " + x.str() + " is not realizable over the value group");
  const auto a = ambient_coords(x);
  FieldVector d(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!is_unit(spec_, unit_twists[i])) throw Error("witness twist is not a unit");
    d[i] = element_with_valuation(spec_, a[i] - a[0]) * unit_twists[i];
  }
  return canonical_form(E * diagonal_matrix(d));
}

LatticeClass LatticeBuilding::act(const FieldMatrix& g, const LatticeClass& c, bool allow_gl) const {
  const FieldElement det = determinant(g);
  if (det.is_zero()) throw Error("singular group element");
  if (!allow_gl && !(det == FieldElement(1))) throw Error("element is not in SL_n (pass allow_gl for GL_n)");
  return canonical_form(g * c.canonical);
}

StabVerdict LatticeBuilding::stab_point_membership(const FieldMatrix& g) const {
  StabVerdict out;
  out.fixes = act(g, base()) == base();
  out.integral = std::all_of(g.data().begin(), g.data().end(),
                             [&](const FieldElement& x) { return in_valuation_ring(spec_, x); });
  return out;
}

bool LatticeBuilding::stab_apartment_membership(const FieldMatrix& g, const FieldMatrix& E) const {
  const FieldMatrix m = inverse(E) * g * E;
  if (!m.is_diagonal()) return false;
  for (std::size_t i = 0; i < n_; ++i)
    if (!is_unit(spec_, m(i, i))) return false;
  return true;
}

bool LatticeBuilding::fixes_chart_points(const FieldMatrix& g, const FieldMatrix& E,
                                         const std::vector<ApartmentPoint>& points) const {
  for (const auto& x : points) {
    const LatticeClass c = chart_eval(E, x);
    if (!(act(g, c, true) == c)) return false;
  }
  return true;
}

ApartmentPoint LatticeBuilding::diag_to_point(const FieldVector& a) const {
  if (a.size() != n_) throw DimensionError("expected n diagonal entries");
  std::vector<LexValue> amb;
  for (const auto& x : a) {
    if (x.is_zero()) throw Error("diagonal entry is zero");
    amb.push_back(v(x));
  }
  return point_from_ambient(std::move(amb));
}

FieldVector LatticeBuilding::point_to_diag(const ApartmentPoint& x) const {
  if (!is_special(x)) throw Error("point " + x.str() + " is not in the SL_n-orbit of 0");
  FieldVector d;
  for (const auto& a : ambient_coords(x)) d.push_back(element_with_valuation(spec_, a));
  return d;
}

CommonApartment LatticeBuilding::common_apartment(const LatticeClass& c1, const LatticeClass& c2) const {
  FieldMatrix m = inverse(c1.canonical) * c2.canonical;
  FieldMatrix p = FieldMatrix::identity(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = k; i < n_; ++i)
      for (std::size_t j = k; j < n_; ++j) {
        if (is_zero(m(i, j))) continue;
        if (!best || v(m(i, j)) < v(m(best->first, best->second))) best = {{i, j}};
      }
    if (!best) throw Error("singular transition matrix");
    m.swap_rows(best->first, k);
    p.swap_rows(best->first, k);
    m.swap_columns(best->second, k);
    const FieldElement pivot = m(k, k);
    for (std::size_t i = k + 1; i < n_; ++i) {
      if (is_zero(m(i, k))) continue;
      const FieldElement f = m(i, k) / pivot;
      row_axpy(m, i, k, f);
      row_axpy(p, i, k, f);
    }
    for (std::size_t j = k + 1; j < n_; ++j)
      if (!is_zero(m(k, j))) column_axpy(m, j, k, m(k, j) / pivot);
  }
  CommonApartment out;
  out.basis = c1.canonical * inverse(p);
  std::vector<LexValue> amb;
  for (std::size_t i = 0; i < n_; ++i) amb.push_back(v(m(i, i)));
  out.x = apartment_->zero();
  out.y = point_from_ambient(std::move(amb));
  if (!(chart_eval(out.basis, out.x) == c1) || !(chart_eval(out.basis, out.y) == c2)) {
    throw Error("common_apartment: post-verification failed");
  }
  return out;
}

AffineWeylElement LatticeBuilding::monomial_to_affine_weyl(const FieldMatrix& g, const FieldMatrix& E) const {
  const FieldMatrix m = inverse(E) * g * E;
  if (!is_monomial(m)) throw Error("E^-1 g E is not monomial");
  RationalMatrix perm(n_, n_);
  std::vector<LexValue> t(n_);
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i < n_; ++i)
      if (!is_zero(m(i, j))) {
        perm(i, j) = 1;
        t[i] = v(m(i, j));
      }
  const auto w = apartment_->weyl().index_of(perm);
  if (!w) throw Error("permutation not found in the Weyl group");
  return {point_from_ambient(std::move(t)), *w};
}

FieldMatrix LatticeBuilding::monomial_from_affine_weyl(const AffineWeylElement& w, const FieldMatrix& E) const {
  const FieldVector d = point_to_diag(w.translation);
  const RationalMatrix& perm = apartment_->weyl()[w.spherical].matrix;
  FieldMatrix m(n_, n_);
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i < n_; ++i)
      if (perm(i, j) != 0) m(i, j) = d[i];
  // Odd permutations: a sign on one column restores det = 1 without moving the point.
  if (determinant(perm) < 0)
    for (std::size_t i = 0; i < n_; ++i) m(i, 0) = -m(i, 0);
  return E * m * inverse(E);
}

FieldMatrix LatticeSampler::elementary(bool integral) {
  const std::size_t n = b_.n();
  const int i = fs_.integer(0, static_cast<int>(n) - 1);
  int j = fs_.integer(0, static_cast<int>(n) - 2);
  if (j >= i) ++j;
  FieldMatrix m = FieldMatrix::identity(n);
  m(i, j) = integral ? this->integral() : nonzero();
  return m;
}

FieldMatrix LatticeSampler::torus(bool integral) {
  const std::size_t n = b_.n();
  const int i = fs_.integer(0, static_cast<int>(n) - 1);
  int j = fs_.integer(0, static_cast<int>(n) - 2);
  if (j >= i) ++j;
  const FieldElement a = integral ? unit() : nonzero();
  FieldMatrix m = FieldMatrix::identity(n);
  m(i, i) = a;
  m(j, j) = a.inverse();
  return m;
}

FieldMatrix LatticeSampler::sl(int factors) {
  const bool integral = fs_.integer(0, 1) == 0;
  FieldMatrix g = FieldMatrix::identity(b_.n());
  for (int f = 0; f < factors; ++f) {
    // Non-integral draws mix in integral factors so both kinds of entries appear.
    const bool this_integral = integral || fs_.integer(0, 2) == 0;
    g = g * (fs_.integer(0, 2) == 0 ? torus(this_integral) : elementary(this_integral));
  }
  return g;
}

FieldMatrix LatticeSampler::sl_integral(int factors) {
  FieldMatrix g = FieldMatrix::identity(b_.n());
  for (int f = 0; f < factors; ++f) g = g * (fs_.integer(0, 2) == 0 ? torus(true) : elementary(true));
  return g;
}

FieldVector LatticeSampler::diagonal() {
  FieldVector d(b_.n());
  FieldElement prod(1);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    d[i] = nonzero();
    prod *= d[i];
  }
  d.back() = prod.inverse();
  return d;
}

FieldMatrix LatticeSampler::monomial() {
  const std::size_t n = b_.n();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), fs_.engine());
  const FieldVector d = diagonal();
  FieldMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m(perm[j], j) = d[j];
  const FieldElement det = determinant(m);
  // det is +-1; fix the sign on one column.
  if (!(det == FieldElement(1)))
    for (std::size_t i = 0; i < n; ++i) m(i, 0) = -m(i, 0);
  return m;
}

FieldMatrix LatticeSampler::invertible() {
  FieldMatrix g = monomial();
  const int col = fs_.integer(0, static_cast<int>(b_.n()) - 1);
  const FieldElement scale = nonzero();
  for (std::size_t i = 0; i < b_.n(); ++i) g(i, col) *= scale;
  for (int f = 0; f < 2; ++f) g = g * elementary(false);
  return g;
}

FieldElement LatticeSampler::nonzero() {
  const bool two_vars = b_.field() == FieldKind::RationalXY;
  FieldElement x;
  const int terms = fs_.integer(1, 2);
  while (x.is_zero()) {
    for (int k = 0; k < terms; ++k) {
      const int a = fs_.integer(-1, 1);
      const int e = two_vars ? fs_.integer(-1, 1) : 0;
      Rational c = fs_.integer(-3, 3);
      if (c == 0) c = 1;
      x += FieldElement::monomial(a, e, c);
    }
  }
  return x;
}

FieldElement LatticeSampler::integral() {
  if (fs_.integer(0, 7) == 0) return FieldElement();
  const int a = fs_.integer(0, 1);
  LexValue lambda{Rational(a)};
  if (b_.spec().value_rank() == 2) lambda = LexValue{Rational(a), Rational(a == 0 ? fs_.integer(0, 1) : fs_.integer(-1, 1))};
  return unit() * element_with_valuation(b_.spec(), lambda);
}

FieldElement LatticeSampler::unit() {
  const FieldElement x = nonzero();
  return x / element_with_valuation(b_.spec(), valuation(b_.spec(), x));
}

ApartmentPoint LatticeSampler::special_point(int bound) {
  std::vector<LexValue> c;
  for (std::size_t i = 0; i + 1 < b_.n(); ++i) c.push_back(fs_.value(b_.spec().value_rank(), bound));
  return ApartmentPoint(std::move(c));
}

ApartmentPoint LatticeSampler::realizable_point(int bound) {
  std::vector<LexValue> a;
  for (std::size_t i = 0; i < b_.n(); ++i) a.push_back(fs_.value(b_.spec().value_rank(), bound));
  return b_.point_from_ambient(std::move(a));
}

nlohmann::json to_json(const FieldMatrix& m, FieldKind kind) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str(kind));
    rows.push_back(std::move(row));
  }
  return rows;
}

FieldMatrix field_matrix_from_json(const nlohmann::json& j, FieldKind kind) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a matrix as an array of rows", j.dump());
  std::vector<FieldVector> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError("matrix row must be an array", row.dump());
    FieldVector r;
    for (const auto& e : row) {
      if (e.is_number_integer()) r.emplace_back(Rational(e.get<long>()));
      else if (e.is_string()) r.push_back(parse_field_element(e.get<std::string>(), kind));
      else throw ParseError("matrix entry must be a string or integer", e.dump());
    }
    rows.push_back(std::move(r));
  }
  return FieldMatrix::from_rows(rows);
}

nlohmann::json to_json(const LatticeClass& c, FieldKind kind) { return {{"canonical", to_json(c.canonical, kind)}}; }

CheckReport stab_theorem_check(const LatticeBuilding& b, std::size_t samples, std::uint64_t seed) {
  CheckReport report;
  report.name = "stab-L0/" + b.spec().name() + "/n=" + std::to_string(b.n());
  LatticeSampler s(b, seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const FieldMatrix g = s.sl();
    ++report.samples;
    const StabVerdict verdict = b.stab_point_membership(g);
    if (!verdict.agree()) report.fail(to_json(g, b.field()).dump());
  }
  return report;
}

CheckReport chart_twist_check(const LatticeBuilding& b, std::size_t points, std::size_t twists, std::uint64_t seed) {
  CheckReport report("chart-twists/" + b.spec().name() + "/n=" + std::to_string(b.n()));
  LatticeSampler s(b, seed);
  for (std::size_t i = 0; i < points; ++i) {
    const FieldMatrix E = s.invertible();
    const ApartmentPoint x = s.realizable_point(2);
    const LatticeClass c = b.chart_eval(E, x);
    for (std::size_t k = 0; k < twists; ++k) {
      FieldVector units(b.n());
      for (auto& u : units) u = s.unit();
      ++report.samples;
      if (!(b.chart_eval(E, x, units) == c)) report.fail("E=" + to_json(E, b.field()).dump() + " x=" + x.str());
    }
    const ApartmentPoint y = s.realizable_point(2);
    if ((b.chart_eval(E, y) == c) != (x == y)) report.fail("chart not injective at x=" + x.str() + " y=" + y.str());
  }
  return report;
}

CheckReport diagonal_roundtrip_check(const LatticeBuilding& b, std::size_t samples, std::uint64_t seed) {
  CheckReport report("diagonal-roundtrip/" + b.spec().name() + "/n=" + std::to_string(b.n()));
  LatticeSampler s(b, seed);
  const RootSystem& system = b.apartment()->system();
  for (std::size_t k = 0; k < samples; ++k) {
    const FieldVector a = s.diagonal();
    const ApartmentPoint x = b.diag_to_point(a);
    ++report.samples;
    const std::string tag = "a=" + to_json(diagonal_matrix(a), b.field()).dump();
    for (std::size_t i = 0; i < b.n(); ++i)
      for (std::size_t j = i + 1; j < b.n(); ++j) {
        Vector r(b.n(), 0);
        r[i] = 1;
        r[j] = -1;
        if (b.apartment()->pairing_root(x, *system.index_of(r)) != b.v(a[i] / a[j]))
          report.fail("alpha_" + std::to_string(i) + std::to_string(j) + " mismatch: " + tag);
      }
    if (!(b.chart_eval(FieldMatrix::identity(b.n()), x) == b.act(diagonal_matrix(a), b.base(), true)))
      report.fail("f(x) != a.[L_0]: " + tag);
  }
  return report;
}

CheckReport coset_algebra_check(const LatticeBuilding& b, std::size_t samples, std::uint64_t seed) {
  CheckReport report("coset-algebra/" + b.spec().name() + "/n=" + std::to_string(b.n()));
  LatticeSampler s(b, seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const FieldMatrix E = s.invertible();
    const FieldMatrix Einv = inverse(E);
    const FieldMatrix g = E * s.monomial() * Einv;
    const FieldMatrix h = E * s.monomial() * Einv;
    ++report.samples;
    const AffineWeylElement wg = b.monomial_to_affine_weyl(g, E);
    const AffineWeylElement wh = b.monomial_to_affine_weyl(h, E);
    if (!(b.monomial_to_affine_weyl(g * h, E) == b.apartment()->multiply(wg, wh)))
      report.fail("g=" + to_json(g, b.field()).dump() + " h=" + to_json(h, b.field()).dump());
  }
  return report;
}

}  // namespace affbuild
