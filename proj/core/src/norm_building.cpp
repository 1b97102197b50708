#include "affbuild/norm_building.hpp"

#include <algorithm>
#include <numeric>

namespace affbuild {

namespace {

LexValue exponent(const Rational& q) { return LexValue{q}; }

std::vector<Rational> normalized(std::vector<Rational> w) {
  const Rational first = w.front();
  for (auto& x : w) x -= first;
  return w;
}

}  // namespace

NormBuilding::NormBuilding(ValuationSpec spec, std::size_t n) : lattice_(spec, n) {
  if (spec.value_rank() != 1) throw Error("the norm building needs a rank-one valuation");
}

std::optional<Rational> NormBuilding::v(const FieldElement& x) const {
  if (x.is_zero()) return std::nullopt;
  return valuation(spec(), x)[0];
}

AdaptedNorm NormBuilding::standard() const { return {FieldMatrix::identity(n()), std::vector<Rational>(n())}; }

NormClass NormBuilding::normalize(AdaptedNorm eta) const {
  if (eta.basis.rows() != n() || eta.basis.cols() != n() || eta.weights.size() != n())
    throw DimensionError("norm must have an n x n basis and n weights");
  if (determinant(eta.basis).is_zero()) throw Error("norm basis is singular");
  eta.weights = normalized(std::move(eta.weights));
  return {std::move(eta)};
}

LexValue NormBuilding::eval_exponent(const AdaptedNorm& eta, const FieldVector& vec) const {
  if (vec.size() != n()) throw DimensionError("vector length does not match n");
  const auto a = solve(eta.basis, vec);
  if (!a) throw Error("norm basis is singular");
  std::optional<Rational> best;
  for (std::size_t i = 0; i < n(); ++i) {
    const auto vi = v((*a)[i]);
    if (!vi) continue;
    const Rational s = *vi + eta.weights[i];
    if (!best || s < *best) best = s;
  }
  return best ? exponent(*best) : LexValue::infinity(1);
}

std::vector<Rational> NormBuilding::ambient_coords(const ApartmentPoint& x) const {
  std::vector<Rational> out;
  for (const auto& c : lattice_.ambient_coords(x)) out.push_back(c[0]);
  return out;
}

ApartmentPoint NormBuilding::point_from_ambient(const std::vector<Rational>& a) const {
  std::vector<LexValue> lifted;
  for (const auto& q : a) lifted.push_back(exponent(q));
  return lattice_.point_from_ambient(std::move(lifted));
}

NormClass NormBuilding::chart_eval(const FieldMatrix& E, const std::vector<Rational>& base_weights,
                                   const ApartmentPoint& x) const {
  if (base_weights.size() != n()) throw DimensionError("expected n base weights");
  const auto a = ambient_coords(x);
  std::vector<Rational> w(n());
  for (std::size_t i = 0; i < n(); ++i) w[i] = base_weights[i] + a[i];
  return normalize({E, std::move(w)});
}

NormClass NormBuilding::chart_eval(const FieldMatrix& E, const ApartmentPoint& x) const {
  return chart_eval(E, std::vector<Rational>(n()), x);
}

AdaptedNorm NormBuilding::act(const FieldMatrix& g, const AdaptedNorm& eta) const {
  if (determinant(g).is_zero()) throw Error("singular group element");
  return {g * eta.basis, eta.weights};
}

NormClass NormBuilding::act(const FieldMatrix& g, const NormClass& c) const { return {act(g, c.norm)}; }

std::optional<Rational> NormBuilding::proportionality_shift(const AdaptedNorm& a, const AdaptedNorm& b) const {
  // Coordinates in the a-basis of the b-basis vectors. Row operations change
  // the a-basis, column operations the b-basis; pivoting on the minimal
  // weighted valuation keeps both bases adapted, and at the end each b-vector
  // is a multiple of one a-vector, so both norms are diagonal there.
  FieldMatrix m = inverse(a.basis) * b.basis;
  const std::size_t n = this->n();
  std::vector<bool> row_done(n, false), col_done(n, false);
  std::optional<Rational> shift;
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<Rational> best;
    std::size_t p = 0, q = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (row_done[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (col_done[j]) continue;
        const auto vij = v(m(i, j));
        if (!vij) continue;
        const Rational wgt = *vij + a.weights[i] - b.weights[j];
        if (!best || wgt < *best) {
          best = wgt;
          p = i;
          q = j;
        }
      }
    }
    if (!best) throw Error("norm basis is singular");
    if (shift && *shift != *best) return std::nullopt;
    shift = best;
    const FieldElement pivot = m(p, q);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == p || row_done[i] || m(i, q).is_zero()) continue;
      const FieldElement f = m(i, q) / pivot;
      for (std::size_t j = 0; j < n; ++j)
        if (!m(p, j).is_zero()) m(i, j) -= f * m(p, j);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j == q || col_done[j] || m(p, j).is_zero()) continue;
      const FieldElement f = m(p, j) / pivot;
      for (std::size_t i = 0; i < n; ++i)
        if (!m(i, q).is_zero()) m(i, j) -= f * m(i, q);
    }
    row_done[p] = col_done[q] = true;
  }
  // eval_a(f_j) = v(d_j) + w^a_{pi(j)} and eval_b(f_j) = w^b_j, so the common
  // pivot weight is the shift.
  return shift;
}

bool NormBuilding::stab_inequality_membership(const FieldMatrix& g, const ApartmentPoint& x) const {
  const auto a = ambient_coords(x);
  const Rational nn(static_cast<long>(n()));
  auto holds = [&](const FieldMatrix& h) {
    const Rational bound = *v(determinant(h)) / nn;
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < n(); ++j) {
        const auto vij = v(h(i, j));
        if (vij && *vij < bound - (a[i] - a[j])) return false;
      }
    return true;
  };
  if (determinant(g).is_zero()) throw Error("singular group element");
  return holds(g) && holds(inverse(g));
}

bool NormBuilding::stabilizes(const FieldMatrix& g, const ApartmentPoint& x) const {
  const NormClass eta = chart_eval(FieldMatrix::identity(n()), x);
  return equal(act(g, eta), eta);
}

Rational NormBuilding::column_defect(const FieldMatrix& g, const ApartmentPoint& x) const {
  const NormClass eta = chart_eval(FieldMatrix::identity(n()), x);
  Rational sum = 0;
  for (std::size_t j = 0; j < n(); ++j) sum += eval_exponent(eta.norm, g.column(j))[0] - eta.norm.weights[j];
  return sum;
}

CheckReport stab_oracle_check(const NormBuilding& b, std::size_t samples, std::uint64_t seed) {
  CheckReport report("norm-stab/" + b.spec().name() + "/n=" + std::to_string(b.n()));
  LatticeSampler s(b.lattice(), seed);
  FieldSampler& fs = s.fields();
  const std::size_t n = b.n();
  const FieldElement uniformizer = element_with_valuation(b.spec(), LexValue{Rational(1)});
  for (std::size_t k = 0; k < samples; ++k) {
    std::vector<Rational> a(n);
    for (auto& q : a) q = make_rational(fs.integer(-6, 6), fs.integer(1, 3));
    const ApartmentPoint x = b.point_from_ambient(a);
    const auto amb = b.ambient_coords(x);

    FieldMatrix g = FieldMatrix::identity(n);
    const int kind = fs.integer(0, 3);
    if (kind == 3) {
      g = fs.integer(0, 1) == 0 ? s.invertible() : s.sl();
    } else {
      // Entries (i, j) of valuation at least -(x_i - x_j) generate the stabilizer.
      for (int f = 0; f < 3; ++f) {
        const int i = fs.integer(0, static_cast<int>(n) - 1);
        int j = fs.integer(0, static_cast<int>(n) - 2);
        if (j >= i) ++j;
        Rational lo = -(amb[i] - amb[j]);
        mpz_class c;
        mpz_cdiv_q(c.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
        // A near miss lowers one entry below the bound.
        const long val = c.get_si() + fs.integer(0, 1) - (kind == 2 && f == 0 ? 2 : 0);
        FieldMatrix e = FieldMatrix::identity(n);
        e(i, j) = s.unit() * element_with_valuation(b.spec(), LexValue{Rational(val)});
        g = g * e;
      }
      g(0, 0) *= s.unit();
      if (kind == 1) g = uniformizer.pow(fs.integer(-2, 2)) * g;
    }
    ++report.samples;
    const bool predicate = b.stab_inequality_membership(g, x);
    const bool oracle = b.stabilizes(g, x);
    const Rational det_v = *b.v(determinant(g));
    const Rational defect = b.column_defect(g, x);
    std::string tag = "x=" + x.str() + " g=" + to_json(g, b.field()).dump();
    if (predicate != oracle) {
      report.fail("predicate " + std::string(predicate ? "true" : "false") + " vs oracle: " + tag);
    } else if (oracle && defect != det_v) {
      report.fail("determinant identity: " + tag);
    } else if (defect > det_v) {
      report.fail("Hadamard bound: " + tag);
    }
  }
  return report;
}

nlohmann::json to_json(const AdaptedNorm& eta, FieldKind kind) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& q : eta.weights) w.push_back(to_string(q));
  return {{"basis", to_json(eta.basis, kind)}, {"weights", w}};
}

AdaptedNorm adapted_norm_from_json(const nlohmann::json& j, FieldKind kind) {
  if (!j.is_object() || !j.contains("basis") || !j.contains("weights"))
    throw ParseError("norm must be an object with basis and weights", j.dump());
  AdaptedNorm eta;
  eta.basis = field_matrix_from_json(j.at("basis"), kind);
  const auto& w = j.at("weights");
  if (!w.is_array()) throw ParseError("weights must be an array", w.dump());
  for (const auto& q : w) {
    if (q.is_number_integer()) eta.weights.emplace_back(q.get<long>());
    else if (q.is_string()) eta.weights.push_back(parse_rational(q.get<std::string>()));
    else throw ParseError("weight must be a string or integer", q.dump());
  }
  if (eta.weights.size() != eta.basis.cols()) throw ParseError("one weight per basis vector expected", w.dump());
  return eta;
}

}  // namespace affbuild
