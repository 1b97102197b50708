#include "affbuild/polyhedral.hpp"

#include <set>
#include <tuple>

namespace affbuild {

namespace {

using Row = LinearInequality;

/// Scales a row so the first nonzero coefficient has absolute value 1.
Row normalized(Row r) {
  for (const auto& c : r.a) {
    if (c != 0) {
      const Rational s = abs_value(c);
      for (auto& x : r.a) x /= s;
      r.b /= s;
      break;
    }
  }
  return r;
}

struct RowLess {
  bool operator()(const Row& x, const Row& y) const {
    return std::tie(x.a, x.b, x.strict) < std::tie(y.a, y.b, y.strict);
  }
};

/// Drops constant rows (returning false if one is violated) and duplicates.
bool simplify(std::vector<Row>& rows) {
  std::set<Row, RowLess> seen;
  std::vector<Row> out;
  for (auto& r : rows) {
    bool constant = true;
    for (const auto& c : r.a)
      if (c != 0) constant = false;
    if (constant) {
      if (r.strict ? !(0 > r.b) : !(0 >= r.b)) return false;
      continue;
    }
    Row n = normalized(std::move(r));
    if (seen.insert(n).second) out.push_back(std::move(n));
  }
  rows = std::move(out);
  return true;
}

/// Eliminates variable k (all rows have dimension >= k + 1; the result drops it).
std::vector<Row> eliminate(const std::vector<Row>& rows, std::size_t k) {
  std::vector<Row> pos, neg, out;
  for (const auto& r : rows) {
    if (r.a[k] > 0) {
      pos.push_back(r);
    } else if (r.a[k] < 0) {
      neg.push_back(r);
    } else {
      Row t = r;
      t.a.resize(k);
      out.push_back(std::move(t));
    }
  }
  for (const auto& p : pos) {
    for (const auto& n : neg) {
      const Rational cp = -n.a[k];
      const Rational cn = p.a[k];
      Row t;
      t.a.resize(k);
      for (std::size_t i = 0; i < k; ++i) t.a[i] = cp * p.a[i] + cn * n.a[i];
      t.b = cp * p.b + cn * n.b;
      t.strict = p.strict || n.strict;
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

std::optional<RationalVector> feasible_point(const std::vector<LinearInequality>& system, std::size_t dim) {
  if (dim > kMaxEliminationDim) {
    throw DimensionError("Fourier-Motzkin dimension guard exceeded: " + std::to_string(dim) + " variables");
  }
  for (const auto& r : system)
    if (r.a.size() != dim) throw DimensionError("inequality dimension mismatch");
  // levels[k] involves variables 0..k-1.
  std::vector<std::vector<Row>> levels(dim + 1);
  levels[dim] = system;
  if (!simplify(levels[dim])) return std::nullopt;
  for (std::size_t k = dim; k-- > 0;) {
    levels[k] = eliminate(levels[k + 1], k);
    if (!simplify(levels[k])) return std::nullopt;
  }
  RationalVector x(dim, Rational(0));
  for (std::size_t k = 0; k < dim; ++k) {
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& r : levels[k + 1]) {
      if (r.a[k] == 0) continue;
      Rational rest = r.b;
      for (std::size_t i = 0; i < k; ++i) rest -= r.a[i] * x[i];
      const Rational bound = rest / r.a[k];
      if (r.a[k] > 0) {
        if (!lo || bound > *lo || (bound == *lo && r.strict)) {
          lo = bound;
          lo_strict = r.strict;
        }
      } else {
        if (!hi || bound < *hi || (bound == *hi && r.strict)) {
          hi = bound;
          hi_strict = r.strict;
        }
      }
    }
    if (lo && hi) {
      if (*lo > *hi || (*lo == *hi && (lo_strict || hi_strict))) {
        throw Error("internal: Fourier-Motzkin back-substitution failed");
      }
      x[k] = (*lo + *hi) / 2;
    } else if (lo) {
      x[k] = *lo + 1;
    } else if (hi) {
      x[k] = *hi - 1;
    }
  }
  return x;
}

ConeAnalysis analyze_cone(const std::vector<RationalVector>& rows, std::size_t dim) {
  std::vector<LinearInequality> base;
  for (const auto& r : rows) base.push_back({r, 0, false});
  ConeAnalysis out;
  out.relative_interior.assign(dim, Rational(0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<LinearInequality> sys = base;
    sys[i].b = 1;
    auto p = feasible_point(sys, dim);
    if (!p) {
      out.implicit_rows.push_back(i);
    } else {
      for (std::size_t j = 0; j < dim; ++j) out.relative_interior[j] += (*p)[j];
    }
  }
  if (out.implicit_rows.empty()) {
    for (std::size_t j = 0; j < dim; ++j) {
      RationalVector e(dim, Rational(0));
      e[j] = 1;
      out.span.push_back(std::move(e));
    }
  } else {
    std::vector<RationalVector> eq;
    for (auto i : out.implicit_rows) eq.push_back(rows[i]);
    out.span = nullspace(RationalMatrix::from_rows(eq));
  }
  return out;
}

}  // namespace affbuild
