#pragma once

// Exact Fourier-Motzkin feasibility for small systems of rational linear
// inequalities, and implicit-equality detection for polyhedral cones.

#include <cstddef>
#include <optional>
#include <vector>

#include "affbuild/matrix.hpp"

namespace affbuild {

/// a . x >= b, or a . x > b when strict.
struct LinearInequality {
  RationalVector a;
  Rational b;
  bool strict = false;
};

inline constexpr std::size_t kMaxEliminationDim = 6;

/// A point satisfying every inequality, or nullopt if the system is
/// infeasible. Throws DimensionError past kMaxEliminationDim variables.
std::optional<RationalVector> feasible_point(const std::vector<LinearInequality>& system, std::size_t dim);

struct ConeAnalysis {
  /// Rows i with row_i . x = 0 on the whole cone.
  std::vector<std::size_t> implicit_rows;
  /// Basis of the linear span of the cone.
  std::vector<RationalVector> span;
  /// A point of the relative interior.
  RationalVector relative_interior;
};

/// The cone {x : row_i . x >= 0 for all i} in Q^dim.
ConeAnalysis analyze_cone(const std::vector<RationalVector>& rows, std::size_t dim);

}  // namespace affbuild
