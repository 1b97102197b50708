#pragma once

#include <string>
#include <vector>

#include "affbuild/root_system.hpp"

namespace affbuild::cli {

struct Rendering {
  std::string svg;
  std::size_t arrows = 0;
  std::size_t overlay_arrows = 0;
  std::size_t walls = 0;
};

/// Roots as arrows, walls as lines and C_0 shaded, projected orthonormally
/// onto the root span. `overlay` roots (ambient coordinates) are drawn in a
/// second color. Throws Error unless the root span is two-dimensional.
Rendering render_rank2(const RootSystem& system, const std::vector<Vector>& overlay, double extent, bool labels);

}  // namespace affbuild::cli
