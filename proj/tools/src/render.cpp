#include "render.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace affbuild::cli {

namespace {

using P2 = std::array<double, 2>;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

double norm2(const P2& p) { return std::hypot(p[0], p[1]); }

P2 unit(const P2& p) {
  const double l = norm2(p);
  return {p[0] / l, p[1] / l};
}

class Projection {
 public:
  explicit Projection(const RootSystem& system) : system_(system) {
    const Vector& a = system.simple_root(0);
    const Vector& b = system.simple_root(1);
    const double aa = ip(a, a), ab = ip(a, b), bb = ip(b, b);
    // Gram-Schmidt on the simple roots in the system's inner product.
    u_ = {1 / std::sqrt(aa), 0};
    const double c = ab / aa;
    const double len = std::sqrt(bb - c * ab);
    v_ = {-c / len, 1 / len};
  }

  P2 operator()(const Vector& x) const {
    const Vector& a = system_.simple_root(0);
    const Vector& b = system_.simple_root(1);
    const double xa = ip(x, a), xb = ip(x, b);
    // Coordinates along e1 = u0 a and e2 = v0 a + v1 b.
    return {u_[0] * xa, v_[0] * xa + v_[1] * xb};
  }

 private:
  double ip(const Vector& x, const Vector& y) const { return system_.inner(x, y).get_d(); }

  const RootSystem& system_;
  P2 u_{}, v_{};
};

}  // namespace

Rendering render_rank2(const RootSystem& system, const std::vector<Vector>& overlay, double extent, bool labels) {
  if (system.rank() != 2) throw Error("rendering needs a rank-two root system, got rank " + std::to_string(system.rank()));
  if (!(extent > 0)) throw Error("extent must be positive");
  const Projection proj(system);
  double longest = 0;
  for (const auto& r : system.roots()) longest = std::max(longest, norm2(proj(r)));
  for (const auto& r : overlay) longest = std::max(longest, norm2(proj(r)));
  const double scale = 0.8 * extent / longest;
  const double size = 2 * extent + 40;
  const double cx = size / 2, cy = size / 2;
  auto sx = [&](const P2& p) { return num(cx + scale * p[0]); };
  auto sy = [&](const P2& p) { return num(cy - scale * p[1]); };
  auto at = [&](const P2& p, double r) {
    const P2 q = unit(p);
    return P2{q[0] * r / scale, q[1] * r / scale};
  };

  Rendering out;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(size) << "\" height=\"" << num(size)
     << "\" viewBox=\"0 0 " << num(size) << ' ' << num(size) << "\">\n";
  os << "<defs>\n";
  for (const char* color : {"black", "crimson"})
    os << "<marker id=\"head-" << color << "\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" "
       << "orient=\"auto\"><path d=\"M0,0 L8,4 L0,8 z\" fill=\"" << color << "\"/></marker>\n";
  os << "</defs>\n";
  os << "<title>" << system.name() << "</title>\n";

  // C_0 is the cone over the dual basis of the simple roots.
  const P2 a = proj(system.simple_root(0)), b = proj(system.simple_root(1));
  const double det = a[0] * b[1] - a[1] * b[0];
  const P2 w1 = unit({b[1] / det, -b[0] / det});
  const P2 w2 = unit({-a[1] / det, a[0] / det});
  const P2 mid = unit({w1[0] + w2[0], w1[1] + w2[1]});
  const P2 o{0, 0};
  os << "<polygon class=\"chamber\" fill=\"lightsteelblue\" fill-opacity=\"0.5\" points=\"";
  for (const P2& p : {o, at(w1, extent), at(mid, extent), at(w2, extent)}) os << sx(p) << ',' << sy(p) << ' ';
  os << "\"/>\n";

  for (std::size_t i : system.positive_indices()) {
    const P2 r = proj(system.root(i));
    const P2 d = at({-r[1], r[0]}, extent);
    os << "<line class=\"wall\" x1=\"" << sx(d) << "\" y1=\"" << sy(d) << "\" x2=\"" << sx({-d[0], -d[1]})
       << "\" y2=\"" << sy({-d[0], -d[1]}) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    ++out.walls;
  }

  auto arrow = [&](const Vector& root, const char* color, const char* cls, const std::string& label) {
    const P2 r = proj(root);
    os << "<line class=\"" << cls << "\" x1=\"" << sx(o) << "\" y1=\"" << sy(o) << "\" x2=\"" << sx(r) << "\" y2=\""
       << sy(r) << "\" stroke=\"" << color << "\" stroke-width=\"2\" marker-end=\"url(#head-" << color << ")\"/>\n";
    if (labels) {
      const P2 t{r[0] * 1.12, r[1] * 1.12};
      os << "<text x=\"" << sx(t) << "\" y=\"" << sy(t) << "\" font-size=\"11\" fill=\"" << color
         << "\" text-anchor=\"middle\">" << label << "</text>\n";
    }
  };
  for (std::size_t i = 0; i < system.size(); ++i) {
    arrow(system.root(i), "black", "root", std::to_string(i));
    ++out.arrows;
  }
  for (std::size_t i = 0; i < overlay.size(); ++i) {
    arrow(overlay[i], "crimson", "sub-root", "s" + std::to_string(i));
    ++out.overlay_arrows;
  }
  os << "</svg>\n";
  out.svg = os.str();
  return out;
}

}  // namespace affbuild::cli
