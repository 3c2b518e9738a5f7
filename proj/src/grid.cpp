#include "mpmsdem/grid.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include "mpmsdem/errors.hpp"
#include "mpmsdem/kernels.hpp"

namespace mpmsdem {

void GridConfig::validate() const {
  std::ostringstream bad;
  if (!(spacing > 0.0)) bad << "grid: spacing must be positive\n";
  if (node_counts.x() < 4 || node_counts.y() < 4)
    bad << "grid: node_counts must be at least 4 in each axis\n";
  if (kernel == KernelKind::Gimp && gimp_half_width > 0.0 && gimp_half_width > spacing)
    bad << "grid: GIMP half-width must satisfy 0 < lp <= L\n";
  const std::string msg = bad.str();
  if (!msg.empty()) throw ValidationError(msg);
}

void Grid::clear() {
  std::memset(nodes.data(), 0, nodes.size() * sizeof(GridNode));
}

double Grid::total_mass() const {
  double m = 0.0;
  for (const GridNode& n : nodes) m += n.mass;
  return m;
}

Vec2 Grid::total_momentum() const {
  Vec2 p = Vec2::Zero();
  for (const GridNode& n : nodes) p += n.momentum;
  return p;
}

void stencil_weights(const Vec2& point_pos, const GridConfig& cfg, Stencil& out) {
  const double L = cfg.spacing;
  const Vec2 rel = (point_pos - cfg.origin) / L;
  const int ix0 = static_cast<int>(std::floor(rel.x()));
  const int iy0 = static_cast<int>(std::floor(rel.y()));
  // 4-node window per axis covers supports up to 2L.
  if (ix0 - 1 < 0 || iy0 - 1 < 0 || ix0 + 2 >= cfg.node_counts.x() ||
      iy0 + 2 >= cfg.node_counts.y()) {
    std::ostringstream msg;
    msg << "point (" << point_pos.x() << ", " << point_pos.y()
        << ") lacks full-stencil room on the grid";
    throw PointOutOfDomain(msg.str());
  }

  double wx[4], wy[4], gx[4], gy[4];
  if (cfg.kernel == KernelKind::Gimp) {
    const double lp = cfg.half_width();
    for (int k = 0; k < 4; ++k) {
      const double dxk = point_pos.x() - (cfg.origin.x() + L * (ix0 - 1 + k));
      const double dyk = point_pos.y() - (cfg.origin.y() + L * (iy0 - 1 + k));
      wx[k] = gimp_weight(dxk, L, lp);
      gx[k] = gimp_weight_gradient(dxk, L, lp);
      wy[k] = gimp_weight(dyk, L, lp);
      gy[k] = gimp_weight_gradient(dyk, L, lp);
    }
  } else {
    for (int k = 0; k < 4; ++k) {
      const double dxk = point_pos.x() - (cfg.origin.x() + L * (ix0 - 1 + k));
      const double dyk = point_pos.y() - (cfg.origin.y() + L * (iy0 - 1 + k));
      wx[k] = bspline_weight(dxk, L);
      gx[k] = bspline_weight_gradient(dxk, L);
      wy[k] = bspline_weight(dyk, L);
      gy[k] = bspline_weight_gradient(dyk, L);
    }
  }

  out.count = 0;
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) {
      StencilEntry& e = out.entry[out.count++];
      e.node = cfg.node_index(ix0 - 1 + i, iy0 - 1 + j);
      e.w = wx[i] * wy[j];
      e.grad = Vec2(gx[i] * wy[j], wx[i] * gy[j]);
    }
  }
}

}  // namespace mpmsdem
