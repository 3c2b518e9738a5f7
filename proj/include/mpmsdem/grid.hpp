#pragma once

#include <vector>

#include "mpmsdem/types.hpp"

namespace mpmsdem {

enum class KernelKind { Gimp, BSplineA4 };

struct GridConfig {
  Vec2 origin = Vec2::Zero();
  double spacing = 1.0;  // L, uniform in both axes
  Vec2i node_counts = Vec2i(4, 4);
  KernelKind kernel = KernelKind::Gimp;
  // GIMP particle half-width lp; values <= 0 select the default L/2.
  double gimp_half_width = -1.0;

  double half_width() const { return gimp_half_width > 0.0 ? gimp_half_width : 0.5 * spacing; }
  int num_nodes() const { return node_counts.x() * node_counts.y(); }
  int node_index(int ix, int iy) const { return iy * node_counts.x() + ix; }
  Vec2 node_pos(int ix, int iy) const {
    return origin + spacing * Vec2(static_cast<double>(ix), static_cast<double>(iy));
  }
  void validate() const;  // throws ValidationError
};

struct GridNode {
  double mass = 0.0;
  Vec2 momentum = Vec2::Zero();
  Vec2 f_int = Vec2::Zero();
  Vec2 f_ext = Vec2::Zero();
  Vec2 f_cont = Vec2::Zero();
  Vec2 velocity = Vec2::Zero();
};

// One stencil entry: flat node index, weight, weight gradient.
struct StencilEntry {
  int node;
  double w;
  Vec2 grad;
};

// Both kernels fit in a 4x4 node window.
struct Stencil {
  StencilEntry entry[16];
  int count = 0;
};

struct Grid {
  GridConfig cfg;
  std::vector<GridNode> nodes;
  // Nodes at or below this mass get no velocity and no momentum update.
  double small_mass = 0.0;

  explicit Grid(const GridConfig& c) : cfg(c), nodes(static_cast<size_t>(c.num_nodes())) {}
  void clear();
  double total_mass() const;
  Vec2 total_momentum() const;
};

// Weights and gradients of all support nodes for a point, as the tensor
// product of two 1D factors. Throws PointOutOfDomain if the 4x4 window would
// leave the grid.
void stencil_weights(const Vec2& point_pos, const GridConfig& cfg, Stencil& out);

}  // namespace mpmsdem
