#include "mpmsdem/mpm.hpp"

#include <sstream>

#include "mpmsdem/errors.hpp"

namespace mpmsdem {

void p2g(std::span<const MaterialPoint> points, std::span<const Material> materials, Grid& grid,
         std::vector<Stencil>& stencils) {
  stencils.resize(points.size());
  const double inv_dp = 1.0 / apic_dp_scale(grid.cfg.spacing);

  for (size_t pi = 0; pi < points.size(); ++pi) {
    const MaterialPoint& p = points[pi];
    Stencil& st = stencils[pi];
    stencil_weights(p.x, grid.cfg, st);

    const bool apic = materials[static_cast<size_t>(p.material)].scheme.kind == TransferKind::APIC;
    for (int k = 0; k < st.count; ++k) {
      const StencilEntry& e = st.entry[k];
      GridNode& node = grid.nodes[static_cast<size_t>(e.node)];
      node.mass += p.mass * e.w;
      Vec2 vel = p.v;
      if (apic) {
        const int ix = e.node % grid.cfg.node_counts.x();
        const int iy = e.node / grid.cfg.node_counts.x();
        vel += p.affine * (inv_dp * (grid.cfg.node_pos(ix, iy) - p.x));
      }
      node.momentum += p.mass * e.w * vel;
    }
  }

  for (GridNode& n : grid.nodes) {
    n.velocity = n.mass > grid.small_mass ? Vec2(n.momentum / n.mass) : Vec2::Zero();
  }
}

RateTensors compute_rates(const MaterialPoint& point, const Grid& grid, const Stencil& st) {
  (void)point;
  Mat2 grad_v = Mat2::Zero();  // G_ij = dv_i/dx_j
  for (int k = 0; k < st.count; ++k) {
    const StencilEntry& e = st.entry[k];
    const GridNode& node = grid.nodes[static_cast<size_t>(e.node)];
    if (node.mass <= grid.small_mass) continue;
    grad_v += node.velocity * e.grad.transpose();
  }
  RateTensors r;
  r.strain_rate = 0.5 * (grad_v + grad_v.transpose());
  r.spin_rate = 0.5 * (grad_v - grad_v.transpose());
  return r;
}

void update_stress(std::span<MaterialPoint> points, std::span<const Material> materials,
                   const Grid& grid, double dt, std::span<const Stencil> stencils) {
  for (size_t pi = 0; pi < points.size(); ++pi) {
    MaterialPoint& p = points[pi];
    const Material& mat = materials[static_cast<size_t>(p.material)];
    const RateTensors r = compute_rates(p, grid, stencils[pi]);
    p.stress = elastic_stress_increment(p.stress, r.strain_rate, r.spin_rate, dt, mat.elastic);
    if (mat.dp) {
      const ReturnMapResult rm = dp_return_map(p.stress, *mat.dp, mat.elastic);
      p.stress.sigma = rm.stress.sigma;
      p.stress.sigma_zz = rm.stress.sigma_zz;
    }
    p.volume *= 1.0 + (r.strain_rate(0, 0) + r.strain_rate(1, 1)) * dt;
  }
}

void nodal_forces(std::span<const MaterialPoint> points, Grid& grid, const Vec2& gravity,
                  std::span<const Stencil> stencils) {
  for (size_t pi = 0; pi < points.size(); ++pi) {
    const MaterialPoint& p = points[pi];
    const Stencil& st = stencils[pi];
    for (int k = 0; k < st.count; ++k) {
      const StencilEntry& e = st.entry[k];
      GridNode& node = grid.nodes[static_cast<size_t>(e.node)];
      node.f_int -= p.volume * (p.stress.sigma * e.grad);
      node.f_ext += p.mass * e.w * gravity;
    }
  }
}

void grid_update(Grid& grid, double dt) {
  for (GridNode& n : grid.nodes) {
    if (n.mass <= grid.small_mass) continue;
    n.momentum += (n.f_int + n.f_ext + n.f_cont) * dt;
    n.velocity = n.momentum / n.mass;
  }
}

void g2p(std::span<MaterialPoint> points, std::span<const Material> materials, const Grid& grid,
         double dt, std::span<const Stencil> stencils) {
  for (size_t pi = 0; pi < points.size(); ++pi) {
    MaterialPoint& p = points[pi];
    const Stencil& st = stencils[pi];
    const TransferScheme& scheme = materials[static_cast<size_t>(p.material)].scheme;

    Vec2 v_pic = Vec2::Zero();
    Vec2 dv_force = Vec2::Zero();  // dt * sum f_I S / m_I
    for (int k = 0; k < st.count; ++k) {
      const StencilEntry& e = st.entry[k];
      const GridNode& node = grid.nodes[static_cast<size_t>(e.node)];
      if (node.mass <= grid.small_mass) continue;
      v_pic += e.w * node.velocity;
      dv_force += (e.w * dt / node.mass) * (node.f_int + node.f_ext + node.f_cont);
    }

    if (scheme.kind == TransferKind::APIC) {
      p.v = v_pic;
      Mat2 b = Mat2::Zero();
      for (int k = 0; k < st.count; ++k) {
        const StencilEntry& e = st.entry[k];
        const GridNode& node = grid.nodes[static_cast<size_t>(e.node)];
        if (node.mass <= grid.small_mass) continue;
        const int ix = e.node % grid.cfg.node_counts.x();
        const int iy = e.node / grid.cfg.node_counts.x();
        b += e.w * node.velocity * (grid.cfg.node_pos(ix, iy) - p.x).transpose();
      }
      p.affine = b;
    } else {
      const double a = scheme.effective_alpha();
      p.v = a * v_pic + (1.0 - a) * (p.v + dv_force);
    }
    p.x += p.v * dt;

    const Vec2 rel = (p.x - grid.cfg.origin) / grid.cfg.spacing;
    if (!(rel.x() >= 1.0 && rel.x() < grid.cfg.node_counts.x() - 2 && rel.y() >= 1.0 &&
          rel.y() < grid.cfg.node_counts.y() - 2)) {
      std::ostringstream msg;
      msg << "point advected out of the grid domain to (" << p.x.x() << ", " << p.x.y() << ")";
      throw PointOutOfDomain(msg.str());
    }
  }
}

}  // namespace mpmsdem
