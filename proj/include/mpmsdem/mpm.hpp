#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mpmsdem/constitutive.hpp"
#include "mpmsdem/grid.hpp"
#include "mpmsdem/types.hpp"

namespace mpmsdem {

enum class TransferKind { PIC, FLIP, Hybrid, APIC };

struct TransferScheme {
  TransferKind kind = TransferKind::Hybrid;
  double alpha = 0.0;  // Hybrid blend: 1 = PIC, 0 = FLIP

  double effective_alpha() const {
    switch (kind) {
      case TransferKind::PIC: return 1.0;
      case TransferKind::FLIP: return 0.0;
      default: return alpha;
    }
  }
};

struct Material {
  ElasticParams elastic;
  std::optional<DruckerPragerParams> dp;
  double density = 0.0;
  TransferScheme scheme;
};

struct MaterialPoint {
  Vec2 x = Vec2::Zero();
  Vec2 v = Vec2::Zero();
  double mass = 0.0;
  double volume = 0.0;
  StressState stress;
  Mat2 affine = Mat2::Zero();  // APIC B_p
  int material = 0;
};

struct RateTensors {
  Mat2 strain_rate = Mat2::Zero();  // symmetric
  Mat2 spin_rate = Mat2::Zero();    // antisymmetric
};

// APIC inertia-matrix scalar: D_p = dp_scale(L) * I for the spline kernel.
inline double apic_dp_scale(double spacing) { return spacing * spacing / 3.0; }

// Particle-to-grid scatter of mass and momentum; fills nodal velocities where
// the node mass exceeds grid.small_mass. Expects a cleared grid. Stencils for
// the step are cached in `stencils` (one per point) for reuse by later phases.
void p2g(std::span<const MaterialPoint> points, std::span<const Material> materials, Grid& grid,
         std::vector<Stencil>& stencils);

RateTensors compute_rates(const MaterialPoint& point, const Grid& grid, const Stencil& st);

// USF stress update from start-of-step nodal velocities; advances strain,
// applies the return map for Drucker-Prager materials, and evolves volume by
// the in-plane trace rule V *= 1 + tr(strain_rate) dt.
void update_stress(std::span<MaterialPoint> points, std::span<const Material> materials,
                   const Grid& grid, double dt, std::span<const Stencil> stencils);

// Internal (stress divergence) and external (gravity) nodal forces.
void nodal_forces(std::span<const MaterialPoint> points, Grid& grid, const Vec2& gravity,
                  std::span<const Stencil> stencils);

// Momentum update p_I += (f_int + f_ext + f_cont) dt on nodes above the mass
// threshold; refreshes nodal velocities.
void grid_update(Grid& grid, double dt);

// Grid-to-particle velocity update per the material's transfer scheme, APIC
// affine update, then advection x += v_new dt.
void g2p(std::span<MaterialPoint> points, std::span<const Material> materials, const Grid& grid,
         double dt, std::span<const Stencil> stencils);

}  // namespace mpmsdem
