#include "mpmsdem/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mpmsdem/errors.hpp"

namespace mpmsdem {

void World::finalize() {
  double max_mass = 0.0;
  for (const MaterialPoint& p : points) max_mass = std::max(max_mass, p.mass);
  grid.small_mass = 1e-12 * max_mass;
  for (Spheropolygon& b : bodies) b.update_world_vertices();
  try {
    dt_bound_ = critical_dt(grid.cfg, materials, bodies, coupling.kappa1, coupling.kappa2);
  } catch (const NoMobileObjects&) {
    // nothing can go unstable in a world without points or mobile bodies
    dt_bound_ = std::numeric_limits<double>::infinity();
  }
  lists_valid_ = false;
}

double World::total_point_mass() const {
  double m = 0.0;
  for (const MaterialPoint& p : points) m += p.mass;
  return m;
}

double World::kinetic_energy() const {
  double ke = 0.0;
  for (const MaterialPoint& p : points) ke += 0.5 * p.mass * p.v.squaredNorm();
  for (const Spheropolygon& b : bodies) {
    if (b.fixed) continue;
    ke += 0.5 * b.mass * b.velocity.squaredNorm() + 0.5 * b.inertia * b.omega * b.omega;
  }
  return ke;
}

Vec2 World::total_momentum() const {
  Vec2 p = Vec2::Zero();
  for (const MaterialPoint& mp : points) p += mp.mass * mp.v;
  for (const Spheropolygon& b : bodies) {
    if (!b.fixed) p += b.mass * b.velocity;
  }
  return p;
}

bool World::bodies_in_contact(int i, int j) const {
  for (int vi = 0; vi < static_cast<int>(bodies[size_t(i)].world_vertices.size()); ++vi) {
    for (int ej = 0; ej < bodies[size_t(j)].edge_count(); ++ej) {
      if (ledger.find(ContactLedger::dem_key(i, vi, j, ej))) return true;
    }
  }
  for (int vj = 0; vj < static_cast<int>(bodies[size_t(j)].world_vertices.size()); ++vj) {
    for (int ei = 0; ei < bodies[size_t(i)].edge_count(); ++ei) {
      if (ledger.find(ContactLedger::dem_key(j, vj, i, ei))) return true;
    }
  }
  return false;
}

void coupled_step(World& w, double dt) {
  if (dt > w.dt_bound_ * (1.0 + 1e-9)) {
    throw StabilityViolation("time step " + std::to_string(dt) +
                             " exceeds the stability bound " + std::to_string(w.dt_bound_));
  }
  w.ledger.begin_step();

  // (i) SDEM: contact detection and force calculation.
  for (Spheropolygon& b : w.bodies) {
    b.update_world_vertices();
    b.force = Vec2::Zero();
    b.torque = 0.0;
    b.coupling_force = Vec2::Zero();
    b.coupling_torque = 0.0;
  }
  if (!w.lists_valid_ || w.accum_disp_ > 0.5 * w.coupling.verlet_distance) {
    w.verlet_ = update_verlet(w.bodies, w.coupling.verlet_distance);
    w.imp_candidates_ =
        identify_imps(w.points, w.bodies, w.coupling.verlet_distance, w.coupling.contact_radius);
    w.lists_valid_ = true;
    w.accum_disp_ = 0.0;
  }
  for (const auto& [i, j] : w.verlet_.pairs) {
    Spheropolygon& bi = w.bodies[static_cast<size_t>(i)];
    Spheropolygon& bj = w.bodies[static_cast<size_t>(j)];
    const PairForces pf = pair_force_torque(bi, i, bj, j, w.ledger, dt);
    bi.force += pf.force_on_i;
    bi.torque += pf.torque_i;
    bj.force -= pf.force_on_i;
    bj.torque += pf.torque_j;
  }

  w.contacts_.clear();
  w.point_cont_.assign(w.points.size(), Vec2::Zero());
  for (const ImpCandidate& cand : w.imp_candidates_) {
    const MaterialPoint& p = w.points[static_cast<size_t>(cand.point)];
    const Spheropolygon& b = w.bodies[static_cast<size_t>(cand.body)];
    const auto f =
        imp_force(p, cand.point, b, cand.body, w.coupling.contact_radius, w.ledger, dt);
    if (!f) continue;
    w.point_cont_[static_cast<size_t>(cand.point)] += f->force;
    w.contacts_.push_back(
        {cand.point, cand.body, f->force, f->point, f->normal_mag, f->tangential_mag});
  }
  accumulate_on_bodies(w.contacts_, w.bodies);

  // (ii) MPM: transfers and stress.
  w.grid.clear();
  p2g(w.points, w.materials, w.grid, w.stencils_);
  update_stress(w.points, w.materials, w.grid, dt, w.stencils_);

  // (iii) Grid force assembly and point update.
  nodal_forces(w.points, w.grid, w.gravity, w.stencils_);
  scatter_coupling_to_grid(w.point_cont_, w.stencils_, w.grid);
  grid_update(w.grid, dt);
  g2p(w.points, w.materials, w.grid, dt, w.stencils_);
  for (const VelocityDrive& d : w.drives) {
    if (!d.drive_x) continue;
    for (int pi = d.begin; pi < d.end; ++pi) w.points[static_cast<size_t>(pi)].v.x() = d.vx;
  }

  // (iv) Rigid body update.
  integrate_rigid(w.bodies, w.gravity, dt);

  w.ledger.sweep();

  double max_speed = 0.0;
  for (const MaterialPoint& p : w.points) max_speed = std::max(max_speed, p.v.norm());
  for (const Spheropolygon& b : w.bodies) {
    if (!b.fixed)
      max_speed = std::max(max_speed, b.velocity.norm() + std::abs(b.omega) * b.circumradius);
  }
  // Two parties can close on each other at twice the peak speed.
  w.accum_disp_ += 2.0 * max_speed * dt;
  w.time += dt;
}

}  // namespace mpmsdem
