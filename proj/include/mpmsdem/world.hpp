#pragma once

#include <string>
#include <vector>

#include "mpmsdem/coupling.hpp"
#include "mpmsdem/grid.hpp"
#include "mpmsdem/mpm.hpp"
#include "mpmsdem/sdem.hpp"

namespace mpmsdem {

// Per-material-group velocity prescription (kinematic driving).
struct VelocityDrive {
  int begin = 0;
  int end = 0;  // point index range [begin, end)
  bool drive_x = false;
  double vx = 0.0;
};

struct World {
  Grid grid;
  std::vector<Material> materials;
  std::vector<MaterialPoint> points;
  std::vector<Spheropolygon> bodies;
  std::vector<std::string> body_names;
  Vec2 gravity = Vec2::Zero();
  CouplingParams coupling;
  std::vector<VelocityDrive> drives;
  double time = 0.0;

  ContactLedger ledger;

  explicit World(const GridConfig& cfg) : grid(cfg) {}

  // Call once after populating points/bodies/materials: sets the small-mass
  // threshold, caches the stability bound, and primes body vertices.
  void finalize();

  double dt_bound() const { return dt_bound_; }
  double total_point_mass() const;
  double kinetic_energy() const;  // points plus mobile bodies
  Vec2 total_momentum() const;

  // Last step's coupling contacts, for force channels and tests.
  const std::vector<CouplingContact>& coupling_contacts() const { return contacts_; }
  // Whether two bodies currently share at least one contact feature.
  bool bodies_in_contact(int i, int j) const;

  void step(double dt);

 private:
  friend void coupled_step(World& w, double dt);

  double dt_bound_ = 0.0;
  bool lists_valid_ = false;
  double accum_disp_ = 0.0;
  VerletList verlet_;
  std::vector<ImpCandidate> imp_candidates_;
  std::vector<CouplingContact> contacts_;
  std::vector<Vec2> point_cont_;  // dense per-point coupling force
  std::vector<Stencil> stencils_;
};

// One explicit step: (i) SDEM contact detection and forces including the
// point-body coupling forces, (ii) particle-grid transfers and stress update,
// (iii) grid force assembly and point update, (iv) rigid body update.
void coupled_step(World& w, double dt);

inline void World::step(double dt) { coupled_step(*this, dt); }

}  // namespace mpmsdem
