#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mpmsdem/grid.hpp"
#include "mpmsdem/mpm.hpp"
#include "mpmsdem/sdem.hpp"
#include "mpmsdem/types.hpp"

namespace mpmsdem {

struct CouplingParams {
  double verlet_distance = 0.0;  // V_d
  double contact_radius = 0.0;   // r_p assigned to identified material points
  double kappa1 = 0.8;
  double kappa2 = 0.1;
};

// Candidate (point, body) pair within Verlet range.
struct ImpCandidate {
  int point;
  int body;
};

// Points whose inflated surface (disk of radius r_p) is within the Verlet
// distance of a body's sphero surface. Bodies must have current world
// vertices.
std::vector<ImpCandidate> identify_imps(std::span<const MaterialPoint> points,
                                        std::span<const Spheropolygon> bodies,
                                        double verlet_distance, double contact_radius);

// Contact force on one identified material point from one body, against the
// nearest boundary feature; the ledger keeps the tangential history keyed by
// (point, body, feature).
struct ImpForce {
  Vec2 force;  // on the point
  Vec2 point;  // contact position
  double normal_mag;
  double tangential_mag;
  int feature;
};
std::optional<ImpForce> imp_force(const MaterialPoint& point, int point_id,
                                  const Spheropolygon& body, int body_id, double contact_radius,
                                  ContactLedger& ledger, double dt);

// f_I^cont += sum_p f_p^cont S_Ip for the nonzero per-point coupling forces.
void scatter_coupling_to_grid(std::span<const Vec2> point_forces,
                              std::span<const Stencil> stencils, Grid& grid);

// Reaction of each IMP force onto its body: -f at the contact point, torque
// about the body's center of mass. Fixed bodies accumulate for reporting but
// never move.
struct CouplingContact {
  int point;
  int body;
  Vec2 force;  // on the point
  Vec2 position;
  double normal_mag;
  double tangential_mag;
};
void accumulate_on_bodies(std::span<const CouplingContact> contacts,
                          std::span<Spheropolygon> bodies);

// Explicit stability bound: min of the acoustic grid limit over MPM
// materials and the contact-stiffness limit over mobile bodies. Throws
// NoMobileObjects when neither branch applies.
double critical_dt(const GridConfig& grid, std::span<const Material> materials,
                   std::span<const Spheropolygon> bodies, double kappa1 = 0.8,
                   double kappa2 = 0.1);

}  // namespace mpmsdem
