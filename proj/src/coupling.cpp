#include "mpmsdem/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mpmsdem/errors.hpp"

namespace mpmsdem {

namespace {

// Distance from a point to the body's nearest boundary feature (before
// subtracting the sphero layer); also reports which edge carries it.
struct FeatureDistance {
  double distance = std::numeric_limits<double>::infinity();
  Vec2 closest = Vec2::Zero();
  int feature = -1;
};

FeatureDistance nearest_feature(const Vec2& x, const Spheropolygon& body) {
  FeatureDistance best;
  const int ne = body.edge_count();
  for (int k = 0; k < ne; ++k) {
    const auto [e0, e1] = body.edge(k);
    const PointEdgeResult pe = point_edge_distance(x, e0, e1);
    if (pe.distance < best.distance) {
      best.distance = pe.distance;
      best.closest = pe.closest;
      best.feature = k;
    }
  }
  return best;
}

}  // namespace

std::vector<ImpCandidate> identify_imps(std::span<const MaterialPoint> points,
                                        std::span<const Spheropolygon> bodies,
                                        double verlet_distance, double contact_radius) {
  std::vector<ImpCandidate> out;
  const int nb = static_cast<int>(bodies.size());
  const int np = static_cast<int>(points.size());
  for (int pi = 0; pi < np; ++pi) {
    const Vec2& x = points[static_cast<size_t>(pi)].x;
    for (int bi = 0; bi < nb; ++bi) {
      const Spheropolygon& b = bodies[static_cast<size_t>(bi)];
      // Center prefilter, then the exact surface distance.
      const double reach = b.circumradius + contact_radius + verlet_distance;
      if ((x - b.center).squaredNorm() > reach * reach) continue;
      const double surface_gap =
          nearest_feature(x, b).distance - b.sphero_radius - contact_radius;
      if (surface_gap < verlet_distance) out.push_back({pi, bi});
    }
  }
  return out;
}

std::optional<ImpForce> imp_force(const MaterialPoint& point, int point_id,
                                  const Spheropolygon& body, int body_id, double contact_radius,
                                  ContactLedger& ledger, double dt) {
  const FeatureDistance fd = nearest_feature(point.x, body);
  const double overlap = body.sphero_radius + contact_radius - fd.distance;
  if (overlap <= 0.0) return std::nullopt;

  ContactEntry& entry = ledger.touch(ContactLedger::imp_key(point_id, body_id, fd.feature));
  const Vec2 rel_v = point.v - body.velocity_at(fd.closest);
  const auto [e0, e1] = body.edge(fd.feature);
  const auto cf = vertex_edge_contact(point.x, contact_radius, e0, e1, body.sphero_radius,
                                      body.material, rel_v, dt, entry);
  if (!cf) return std::nullopt;
  return ImpForce{cf->force, cf->point, cf->normal_mag, cf->tangential_mag, fd.feature};
}

void scatter_coupling_to_grid(std::span<const Vec2> point_forces,
                              std::span<const Stencil> stencils, Grid& grid) {
  for (size_t pi = 0; pi < point_forces.size(); ++pi) {
    const Vec2& f = point_forces[pi];
    if (f.x() == 0.0 && f.y() == 0.0) continue;
    const Stencil& st = stencils[pi];
    for (int k = 0; k < st.count; ++k) {
      grid.nodes[static_cast<size_t>(st.entry[k].node)].f_cont += st.entry[k].w * f;
    }
  }
}

void accumulate_on_bodies(std::span<const CouplingContact> contacts,
                          std::span<Spheropolygon> bodies) {
  for (const CouplingContact& c : contacts) {
    Spheropolygon& b = bodies[static_cast<size_t>(c.body)];
    const Vec2 reaction = -c.force;
    b.force += reaction;
    b.torque += cross2(c.position - b.center, reaction);
    b.coupling_force += reaction;
    b.coupling_torque += cross2(c.position - b.center, reaction);
  }
}

double critical_dt(const GridConfig& grid, std::span<const Material> materials,
                   std::span<const Spheropolygon> bodies, double kappa1, double kappa2) {
  double bound = std::numeric_limits<double>::infinity();
  bool defined = false;

  double c_max = 0.0;
  for (const Material& m : materials) {
    if (m.density <= 0.0) continue;
    const double c =
        std::sqrt((m.elastic.bulk_modulus + 4.0 * m.elastic.shear_modulus / 3.0) / m.density);
    c_max = std::max(c_max, c);
  }
  if (c_max > 0.0) {
    bound = std::min(bound, kappa1 * grid.spacing / c_max);
    defined = true;
  }

  double m_min = std::numeric_limits<double>::infinity();
  double kn_max = 0.0;
  for (const Spheropolygon& b : bodies) {
    kn_max = std::max(kn_max, b.material.kn);
    if (!b.fixed) m_min = std::min(m_min, b.mass);
  }
  if (std::isfinite(m_min) && kn_max > 0.0) {
    bound = std::min(bound, 2.0 * std::numbers::pi * kappa2 * std::sqrt(m_min / kn_max));
    defined = true;
  }

  if (!defined) throw NoMobileObjects("no MPM material and no mobile body to bound the time step");
  return bound;
}

}  // namespace mpmsdem
