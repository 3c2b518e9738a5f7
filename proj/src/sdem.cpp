#include "mpmsdem/sdem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mpmsdem/errors.hpp"

namespace mpmsdem {

void Spheropolygon::update_world_vertices() {
  world_vertices.resize(local_vertices.size());
  const double c = std::cos(angle), s = std::sin(angle);
  for (size_t k = 0; k < local_vertices.size(); ++k) {
    const Vec2& v = local_vertices[k];
    world_vertices[k] = center + Vec2(c * v.x() - s * v.y(), s * v.x() + c * v.y());
  }
}

int Spheropolygon::edge_count() const {
  const int n = static_cast<int>(local_vertices.size());
  if (n >= 3) return n;
  return 1;  // capsule: one segment; disk: one degenerate segment
}

std::pair<Vec2, Vec2> Spheropolygon::edge(int k) const {
  const int n = static_cast<int>(world_vertices.size());
  if (n == 1) return {world_vertices[0], world_vertices[0]};
  return {world_vertices[static_cast<size_t>(k)],
          world_vertices[static_cast<size_t>((k + 1) % n)]};
}

namespace {

double polygon_signed_area(const std::vector<Vec2>& v) {
  double a = 0.0;
  const size_t n = v.size();
  for (size_t k = 0; k < n; ++k) a += cross2(v[k], v[(k + 1) % n]);
  return 0.5 * a;
}

bool segments_intersect(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1) {
  auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return cross2(q - p, r - p);
  };
  const double o1 = orient(a0, a1, b0), o2 = orient(a0, a1, b1);
  const double o3 = orient(b0, b1, a0), o4 = orient(b0, b1, a1);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

struct MassPiece {
  double area;
  Vec2 centroid;
  double inertia_centroid;  // polar second moment of area about own centroid
};

}  // namespace

Spheropolygon build_body(std::vector<Vec2> vertices, double sphero_radius, double density,
                         bool fixed, const ContactMaterial& material) {
  const size_t n = vertices.size();
  if (n == 0) throw DegenerateGeometry("body needs at least one vertex");
  if (sphero_radius < 0.0) throw DegenerateGeometry("sphero radius must be nonnegative");

  if (n >= 3) {
    if (polygon_signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
    if (std::abs(polygon_signed_area(vertices)) == 0.0 && sphero_radius == 0.0)
      throw DegenerateGeometry("polygon has zero area and zero sphero radius");
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        if (j == i + 1 || (i == 0 && j == n - 1)) continue;  // adjacent edges share a vertex
        if (segments_intersect(vertices[i], vertices[(i + 1) % n], vertices[j],
                               vertices[(j + 1) % n]))
          throw DegenerateGeometry("polygon is self-intersecting");
      }
    }
  } else if (sphero_radius == 0.0) {
    throw DegenerateGeometry("degenerate polygon needs a positive sphero radius");
  }

  std::vector<MassPiece> pieces;
  const double a = sphero_radius;

  if (n >= 3) {
    // Polygon interior via the shoelace moments.
    const double area = polygon_signed_area(vertices);
    Vec2 c = Vec2::Zero();
    double i_origin = 0.0;
    for (size_t k = 0; k < n; ++k) {
      const Vec2& p = vertices[k];
      const Vec2& q = vertices[(k + 1) % n];
      const double w = cross2(p, q);
      c += w * (p + q);
      i_origin += w * (p.dot(p) + p.dot(q) + q.dot(q));
    }
    c /= 6.0 * area;
    i_origin /= 12.0;
    pieces.push_back({area, c, i_origin - area * c.squaredNorm()});
  }

  if (a > 0.0) {
    // Directed boundary edges: CCW ring for n>=3, both directions for a
    // capsule, none for a disk.
    std::vector<std::pair<Vec2, Vec2>> edges;
    if (n >= 3) {
      for (size_t k = 0; k < n; ++k) edges.emplace_back(vertices[k], vertices[(k + 1) % n]);
    } else if (n == 2) {
      edges.emplace_back(vertices[0], vertices[1]);
      edges.emplace_back(vertices[1], vertices[0]);
    }

    for (const auto& [p, q] : edges) {
      const Vec2 d = q - p;
      const double len = d.norm();
      if (len == 0.0) continue;
      const Vec2 out = Vec2(d.y(), -d.x()) / len;  // right of the CCW direction
      const double area = len * a;
      const Vec2 c = 0.5 * (p + q) + 0.5 * a * out;
      pieces.push_back({area, c, area * (len * len + a * a) / 12.0});
    }

    // Corner sectors; their angles sum to 2*pi around a convex boundary.
    auto add_sector = [&](const Vec2& apex, double theta, const Vec2& bisector) {
      if (theta == 0.0) return;
      const double area = 0.5 * theta * a * a;
      const double rc = (4.0 * a / 3.0) * std::sin(0.5 * theta) / theta;
      const Vec2 c = apex + rc * bisector;
      const double i_apex = 0.25 * theta * a * a * a * a;
      pieces.push_back({area, c, i_apex - area * (c - apex).squaredNorm()});
    };

    if (n == 1) {
      pieces.push_back({std::numbers::pi * a * a, vertices[0],
                        0.5 * std::numbers::pi * a * a * a * a});
    } else if (n == 2) {
      const Vec2 d = (vertices[1] - vertices[0]).normalized();
      add_sector(vertices[1], std::numbers::pi, d);
      add_sector(vertices[0], std::numbers::pi, -d);
    } else {
      for (size_t k = 0; k < n; ++k) {
        const Vec2& prev = vertices[(k + n - 1) % n];
        const Vec2& cur = vertices[k];
        const Vec2& next = vertices[(k + 1) % n];
        const Vec2 d1 = (cur - prev).normalized();
        const Vec2 d2 = (next - cur).normalized();
        const double theta = std::atan2(cross2(d1, d2), d1.dot(d2));  // exterior turn
        const Vec2 n1(d1.y(), -d1.x());
        const Vec2 n2(d2.y(), -d2.x());
        Vec2 bis = n1 + n2;
        if (bis.norm() < 1e-14) bis = d1;  // 180-degree turn (collinear spike)
        add_sector(cur, theta, bis.normalized());
      }
    }
  }

  double total_area = 0.0;
  Vec2 centroid = Vec2::Zero();
  for (const MassPiece& mp : pieces) {
    total_area += mp.area;
    centroid += mp.area * mp.centroid;
  }
  if (!(total_area > 0.0)) throw DegenerateGeometry("body has nonpositive area");
  centroid /= total_area;

  double inertia_area = 0.0;
  for (const MassPiece& mp : pieces)
    inertia_area += mp.inertia_centroid + mp.area * (mp.centroid - centroid).squaredNorm();

  Spheropolygon body;
  body.sphero_radius = a;
  body.mass = density * total_area;
  body.inertia = density * inertia_area;
  body.fixed = fixed;
  body.material = material;
  body.center = centroid;
  body.local_vertices.reserve(n);
  double circ = 0.0;
  for (const Vec2& v : vertices) {
    body.local_vertices.push_back(v - centroid);
    circ = std::max(circ, (v - centroid).norm());
  }
  body.circumradius = circ + a;
  body.update_world_vertices();
  return body;
}

PointEdgeResult point_edge_distance(const Vec2& p, const Vec2& e0, const Vec2& e1) {
  const Vec2 d = e1 - e0;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return {(p - e0).norm(), e0};
  const double t = std::clamp((p - e0).dot(d) / len2, 0.0, 1.0);
  const Vec2 closest = e0 + t * d;
  return {(p - closest).norm(), closest};
}

std::optional<ContactForce> vertex_edge_contact(const Vec2& vertex, double a_vertex,
                                                const Vec2& e0, const Vec2& e1, double a_edge,
                                                const ContactMaterial& mat,
                                                const Vec2& rel_velocity, double dt,
                                                ContactEntry& entry) {
  const PointEdgeResult pe = point_edge_distance(vertex, e0, e1);
  const double overlap = a_vertex + a_edge - pe.distance;
  if (overlap <= 0.0) return std::nullopt;

  Vec2 normal;  // from the edge surface toward the vertex
  if (pe.distance > 1e-12 * (a_vertex + a_edge)) {
    normal = (vertex - pe.closest) / pe.distance;
  } else {
    const Vec2 d = e1 - e0;
    normal = d.squaredNorm() > 0.0 ? Vec2(d.y(), -d.x()).normalized() : Vec2(0.0, 1.0);
  }
  const Vec2 tangent = perp(normal);

  if (mat.kt > 0.0) {
    entry.tangential_disp += rel_velocity.dot(tangent) * dt;
    const double slip_cap = mat.mu * mat.kn * overlap / mat.kt;
    entry.tangential_disp = std::clamp(entry.tangential_disp, -slip_cap, slip_cap);
  } else {
    entry.tangential_disp = 0.0;
  }
  entry.normal_overlap = overlap;

  const double fn = mat.kn * overlap;
  const double ft = mat.kt * entry.tangential_disp;

  ContactForce out;
  out.force = fn * normal - ft * tangent;
  out.point = pe.distance > 1e-12 * (a_vertex + a_edge)
                  ? Vec2(vertex + (a_vertex - 0.5 * overlap) / pe.distance * (pe.closest - vertex))
                  : vertex;
  out.overlap = overlap;
  out.normal_mag = fn;
  out.tangential_mag = ft;
  return out;
}

namespace {

ContactMaterial pair_material(const ContactMaterial& a, const ContactMaterial& b) {
  // Softest response of the two coatings governs the pair.
  return {std::min(a.kn, b.kn), std::min(a.kt, b.kt), std::min(a.mu, b.mu)};
}

}  // namespace

PairForces pair_force_torque(Spheropolygon& body_i, int index_i, Spheropolygon& body_j,
                             int index_j, ContactLedger& ledger, double dt) {
  PairForces out;
  const ContactMaterial mat = pair_material(body_i.material, body_j.material);

  auto scan = [&](Spheropolygon& vb, int vb_index, Spheropolygon& eb, int eb_index,
                  double sign) {
    const int nv = static_cast<int>(vb.world_vertices.size());
    const int ne = eb.edge_count();
    for (int vi = 0; vi < nv; ++vi) {
      const Vec2& x = vb.world_vertices[static_cast<size_t>(vi)];
      for (int ei = 0; ei < ne; ++ei) {
        const auto [e0, e1] = eb.edge(ei);
        // Cheap reject before touching the ledger.
        const PointEdgeResult pe = point_edge_distance(x, e0, e1);
        if (pe.distance >= vb.sphero_radius + eb.sphero_radius) continue;

        ContactEntry& entry = ledger.touch(ContactLedger::dem_key(vb_index, vi, eb_index, ei));
        const Vec2 probe = pe.closest;
        const Vec2 rel_v = vb.velocity_at(probe) - eb.velocity_at(probe);
        const auto cf = vertex_edge_contact(x, vb.sphero_radius, e0, e1, eb.sphero_radius, mat,
                                            rel_v, dt, entry);
        if (!cf) continue;
        out.force_on_i += sign * cf->force;
        out.torque_i += cross2(cf->point - body_i.center, sign * cf->force);
        out.torque_j += cross2(cf->point - body_j.center, -sign * cf->force);
        ++out.contacts;
      }
    }
  };

  const bool disk_disk = body_i.world_vertices.size() == 1 && body_j.world_vertices.size() == 1;
  scan(body_i, index_i, body_j, index_j, 1.0);
  if (!disk_disk) scan(body_j, index_j, body_i, index_i, -1.0);
  return out;
}

VerletList update_verlet(std::span<const Spheropolygon> bodies, double verlet_distance) {
  VerletList list;
  const int n = static_cast<int>(bodies.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (bodies[i].fixed && bodies[j].fixed) continue;
      const double gap = (bodies[i].center - bodies[j].center).norm() -
                         bodies[i].circumradius - bodies[j].circumradius;
      if (gap < verlet_distance) list.pairs.emplace_back(i, j);
    }
  }
  return list;
}

void integrate_rigid(std::span<Spheropolygon> bodies, const Vec2& gravity, double dt) {
  for (Spheropolygon& b : bodies) {
    if (b.fixed) continue;
    b.velocity += (b.force / b.mass + gravity) * dt;
    b.omega += b.torque / b.inertia * dt;
    b.center += b.velocity * dt;
    b.angle += b.omega * dt;
  }
}

}  // namespace mpmsdem
