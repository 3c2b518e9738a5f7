#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mpmsdem/types.hpp"

namespace mpmsdem {

struct ContactMaterial {
  double kn = 0.0;  // normal stiffness, force/length
  double kt = 0.0;  // tangential stiffness
  double mu = 0.0;  // friction coefficient
};

// Rigid body: polygon (CCW, body frame, centroid at origin) swept by a disk
// of radius `sphero_radius`. One vertex with a radius is a disk; two vertices
// make a capsule.
struct Spheropolygon {
  std::vector<Vec2> local_vertices;
  double sphero_radius = 0.0;
  Vec2 center = Vec2::Zero();
  double angle = 0.0;
  Vec2 velocity = Vec2::Zero();
  double omega = 0.0;
  double mass = 0.0;
  double inertia = 0.0;
  bool fixed = false;
  ContactMaterial material;

  double circumradius = 0.0;  // max |local vertex| + sphero_radius

  // Per-step scratch, refreshed by the stepper.
  std::vector<Vec2> world_vertices;
  Vec2 force = Vec2::Zero();
  double torque = 0.0;
  Vec2 coupling_force = Vec2::Zero();  // IMP contribution, kept for reporting
  double coupling_torque = 0.0;

  void update_world_vertices();
  Vec2 velocity_at(const Vec2& p) const { return velocity + cross2(omega, p - center); }
  int edge_count() const;
  // Directed boundary edge k as a pair of world-frame endpoints. For a disk
  // this is the degenerate segment at the single vertex.
  std::pair<Vec2, Vec2> edge(int k) const;
};

// Mass, inertia and centroid of the polygon-plus-sweep shape at the given
// density (strip and sector terms are exact for convex boundaries); vertices
// are re-expressed about the centroid. Throws DegenerateGeometry on
// self-intersecting input or zero area with zero radius. Clockwise input is
// reversed.
Spheropolygon build_body(std::vector<Vec2> vertices, double sphero_radius, double density,
                         bool fixed, const ContactMaterial& material);

// Distance from a point to a closed segment and the closest point on it.
// Degenerate segments (e0 == e1) reduce to point distance.
struct PointEdgeResult {
  double distance;
  Vec2 closest;
};
PointEdgeResult point_edge_distance(const Vec2& p, const Vec2& e0, const Vec2& e1);

// Persistent tangential-displacement history per contact feature pair.
// Entries not refreshed during a step are dropped by sweep().
struct ContactKey {
  std::uint64_t a = 0, b = 0;
  bool operator==(const ContactKey&) const = default;
};
struct ContactKeyHash {
  size_t operator()(const ContactKey& k) const {
    std::uint64_t h = k.a * 0x9e3779b97f4a7c15ull ^ (k.b + 0x7f4a7c15u);
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return static_cast<size_t>(h);
  }
};

struct ContactEntry {
  double tangential_disp = 0.0;
  double normal_overlap = 0.0;
  std::uint64_t stamp = 0;
};

class ContactLedger {
 public:
  static ContactKey dem_key(int body_i, int vertex, int body_j, int edge) {
    return {(1ull << 62) | (static_cast<std::uint64_t>(body_i) << 32) |
                static_cast<std::uint32_t>(vertex),
            (static_cast<std::uint64_t>(body_j) << 32) | static_cast<std::uint32_t>(edge)};
  }
  static ContactKey imp_key(int point_id, int body_id, int feature) {
    return {(2ull << 62) | static_cast<std::uint32_t>(point_id),
            (static_cast<std::uint64_t>(body_id) << 32) | static_cast<std::uint32_t>(feature)};
  }

  void begin_step() { ++stamp_; }
  ContactEntry& touch(const ContactKey& k) {
    ContactEntry& e = map_[k];
    e.stamp = stamp_;
    return e;
  }
  const ContactEntry* find(const ContactKey& k) const {
    auto it = map_.find(k);
    return it == map_.end() ? nullptr : &it->second;
  }
  void sweep() {
    for (auto it = map_.begin(); it != map_.end();) {
      it = it->second.stamp == stamp_ ? std::next(it) : map_.erase(it);
    }
  }
  size_t size() const { return map_.size(); }
  const std::unordered_map<ContactKey, ContactEntry, ContactKeyHash>& entries() const {
    return map_;
  }
  void clear() { map_.clear(); }

 private:
  std::unordered_map<ContactKey, ContactEntry, ContactKeyHash> map_;
  std::uint64_t stamp_ = 0;
};

// Sphero-layer contact between a vertex (radius a_vertex) and an edge
// (radius a_edge). `rel_velocity` is the vertex-owner surface velocity minus
// the edge-owner surface velocity; `entry` carries the tangential history and
// is advanced and Coulomb-clamped here.
struct ContactForce {
  Vec2 force;   // on the vertex owner
  Vec2 point;   // overlap midpoint
  double overlap;
  double normal_mag;
  double tangential_mag;  // signed along the (rotated-normal) tangent
};
std::optional<ContactForce> vertex_edge_contact(const Vec2& vertex, double a_vertex,
                                                const Vec2& e0, const Vec2& e1, double a_edge,
                                                const ContactMaterial& mat,
                                                const Vec2& rel_velocity, double dt,
                                                ContactEntry& entry);

// Net force on body i plus torques on both bodies from every vertex-edge
// feature pair of the two sphero-layers. Forces are accumulated into the
// bodies' per-step accumulators by the caller.
struct PairForces {
  Vec2 force_on_i = Vec2::Zero();
  double torque_i = 0.0;
  double torque_j = 0.0;
  int contacts = 0;
};
PairForces pair_force_torque(Spheropolygon& body_i, int index_i, Spheropolygon& body_j,
                             int index_j, ContactLedger& ledger, double dt);

struct VerletList {
  std::vector<std::pair<int, int>> pairs;  // sorted, i < j
};

// All body pairs whose bounding-circle gap is below the Verlet distance.
VerletList update_verlet(std::span<const Spheropolygon> bodies, double verlet_distance);

// Central-difference update v += (F/m + g) dt, x += v dt (and the angular
// analogue). Fixed bodies do not move.
void integrate_rigid(std::span<Spheropolygon> bodies, const Vec2& gravity, double dt);

}  // namespace mpmsdem
