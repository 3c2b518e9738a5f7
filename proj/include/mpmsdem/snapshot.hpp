#pragma once

#include <string>
#include <vector>

#include "mpmsdem/world.hpp"

namespace mpmsdem {

// Full dynamic state at one instant; round-trips losslessly through the text
// format (17 significant digits per value).
struct SnapshotPoint {
  Vec2 x, v;
  double mass, volume;
  double sxx, syy, szz, sxy;
  double exx, eyy, exy;
  Mat2 affine;
  int material;
};

struct SnapshotBody {
  Vec2 center;
  double angle;
  Vec2 velocity;
  double omega;
  double mass, inertia;
  bool fixed;
};

struct Snapshot {
  double time = 0.0;
  std::vector<SnapshotPoint> points;
  std::vector<SnapshotBody> bodies;
};

Snapshot snapshot_of(const World& w);
void save_snapshot(const Snapshot& s, const std::string& path);
Snapshot load_snapshot(const std::string& path);
double snapshot_kinetic_energy(const Snapshot& s);

}  // namespace mpmsdem
