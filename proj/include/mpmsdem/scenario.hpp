#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpmsdem/mpm.hpp"
#include "mpmsdem/sdem.hpp"
#include "mpmsdem/world.hpp"

namespace mpmsdem {

struct MaterialSpec {
  std::string name;
  Material material;
};

struct BodySpec {
  std::string name;
  std::vector<Vec2> vertices;  // world frame; 1 = disk, 2 = capsule, >=3 polygon
  double sphero_radius = 0.0;
  double density = 0.0;
  bool fixed = false;
  ContactMaterial material;
  Vec2 velocity = Vec2::Zero();
  double omega = 0.0;
};

struct SeedSpec {
  std::string name;
  std::string material;
  enum class Shape { Rect, Disk } shape = Shape::Rect;
  Vec2 rect_min = Vec2::Zero();
  Vec2 rect_max = Vec2::Zero();
  Vec2 disk_center = Vec2::Zero();
  double disk_radius = 0.0;
  // Lattice pitch, either explicit or derived from points-per-cell.
  double spacing = 0.0;
  double points_per_cell = 0.0;
  Vec2 velocity = Vec2::Zero();
  bool drive_x = false;
  double drive_vx = 0.0;
  // Start from the self-weight stress profile instead of a stress-free state
  // (quasi-static scenarios skip the large startup transient this way).
  bool lithostatic = false;

  double lattice_spacing(double grid_spacing) const;
};

struct OutputSpec {
  int series_every = 50;    // steps between time-series records
  int snapshot_every = 0;   // steps between snapshots; 0 disables
  std::optional<double> discharge_below_y;
  std::string inclination_body;  // record this body's inclination channel
  std::string ground_body;       // contact flag partner for the inclination body
};

struct ScenarioConfig {
  std::string name;
  GridConfig grid;
  Vec2 gravity = Vec2::Zero();
  std::vector<MaterialSpec> materials;
  std::vector<BodySpec> bodies;
  std::vector<SeedSpec> seeds;
  CouplingParams coupling;
  double dt = 0.0;  // 0 selects the stability bound
  double t_end = 0.0;
  OutputSpec output;

  int material_index(const std::string& name) const;  // -1 if absent
  int body_index(const std::string& name) const;
};

// Parse + validate a config from file or text. Validation gathers every
// violated rule (geometry, parameter ranges, the contact-radius interval and
// the stability bound) into one ValidationError.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(const std::string& text, const std::string& name);

// Regular lattice seeding of one region: pitch s per axis, point mass
// density*s^2. Throws RegionOutsideDomain if the region leaves the
// full-stencil part of the grid. For lithostatic seeds, gravity must point
// along -y; the vertical stress ramps from the region top and the lateral
// components follow the elastic at-rest ratio nu/(1-nu).
std::vector<MaterialPoint> seed_points(const SeedSpec& seed, const GridConfig& grid,
                                       int material_index, const Material& material,
                                       const Vec2& gravity = Vec2::Zero());

// Instantiate the world (bodies built, points seeded, stability bound
// resolved). The returned dt is the explicit config value or the bound.
struct BuiltScenario {
  World world;
  double dt;
  ScenarioConfig config;
};
BuiltScenario build_scenario(const ScenarioConfig& config);

// Named built-in scenario set with table parameters pre-filled.
std::vector<std::string> builtin_scenarios();
ScenarioConfig builtin_scenario(const std::string& name);
bool is_builtin_scenario(const std::string& name);

}  // namespace mpmsdem
