#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mpmsdem/scenario.hpp"

// Built-in validation scenarios. Scenario values are in a coherent cm-g-s
// system (forces in dyn); table-style inputs were converted once, and the
// checked results are dimensionless ratios so the unit choice drops out.

namespace mpmsdem {

namespace {

BodySpec box_body(const std::string& name, const Vec2& center, const Vec2& half_extents,
                  double sphero, double density, bool fixed, const ContactMaterial& cm) {
  BodySpec b;
  b.name = name;
  b.vertices = {center + Vec2(-half_extents.x(), -half_extents.y()),
                center + Vec2(half_extents.x(), -half_extents.y()),
                center + Vec2(half_extents.x(), half_extents.y()),
                center + Vec2(-half_extents.x(), half_extents.y())};
  b.sphero_radius = sphero;
  b.density = density;
  b.fixed = fixed;
  b.material = cm;
  return b;
}

int span_nodes(double extent, double spacing) {
  return static_cast<int>(std::ceil(extent / spacing - 1e-9)) + 1;
}

constexpr double kDeg = 3.14159265358979323846 / 180.0;

// Table-1 contact set: kn 6e6, kt 3e5, mu 0.1.
const ContactMaterial kTable1Contact{6.0e4, 3.0e3, 0.1};

ScenarioConfig momentum(bool hard) {
  ScenarioConfig c;
  c.name = hard ? "momentum_hard" : "momentum_soft";
  c.grid.origin = Vec2(0, 0);
  c.grid.spacing = 0.3;
  c.grid.node_counts = Vec2i(201, 41);
  c.grid.kernel = KernelKind::Gimp;
  c.gravity = Vec2(0, 0);

  MaterialSpec m;
  m.name = "elastic_disc";
  m.material.elastic = hard ? ElasticParams{5.0e6, 3.7e6} : ElasticParams{5.0e5, 3.7e5};
  m.material.density = 2.0;
  m.material.scheme = {TransferKind::Hybrid, 0.05};
  c.materials.push_back(m);

  BodySpec disc;
  disc.name = "dem_disc";
  disc.vertices = {Vec2(14.5, 6.0)};
  disc.sphero_radius = 2.0;
  disc.density = 2.0;
  disc.fixed = false;
  disc.material = kTable1Contact;
  c.bodies.push_back(disc);

  SeedSpec s;
  s.name = "mpm_disc";
  s.material = "elastic_disc";
  s.shape = SeedSpec::Shape::Disk;
  s.disk_center = Vec2(10.0, 6.0);
  s.disk_radius = 2.0;
  s.spacing = 0.05;
  s.velocity = Vec2(200.0, 0.0);
  c.seeds.push_back(s);

  c.coupling = {0.2, 0.1, 0.8, 0.1};
  c.dt = hard ? 0.0 : 2.0e-4;  // the stiff moduli push the bound below 2e-4
  c.t_end = 0.12;
  c.output.series_every = 10;
  return c;
}

ScenarioConfig drop_bounce(bool hard) {
  ScenarioConfig c;
  c.name = hard ? "drop_bounce_hard" : "drop_bounce";
  c.grid.origin = Vec2(0, 0);
  c.grid.spacing = 0.3;
  c.grid.node_counts = Vec2i(41, 61);
  c.grid.kernel = KernelKind::Gimp;
  c.gravity = Vec2(0, -10.0);

  MaterialSpec m;
  m.name = "elastic_disc";
  m.material.elastic = hard ? ElasticParams{5.0e6, 3.7e6} : ElasticParams{5.0e5, 3.7e5};
  m.material.density = 2.0;
  m.material.scheme = {TransferKind::Hybrid, 0.05};
  c.materials.push_back(m);

  c.bodies.push_back(
      box_body("floor", Vec2(6.0, 1.5), Vec2(4.0, 0.5), 2.0, 2.0, true, kTable1Contact));

  SeedSpec s;
  s.name = "mpm_disc";
  s.material = "elastic_disc";
  s.shape = SeedSpec::Shape::Disk;
  s.disk_center = Vec2(6.0, 9.0);
  s.disk_radius = 2.0;
  s.spacing = 0.05;
  c.seeds.push_back(s);

  c.coupling = {0.2, 0.1, 0.8, 0.1};
  c.dt = hard ? 0.0 : 2.0e-4;
  c.t_end = 2.2;
  c.output.series_every = 25;
  return c;
}

// Table-2 statics: elastic square resting on a fixed boundary.
ScenarioConfig normal_force(int variant) {
  const double dg = 0.35 + 0.05 * variant;
  ScenarioConfig c;
  c.name = variant == 0 ? "normal_force" : "normal_force_" + std::to_string(variant);
  c.grid.origin = Vec2(0, 0);
  c.grid.spacing = dg;
  c.grid.node_counts = Vec2i(span_nodes(12.0, dg), span_nodes(10.0, dg));
  c.grid.kernel = KernelKind::Gimp;
  c.gravity = Vec2(0, -100.0);

  MaterialSpec m;
  m.name = "elastic_block";
  m.material.elastic = {6.0e6, 3.5e6};
  m.material.density = 2.5;
  m.material.scheme = {TransferKind::PIC, 1.0};
  c.materials.push_back(m);

  c.bodies.push_back(
      box_body("floor", Vec2(6.0, 1.0), Vec2(5.0, 0.5), 0.5, 2.0, true, kTable1Contact));

  // 51x51 lattice, pitch dg0/4 of the base grid; bottom row starts exactly
  // at contact distance (zero initial overlap), with the self-weight stress
  // profile so the block does not have to ring its way to equilibrium (there
  // is no contact dashpot to absorb a hard start).
  const double pitch = 0.0875;
  const double width = 51.0 * pitch;
  SeedSpec s;
  s.name = "block";
  s.material = "elastic_block";
  s.shape = SeedSpec::Shape::Rect;
  s.rect_min = Vec2(6.0 - 0.5 * width, 2.0 + 0.1 - 0.5 * pitch);
  s.rect_max = s.rect_min + Vec2(width, width);
  s.spacing = pitch;
  s.lithostatic = true;
  c.seeds.push_back(s);

  c.coupling = {0.2, 0.1, 0.8, 0.1};
  // explicit step at about half the acoustic bound: these moduli are
  // marginal right at the bound and the residual ringing would not decay
  static const double dt_variant[4] = {6.7e-5, 7.7e-5, 8.6e-5, 9.6e-5};
  c.dt = dt_variant[variant];
  c.t_end = 4.0;
  c.output.series_every = 50;
  return c;
}

ScenarioConfig friction() {
  ScenarioConfig c = normal_force(3);  // dg = 0.50 damps the startup vibration fastest
  c.name = "friction";
  c.grid.node_counts = Vec2i(span_nodes(426.0, 0.5), span_nodes(10.0, 0.5));
  ContactMaterial cm = kTable1Contact;
  cm.mu = 0.3;
  c.bodies.clear();
  c.bodies.push_back(box_body("floor", Vec2(211.0, 1.0), Vec2(210.0, 0.5), 0.5, 2.0, true, cm));
  c.seeds[0].velocity = Vec2(200.0, 0.0);
  c.seeds[0].drive_x = true;
  c.seeds[0].drive_vx = 200.0;
  c.t_end = 2.5;
  return c;
}

// Table-3 granular flow through a flat-bottomed silo slot.
ScenarioConfig silo(double neck, int rows, const std::string& name) {
  ScenarioConfig c;
  c.name = name;
  c.grid.origin = Vec2(0, 0);
  c.grid.spacing = 0.35;
  c.grid.node_counts = Vec2i(span_nodes(16.0, 0.35), span_nodes(26.0, 0.35));
  c.grid.kernel = KernelKind::BSplineA4;
  c.gravity = Vec2(0, -10.0);

  MaterialSpec m;
  m.name = "sand";
  m.material.elastic = {5.0e5, 3.2e5};
  m.material.density = 1.5;
  m.material.scheme = {TransferKind::APIC, 0.0};
  DruckerPragerParams dp;
  dp.friction_angle = 35.0 * kDeg;
  dp.dilation_angle = 25.0 * kDeg;
  m.material.dp = dp;
  c.materials.push_back(m);

  ContactMaterial cm{6.0e4, 3.0e3, 0.2};
  const double a = 0.5;
  c.bodies.push_back(box_body("wall_left", Vec2(2.5, 13.0), Vec2(0.5, 11.0), a, 2.0, true, cm));
  c.bodies.push_back(box_body("wall_right", Vec2(13.5, 13.0), Vec2(0.5, 11.0), a, 2.0, true, cm));
  const double lip = 0.5 * neck + a;  // slab ends stop one sphero layer short of the slot
  c.bodies.push_back(box_body("slab_left", Vec2(0.5 * (3.0 + 8.0 - lip), 12.5),
                              Vec2(0.5 * (8.0 - lip - 3.0), 0.5), a, 2.0, true, cm));
  c.bodies.push_back(box_body("slab_right", Vec2(0.5 * (8.0 + lip + 13.0), 12.5),
                              Vec2(0.5 * (13.0 - 8.0 - lip), 0.5), a, 2.0, true, cm));
  c.bodies.push_back(box_body("floor", Vec2(8.0, 1.5), Vec2(6.0, 0.5), a, 2.0, true, cm));

  const double pitch = 0.0875;
  SeedSpec s;
  s.name = "sand";
  s.material = "sand";
  s.shape = SeedSpec::Shape::Rect;
  s.rect_min = Vec2(8.0 - 44.0 * pitch, 13.5 + 0.1 - 0.5 * pitch);
  s.rect_max = s.rect_min + Vec2(88.0 * pitch, rows * pitch);
  s.spacing = pitch;
  c.seeds.push_back(s);

  c.coupling = {0.2, 0.1, 0.8, 0.1};
  c.dt = 2.0e-4;
  c.t_end = 4.0;
  c.output.series_every = 50;
  c.output.discharge_below_y = 11.5;
  return c;
}

ScenarioConfig block_impact() {
  ScenarioConfig c;
  c.name = "block_impact";
  c.grid.origin = Vec2(0, 0);
  c.grid.spacing = 0.35;
  c.grid.node_counts = Vec2i(span_nodes(42.0, 0.35), span_nodes(16.0, 0.35));
  c.grid.kernel = KernelKind::BSplineA4;
  c.gravity = Vec2(0, -1000.0);

  MaterialSpec m;
  m.name = "sand";
  m.material.elastic = {5.0e5, 3.2e5};
  m.material.density = 1.5;
  m.material.scheme = {TransferKind::APIC, 0.0};
  DruckerPragerParams dp;
  dp.friction_angle = 22.0 * kDeg;
  dp.dilation_angle = 0.0;
  m.material.dp = dp;
  c.materials.push_back(m);

  ContactMaterial cm{6.0e4, 3.0e3, 0.2};
  const double a = 0.5;
  const double rho_block = 0.6;
  c.bodies.push_back(box_body("floor", Vec2(21.0, 1.5), Vec2(20.0, 0.5), a, 2.0, true, cm));
  c.bodies.push_back(box_body("wall_left", Vec2(1.5, 7.0), Vec2(0.5, 5.0), a, 2.0, true, cm));

  // Stack: fixed base, then two free blocks with slightly narrowing widths so
  // each block rests on two interior vertex-edge springs. The free blocks are
  // pre-embedded by their static spring compression.
  auto block_mass = [&](double w, double h) {
    return rho_block * (w * h + a * (2.0 * w + 2.0 * h) + 3.14159265358979323846 * a * a);
  };
  const double kn = cm.kn;
  const double w1 = block_mass(2.6, 1.5) * 1000.0;
  const double w2 = block_mass(3.0, 1.5) * 1000.0;
  const double embed12 = w1 / (2.0 * kn);
  const double embed23 = (w1 + w2) / (2.0 * kn);
  c.bodies.push_back(
      box_body("block3", Vec2(20.0, 3.75), Vec2(1.7, 0.75), a, rho_block, true, cm));
  c.bodies.push_back(
      box_body("block2", Vec2(20.0, 6.25 - embed23), Vec2(1.5, 0.75), a, rho_block, false, cm));
  c.bodies.push_back(box_body("block1", Vec2(20.0, 8.75 - embed23 - embed12), Vec2(1.3, 0.75), a,
                              rho_block, false, cm));

  const double pitch = 0.0875;
  SeedSpec s;
  s.name = "sand";
  s.material = "sand";
  s.shape = SeedSpec::Shape::Rect;
  s.rect_min = Vec2(2.6, 2.5 + 0.1 - 0.5 * pitch);
  s.rect_max = s.rect_min + Vec2(88.0 * pitch, 91.0 * pitch);
  s.spacing = pitch;
  c.seeds.push_back(s);

  c.coupling = {0.2, 0.1, 0.8, 0.1};
  c.dt = 2.0e-4;
  c.t_end = 1.2;
  c.output.series_every = 10;
  c.output.inclination_body = "block2";
  c.output.ground_body = "floor";
  return c;
}

struct SiloVariant {
  double neck;
  int rows;
  const char* tag;
};

}  // namespace

std::vector<std::string> builtin_scenarios() {
  std::vector<std::string> names = {"momentum_soft", "momentum_hard", "drop_bounce",
                                    "drop_bounce_hard", "normal_force", "normal_force_1",
                                    "normal_force_2", "normal_force_3", "friction", "silo"};
  for (const char* d : {"20", "25", "30", "35", "40"}) {
    for (const char* n : {"8k", "9k", "10k"}) {
      names.push_back(std::string("silo_d") + d + "_n" + n);
    }
  }
  names.push_back("block_impact");
  return names;
}

bool is_builtin_scenario(const std::string& name) {
  for (const std::string& n : builtin_scenarios()) {
    if (n == name) return true;
  }
  return false;
}

ScenarioConfig builtin_scenario(const std::string& name) {
  if (name == "momentum_soft") return momentum(false);
  if (name == "momentum_hard") return momentum(true);
  if (name == "drop_bounce") return drop_bounce(false);
  if (name == "drop_bounce_hard") return drop_bounce(true);
  if (name == "normal_force") return normal_force(0);
  if (name == "normal_force_1") return normal_force(1);
  if (name == "normal_force_2") return normal_force(2);
  if (name == "normal_force_3") return normal_force(3);
  if (name == "friction") return friction();
  if (name == "block_impact") return block_impact();
  if (name == "silo") return silo(3.0, 102, "silo");

  if (name.rfind("silo_d", 0) == 0) {
    const size_t n_pos = name.find("_n");
    if (n_pos != std::string::npos) {
      const std::string d_tag = name.substr(6, n_pos - 6);
      const std::string n_tag = name.substr(n_pos + 2);
      const double neck = std::stod(d_tag) / 10.0;
      int rows = 0;
      if (n_tag == "8k") rows = 91;
      else if (n_tag == "9k") rows = 102;
      else if (n_tag == "10k") rows = 114;
      if (rows > 0 && neck >= 2.0 && neck <= 4.0) return silo(neck, rows, name);
    }
  }
  throw std::invalid_argument("unknown builtin scenario '" + name + "'");
}

}  // namespace mpmsdem
