#include "mpmsdem/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "mpmsdem/coupling.hpp"
#include "mpmsdem/errors.hpp"
#include "mpmsdem/ini.hpp"

namespace mpmsdem {

namespace {

Vec2 vec2_of(const std::vector<double>& v, const std::string& what) {
  if (v.size() != 2) throw ValidationError(what + ": expected two numbers");
  return Vec2(v[0], v[1]);
}

TransferScheme parse_scheme(const IniSection& s) {
  TransferScheme scheme;
  const std::string kind = s.text_or("transfer", "hybrid");
  if (kind == "pic") scheme.kind = TransferKind::PIC;
  else if (kind == "flip") scheme.kind = TransferKind::FLIP;
  else if (kind == "hybrid") scheme.kind = TransferKind::Hybrid;
  else if (kind == "apic") scheme.kind = TransferKind::APIC;
  else throw ParseError("unknown transfer scheme '" + kind + "'", s.line);
  scheme.alpha = s.number_or("alpha", 0.0);
  return scheme;
}

constexpr double kDegree = std::numbers::pi / 180.0;

}  // namespace

double SeedSpec::lattice_spacing(double grid_spacing) const {
  if (spacing > 0.0) return spacing;
  if (points_per_cell > 0.0) return grid_spacing / std::sqrt(points_per_cell);
  return 0.0;
}

int ScenarioConfig::material_index(const std::string& mat_name) const {
  for (size_t i = 0; i < materials.size(); ++i) {
    if (materials[i].name == mat_name) return static_cast<int>(i);
  }
  return -1;
}

int ScenarioConfig::body_index(const std::string& body_name) const {
  for (size_t i = 0; i < bodies.size(); ++i) {
    if (bodies[i].name == body_name) return static_cast<int>(i);
  }
  return -1;
}

namespace {

void validate_scenario(const ScenarioConfig& c) {
  std::ostringstream bad;

  if (!(c.grid.spacing > 0.0)) bad << "GRID-SPACING: grid spacing must be positive\n";
  if (c.grid.node_counts.x() < 4 || c.grid.node_counts.y() < 4)
    bad << "GRID-NODES: node counts must be at least 4 per axis\n";
  if (c.grid.kernel == KernelKind::Gimp && c.grid.gimp_half_width > 0.0 &&
      c.grid.gimp_half_width > c.grid.spacing)
    bad << "GRID-LP: GIMP half-width must satisfy 0 < lp <= L\n";

  for (const MaterialSpec& m : c.materials) {
    const std::string tag = "MAT(" + m.name + ")";
    if (!(m.material.elastic.bulk_modulus > 0.0)) bad << tag << ": bulk modulus must be positive\n";
    if (!(m.material.elastic.shear_modulus > 0.0))
      bad << tag << ": shear modulus must be positive\n";
    if (!(m.material.density > 0.0)) bad << tag << ": density must be positive\n";
    if (m.material.scheme.kind == TransferKind::Hybrid &&
        (m.material.scheme.alpha < 0.0 || m.material.scheme.alpha > 1.0))
      bad << tag << ": hybrid alpha must lie in [0, 1]\n";
    if (m.material.scheme.kind == TransferKind::APIC && c.grid.kernel != KernelKind::BSplineA4)
      bad << tag << ": APIC transfers require the bspline_a4 kernel\n";
    if (m.material.dp) {
      const DruckerPragerParams& dp = *m.material.dp;
      if (dp.friction_angle < 0.0 || dp.friction_angle >= std::numbers::pi / 2.0)
        bad << tag << ": friction angle must lie in [0, 90) degrees\n";
      if (dp.cohesion < 0.0) bad << tag << ": cohesion must be nonnegative\n";
      if (dp.tensile_strength < 0.0) bad << tag << ": tensile strength must be nonnegative\n";
      if (dp.dilation_angle < 0.0 || dp.dilation_angle > dp.friction_angle)
        bad << tag << ": dilation angle must lie in [0, friction angle]\n";
    }
  }

  std::vector<Spheropolygon> trial_bodies;
  for (const BodySpec& b : c.bodies) {
    const std::string tag = "BODY(" + b.name + ")";
    if (!(b.material.kn > 0.0)) bad << tag << ": kn must be positive\n";
    if (!(b.material.kt > 0.0)) bad << tag << ": kt must be positive\n";
    if (b.material.mu < 0.0) bad << tag << ": mu must be nonnegative\n";
    if (!(b.density > 0.0)) bad << tag << ": density must be positive\n";
    if (b.fixed && (b.velocity.norm() != 0.0 || b.omega != 0.0))
      bad << tag << ": fixed bodies cannot have a velocity\n";
    try {
      trial_bodies.push_back(
          build_body(b.vertices, b.sphero_radius, std::max(b.density, 1e-300), b.fixed,
                     b.material));
    } catch (const DegenerateGeometry& e) {
      bad << tag << ": " << e.what() << "\n";
    }
  }

  if (!(c.coupling.verlet_distance > 0.0))
    bad << "COUPLING-VD: verlet_distance must be positive\n";
  if (!(c.coupling.kappa1 > 0.0) || !(c.coupling.kappa2 > 0.0))
    bad << "COUPLING-KAPPA: kappa1 and kappa2 must be positive\n";

  // Eq. 45 interval for the coupling contact radius, per seeded lattice.
  const double lg = c.grid.spacing;
  for (const SeedSpec& s : c.seeds) {
    const std::string tag = "SEED(" + s.name + ")";
    if (c.material_index(s.material) < 0)
      bad << tag << ": unknown material '" << s.material << "'\n";
    const double pitch = s.lattice_spacing(lg);
    if (!(pitch > 0.0)) {
      bad << tag << ": needs a positive spacing or points_per_cell\n";
      continue;
    }
    if (!c.bodies.empty()) {
      const double n = (lg / pitch) * (lg / pitch);
      const double lower = lg * std::sqrt(1.0 / n);
      double rp = c.coupling.contact_radius;
      if (rp <= 0.0) {
        rp = lg / 3.0;
        if (!(n > 9.0))
          bad << tag << ": EQ45: default contact radius l/3 needs more than 9 points per cell "
              << "(got " << n << "); set contact_radius explicitly\n";
      }
      if (!(lower < rp && rp < lg))
        bad << tag << ": EQ45: contact radius " << rp << " outside the admissible interval ("
            << lower << ", " << lg << ")\n";
    }
  }

  if (!(c.t_end > 0.0)) bad << "SCHED-TEND: t_end must be positive\n";
  if (c.output.series_every < 1) bad << "SCHED-SERIES: series_every must be at least 1\n";
  if (c.dt < 0.0) bad << "SCHED-DT: dt must be positive or auto\n";

  // Eq. 51 bound for an explicit time step.
  if (c.dt > 0.0 && bad.str().empty()) {
    std::vector<Material> mats;
    for (const MaterialSpec& m : c.materials) mats.push_back(m.material);
    try {
      const double bound =
          critical_dt(c.grid, mats, trial_bodies, c.coupling.kappa1, c.coupling.kappa2);
      if (c.dt > bound * (1.0 + 1e-9))
        bad << "EQ51: dt = " << c.dt << " exceeds the stability bound " << bound << "\n";
    } catch (const NoMobileObjects&) {
      bad << "EQ51: scenario has neither MPM material nor mobile body\n";
    }
  }

  if (!c.output.inclination_body.empty() && c.body_index(c.output.inclination_body) < 0)
    bad << "OUTPUT-BODY: unknown inclination body '" << c.output.inclination_body << "'\n";
  if (!c.output.ground_body.empty() && c.body_index(c.output.ground_body) < 0)
    bad << "OUTPUT-BODY: unknown ground body '" << c.output.ground_body << "'\n";

  const std::string msg = bad.str();
  if (!msg.empty()) throw ValidationError("scenario '" + c.name + "' failed validation:\n" + msg);
}

ScenarioConfig scenario_from_ini(const IniFile& ini, const std::string& default_name) {
  ScenarioConfig c;
  c.name = default_name;
  if (const IniSection* s = ini.find("scenario")) c.name = s->text_or("name", default_name);

  const IniSection* grid = ini.find("grid");
  if (!grid) throw ValidationError("config is missing the [grid] section");
  c.grid.origin = vec2_of(grid->numbers("origin"), "[grid] origin");
  c.grid.spacing = grid->number("spacing");
  const Vec2 counts = vec2_of(grid->numbers("nodes"), "[grid] nodes");
  c.grid.node_counts = Vec2i(static_cast<int>(counts.x()), static_cast<int>(counts.y()));
  const std::string kernel = grid->text_or("kernel", "gimp");
  if (kernel == "gimp") c.grid.kernel = KernelKind::Gimp;
  else if (kernel == "bspline_a4") c.grid.kernel = KernelKind::BSplineA4;
  else throw ParseError("unknown kernel '" + kernel + "'", grid->line);
  c.grid.gimp_half_width = grid->number_or("gimp_half_width", -1.0);

  if (const IniSection* g = ini.find("gravity")) c.gravity = vec2_of(g->numbers("g"), "[gravity] g");

  for (const IniSection* s : ini.all_with_prefix("material.")) {
    MaterialSpec m;
    m.name = s->name.substr(std::string("material.").size());
    m.material.elastic.bulk_modulus = s->number("bulk_modulus");
    m.material.elastic.shear_modulus = s->number("shear_modulus");
    m.material.density = s->number("density");
    m.material.scheme = parse_scheme(*s);
    const std::string model = s->text_or("model", "elastic");
    if (model == "drucker_prager") {
      DruckerPragerParams dp;
      dp.friction_angle = s->number("friction_angle_deg") * kDegree;
      dp.dilation_angle = s->number_or("dilation_angle_deg", 0.0) * kDegree;
      dp.cohesion = s->number_or("cohesion", 0.0);
      dp.tensile_strength = s->number_or("tensile_strength", 0.0);
      m.material.dp = dp;
    } else if (model != "elastic") {
      throw ParseError("unknown material model '" + model + "'", s->line);
    }
    c.materials.push_back(std::move(m));
  }

  for (const IniSection* s : ini.all_with_prefix("body.")) {
    BodySpec b;
    b.name = s->name.substr(std::string("body.").size());
    const std::string shape = s->text("shape");
    if (shape == "box") {
      const Vec2 center = vec2_of(s->numbers("center"), "[body] center");
      const Vec2 he = vec2_of(s->numbers("half_extents"), "[body] half_extents");
      b.vertices = {center + Vec2(-he.x(), -he.y()), center + Vec2(he.x(), -he.y()),
                    center + Vec2(he.x(), he.y()), center + Vec2(-he.x(), he.y())};
      b.sphero_radius = s->number("sphero_radius");
    } else if (shape == "disk") {
      b.vertices = {vec2_of(s->numbers("center"), "[body] center")};
      b.sphero_radius = s->number("radius");
    } else if (shape == "polygon" || shape == "capsule") {
      const std::vector<double> raw = s->numbers("vertices");
      if (raw.size() % 2 != 0 || raw.size() < 4)
        throw ParseError("vertices must hold an even number (>= 4) of coordinates", s->line);
      for (size_t k = 0; k + 1 < raw.size(); k += 2) b.vertices.emplace_back(raw[k], raw[k + 1]);
      b.sphero_radius = s->number("sphero_radius");
    } else {
      throw ParseError("unknown body shape '" + shape + "'", s->line);
    }
    b.density = s->number("density");
    b.fixed = s->flag_or("fixed", false);
    b.material.kn = s->number("kn");
    b.material.kt = s->number("kt");
    b.material.mu = s->number_or("mu", 0.0);
    if (s->has("velocity")) b.velocity = vec2_of(s->numbers("velocity"), "[body] velocity");
    b.omega = s->number_or("omega", 0.0);
    c.bodies.push_back(std::move(b));
  }

  for (const IniSection* s : ini.all_with_prefix("seed.")) {
    SeedSpec seed;
    seed.name = s->name.substr(std::string("seed.").size());
    seed.material = s->text("material");
    const std::string shape = s->text_or("shape", "rect");
    if (shape == "rect") {
      seed.shape = SeedSpec::Shape::Rect;
      seed.rect_min = vec2_of(s->numbers("min"), "[seed] min");
      seed.rect_max = vec2_of(s->numbers("max"), "[seed] max");
    } else if (shape == "disk") {
      seed.shape = SeedSpec::Shape::Disk;
      seed.disk_center = vec2_of(s->numbers("center"), "[seed] center");
      seed.disk_radius = s->number("radius");
    } else {
      throw ParseError("unknown seed shape '" + shape + "'", s->line);
    }
    seed.spacing = s->number_or("spacing", 0.0);
    seed.points_per_cell = s->number_or("points_per_cell", 0.0);
    if (s->has("velocity")) seed.velocity = vec2_of(s->numbers("velocity"), "[seed] velocity");
    if (s->has("drive_velocity_x")) {
      seed.drive_x = true;
      seed.drive_vx = s->number("drive_velocity_x");
    }
    const std::string prestress = s->text_or("prestress", "none");
    if (prestress == "lithostatic") seed.lithostatic = true;
    else if (prestress != "none") throw ParseError("unknown prestress '" + prestress + "'", s->line);
    c.seeds.push_back(std::move(seed));
  }

  if (const IniSection* s = ini.find("coupling")) {
    c.coupling.verlet_distance = s->number("verlet_distance");
    const std::string rp = s->text_or("contact_radius", "auto");
    c.coupling.contact_radius = rp == "auto" ? 0.0 : s->number("contact_radius");
    c.coupling.kappa1 = s->number_or("kappa1", 0.8);
    c.coupling.kappa2 = s->number_or("kappa2", 0.1);
  }

  const IniSection* sched = ini.find("schedule");
  if (!sched) throw ValidationError("config is missing the [schedule] section");
  const std::string dt = sched->text_or("dt", "auto");
  c.dt = dt == "auto" ? 0.0 : sched->number("dt");
  c.t_end = sched->number("t_end");

  if (const IniSection* s = ini.find("output")) {
    c.output.series_every = s->integer_or("series_every", 50);
    c.output.snapshot_every = s->integer_or("snapshot_every", 0);
    if (s->has("discharge_below_y")) c.output.discharge_below_y = s->number("discharge_below_y");
    c.output.inclination_body = s->text_or("inclination_body", "");
    c.output.ground_body = s->text_or("ground_body", "");
  }
  return c;
}

}  // namespace

ScenarioConfig load_scenario(const std::string& path) {
  const IniFile ini = IniFile::parse_file(path);
  ScenarioConfig c = scenario_from_ini(ini, std::filesystem::path(path).stem().string());
  validate_scenario(c);
  return c;
}

ScenarioConfig parse_scenario(const std::string& text, const std::string& name) {
  const IniFile ini = IniFile::parse(text);
  ScenarioConfig c = scenario_from_ini(ini, name);
  validate_scenario(c);
  return c;
}

std::vector<MaterialPoint> seed_points(const SeedSpec& seed, const GridConfig& grid,
                                       int material_index, const Material& material,
                                       const Vec2& gravity) {
  const double s = seed.lattice_spacing(grid.spacing);
  if (!(s > 0.0)) throw ValidationError("seed '" + seed.name + "' has no lattice pitch");
  const double density = material.density;
  if (seed.lithostatic && (gravity.x() != 0.0 || gravity.y() > 0.0))
    throw ValidationError("seed '" + seed.name + "': lithostatic seeding needs gravity along -y");

  const Vec2 lo = grid.origin + Vec2::Constant(grid.spacing);
  const Vec2 hi = grid.origin + grid.spacing * Vec2(grid.node_counts.x() - 2.0,
                                                    grid.node_counts.y() - 2.0);
  Vec2 bound_min, bound_max;
  if (seed.shape == SeedSpec::Shape::Rect) {
    bound_min = seed.rect_min;
    bound_max = seed.rect_max;
  } else {
    bound_min = seed.disk_center - Vec2::Constant(seed.disk_radius);
    bound_max = seed.disk_center + Vec2::Constant(seed.disk_radius);
  }
  if (bound_min.x() < lo.x() || bound_min.y() < lo.y() || bound_max.x() > hi.x() ||
      bound_max.y() > hi.y()) {
    std::ostringstream msg;
    msg << "seed '" << seed.name << "' region [" << bound_min.transpose() << "] .. ["
        << bound_max.transpose() << "] leaves the full-stencil domain [" << lo.transpose()
        << "] .. [" << hi.transpose() << "]";
    throw RegionOutsideDomain(msg.str());
  }

  std::vector<MaterialPoint> out;
  const double mass = density * s * s;
  const double y_top = seed.shape == SeedSpec::Shape::Rect
                           ? seed.rect_max.y()
                           : seed.disk_center.y() + seed.disk_radius;
  const double K = material.elastic.bulk_modulus, G = material.elastic.shear_modulus;
  const double nu = (3.0 * K - 2.0 * G) / (2.0 * (3.0 * K + G));
  auto emit = [&](const Vec2& x) {
    MaterialPoint p;
    p.x = x;
    p.v = seed.velocity;
    p.mass = mass;
    p.volume = s * s;
    p.material = material_index;
    if (seed.lithostatic) {
      const double syy = gravity.y() * density * (y_top - x.y());  // <= 0
      const double lateral = nu / (1.0 - nu) * syy;
      p.stress.sigma << lateral, 0.0, 0.0, syy;
      p.stress.sigma_zz = lateral;
    }
    out.push_back(p);
  };

  if (seed.shape == SeedSpec::Shape::Rect) {
    const Vec2 extent = seed.rect_max - seed.rect_min;
    const int nx = static_cast<int>(std::floor(extent.x() / s + 1e-6));
    const int ny = static_cast<int>(std::floor(extent.y() / s + 1e-6));
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        emit(seed.rect_min + s * Vec2(i + 0.5, j + 0.5));
      }
    }
  } else {
    const int K = static_cast<int>(std::ceil(seed.disk_radius / s)) + 1;
    for (int j = -K; j < K; ++j) {
      for (int i = -K; i < K; ++i) {
        const Vec2 x = seed.disk_center + s * Vec2(i + 0.5, j + 0.5);
        if ((x - seed.disk_center).norm() <= seed.disk_radius) emit(x);
      }
    }
  }
  return out;
}

BuiltScenario build_scenario(const ScenarioConfig& config) {
  validate_scenario(config);

  BuiltScenario built{World(config.grid), 0.0, config};
  World& w = built.world;
  w.gravity = config.gravity;
  w.coupling = config.coupling;
  if (w.coupling.contact_radius <= 0.0) w.coupling.contact_radius = config.grid.spacing / 3.0;

  for (const MaterialSpec& m : config.materials) w.materials.push_back(m.material);

  for (const BodySpec& b : config.bodies) {
    Spheropolygon body = build_body(b.vertices, b.sphero_radius, b.density, b.fixed, b.material);
    body.velocity = b.fixed ? Vec2::Zero() : b.velocity;
    body.omega = b.fixed ? 0.0 : b.omega;
    w.bodies.push_back(std::move(body));
    w.body_names.push_back(b.name);
  }

  for (const SeedSpec& seed : config.seeds) {
    const int mat = config.material_index(seed.material);
    std::vector<MaterialPoint> pts = seed_points(
        seed, config.grid, mat, config.materials[static_cast<size_t>(mat)].material,
        config.gravity);
    const int begin = static_cast<int>(w.points.size());
    w.points.insert(w.points.end(), pts.begin(), pts.end());
    if (seed.drive_x) {
      w.drives.push_back({begin, static_cast<int>(w.points.size()), true, seed.drive_vx});
    }
  }

  w.finalize();
  built.dt = config.dt > 0.0 ? config.dt : w.dt_bound();
  return built;
}

}  // namespace mpmsdem
