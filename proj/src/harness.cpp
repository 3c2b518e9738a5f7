#include "mpmsdem/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "mpmsdem/snapshot.hpp"

namespace mpmsdem {

int SeriesChannels::index(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<double> SeriesChannels::column(const std::string& name) const {
  const int i = index(name);
  if (i < 0) throw std::runtime_error("no series channel named '" + name + "'");
  std::vector<double> out;
  out.reserve(records.size());
  for (const SeriesRecord& r : records) out.push_back(r.values[static_cast<size_t>(i)]);
  return out;
}

std::vector<double> SeriesChannels::times() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const SeriesRecord& r : records) out.push_back(r.t);
  return out;
}

SeriesChannels make_channels(const ScenarioConfig& cfg) {
  SeriesChannels ch;
  ch.names = {"total_kinetic_energy",
              "ke_mpm",
              "ke_dem",
              "vx2_mpm",
              "vy2_mpm",
              "vx2_dem",
              "vy2_dem",
              "mpm_com_x",
              "mpm_com_y",
              "total_normal_coupling_force",
              "total_tangential_coupling_force"};
  if (cfg.output.discharge_below_y) ch.names.push_back("discharged_mass");
  if (!cfg.output.inclination_body.empty()) {
    ch.names.push_back(cfg.output.inclination_body + "_inclination_deg");
    if (!cfg.output.ground_body.empty())
      ch.names.push_back(cfg.output.inclination_body + "_ground_contact");
  }
  return ch;
}

void append_record(SeriesChannels& ch, const World& w, const ScenarioConfig& cfg) {
  SeriesRecord r;
  r.t = w.time;

  double ke_mpm = 0.0, m_mpm = 0.0;
  Vec2 p_mpm = Vec2::Zero(), com = Vec2::Zero();
  for (const MaterialPoint& p : w.points) {
    ke_mpm += 0.5 * p.mass * p.v.squaredNorm();
    m_mpm += p.mass;
    p_mpm += p.mass * p.v;
    com += p.mass * p.x;
  }
  const Vec2 v_mpm = m_mpm > 0.0 ? Vec2(p_mpm / m_mpm) : Vec2::Zero();
  com = m_mpm > 0.0 ? Vec2(com / m_mpm) : Vec2::Zero();

  double ke_dem = 0.0, m_dem = 0.0;
  Vec2 p_dem = Vec2::Zero();
  for (const Spheropolygon& b : w.bodies) {
    if (b.fixed) continue;
    ke_dem += 0.5 * b.mass * b.velocity.squaredNorm() + 0.5 * b.inertia * b.omega * b.omega;
    m_dem += b.mass;
    p_dem += b.mass * b.velocity;
  }
  const Vec2 v_dem = m_dem > 0.0 ? Vec2(p_dem / m_dem) : Vec2::Zero();

  double f_normal = 0.0, f_tangential = 0.0;
  for (const CouplingContact& c : w.coupling_contacts()) {
    f_normal += c.normal_mag;
    f_tangential += c.tangential_mag;
  }

  r.values = {ke_mpm + ke_dem, ke_mpm,      ke_dem,      v_mpm.x() * v_mpm.x(),
              v_mpm.y() * v_mpm.y(), v_dem.x() * v_dem.x(), v_dem.y() * v_dem.y(),
              com.x(),       com.y(),     f_normal,    f_tangential};

  if (cfg.output.discharge_below_y) {
    double discharged = 0.0;
    for (const MaterialPoint& p : w.points) {
      if (p.x.y() < *cfg.output.discharge_below_y) discharged += p.mass;
    }
    r.values.push_back(discharged);
  }
  if (!cfg.output.inclination_body.empty()) {
    const int bi = cfg.body_index(cfg.output.inclination_body);
    const Spheropolygon& b = w.bodies[static_cast<size_t>(bi)];
    r.values.push_back(std::abs(b.angle) * 180.0 / std::numbers::pi);
    if (!cfg.output.ground_body.empty()) {
      const int gi = cfg.body_index(cfg.output.ground_body);
      r.values.push_back(w.bodies_in_contact(bi, gi) ? 1.0 : 0.0);
    }
  }
  ch.records.push_back(std::move(r));
}

void write_series_csv(const SeriesChannels& ch, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write series '" + path + "'");
  f << "t";
  for (const std::string& n : ch.names) f << ',' << n;
  f << '\n';
  char buf[32];
  for (const SeriesRecord& r : ch.records) {
    std::snprintf(buf, sizeof buf, "%.17g", r.t);
    f << buf;
    for (double v : r.values) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      f << ',' << buf;
    }
    f << '\n';
  }
}

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opt) {
  BuiltScenario built = build_scenario(cfg);
  World& w = built.world;
  const double dt = built.dt;
  const double t_end = opt.until > 0.0 ? opt.until : cfg.t_end;
  const long nsteps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  const int snapshot_every = opt.dump_every >= 0 ? opt.dump_every : cfg.output.snapshot_every;

  namespace fs = std::filesystem;
  if (opt.write_files) fs::create_directories(opt.out_dir);

  RunResult result;
  result.series = make_channels(cfg);
  append_record(result.series, w, cfg);

  for (long step = 1; step <= nsteps; ++step) {
    try {
      w.step(dt);
    } catch (const std::exception& e) {
      throw std::runtime_error("scenario '" + cfg.name + "' failed at step " +
                               std::to_string(step) + ": " + e.what());
    }
    if (step % cfg.output.series_every == 0 || step == nsteps)
      append_record(result.series, w, cfg);
    if (opt.write_files && snapshot_every > 0 && step % snapshot_every == 0) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%08ld.txt", step);
      save_snapshot(snapshot_of(w), (fs::path(opt.out_dir) / name).string());
    }
  }

  result.steps = nsteps;
  result.final_time = w.time;
  if (opt.write_files) {
    result.series_path = (fs::path(opt.out_dir) / (cfg.name + "_series.csv")).string();
    write_series_csv(result.series, result.series_path);
    save_snapshot(snapshot_of(w), (fs::path(opt.out_dir) / (cfg.name + "_final.txt")).string());
  }
  return result;
}

double steady_discharge_rate(std::span<const double> t, std::span<const double> mass) {
  if (t.size() != mass.size() || t.size() < 4) return 0.0;
  const double final_mass = mass.back();
  if (!(final_mass > 0.0)) return 0.0;

  size_t first = 0;
  while (first < mass.size() && mass[first] <= 0.005 * final_mass) ++first;
  size_t last = mass.size() - 1;
  while (last > first && mass[last] >= 0.995 * final_mass) --last;
  if (last <= first) return 0.0;

  const double t0 = t[first], t1 = t[last];
  const double lo = t0 + 0.25 * (t1 - t0);
  const double hi = t0 + 0.75 * (t1 - t0);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long n = 0;
  for (size_t i = first; i <= last; ++i) {
    if (t[i] < lo || t[i] > hi) continue;
    sx += t[i];
    sy += mass[i];
    sxx += t[i] * t[i];
    sxy += t[i] * mass[i];
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = n * sxx - sx * sx;
  return denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
}

}  // namespace mpmsdem
