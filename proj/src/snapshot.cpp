#include "mpmsdem/snapshot.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mpmsdem {

namespace {

constexpr char kMagic[] = "mpmsdem-snapshot 1";

void put(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

Snapshot snapshot_of(const World& w) {
  Snapshot s;
  s.time = w.time;
  s.points.reserve(w.points.size());
  for (const MaterialPoint& p : w.points) {
    s.points.push_back({p.x, p.v, p.mass, p.volume, p.stress.sigma(0, 0), p.stress.sigma(1, 1),
                        p.stress.sigma_zz, p.stress.sigma(0, 1), p.stress.strain(0, 0),
                        p.stress.strain(1, 1), p.stress.strain(0, 1), p.affine, p.material});
  }
  s.bodies.reserve(w.bodies.size());
  for (const Spheropolygon& b : w.bodies) {
    s.bodies.push_back({b.center, b.angle, b.velocity, b.omega, b.mass, b.inertia, b.fixed});
  }
  return s;
}

void save_snapshot(const Snapshot& s, const std::string& path) {
  std::string out;
  out += kMagic;
  out += "\ntime ";
  put(out, s.time);
  out += "\npoints " + std::to_string(s.points.size()) + "\n";
  for (const SnapshotPoint& p : s.points) {
    const double row[] = {p.x.x(),  p.x.y(),        p.v.x(),        p.v.y(),        p.mass,
                          p.volume, p.sxx,          p.syy,          p.szz,          p.sxy,
                          p.exx,    p.eyy,          p.exy,          p.affine(0, 0), p.affine(0, 1),
                          p.affine(1, 0), p.affine(1, 1)};
    for (double v : row) {
      put(out, v);
      out += ' ';
    }
    out += std::to_string(p.material);
    out += '\n';
  }
  out += "bodies " + std::to_string(s.bodies.size()) + "\n";
  for (const SnapshotBody& b : s.bodies) {
    const double row[] = {b.center.x(), b.center.y(), b.angle, b.velocity.x(), b.velocity.y(),
                          b.omega,      b.mass,       b.inertia};
    for (double v : row) {
      put(out, v);
      out += ' ';
    }
    out += b.fixed ? "1\n" : "0\n";
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write snapshot '" + path + "'");
  f << out;
}

Snapshot load_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read snapshot '" + path + "'");
  std::string magic;
  std::getline(f, magic);
  if (magic != kMagic) throw std::runtime_error("'" + path + "' is not a v1 snapshot");

  Snapshot s;
  std::string word;
  size_t n = 0;
  f >> word >> s.time;
  if (word != "time") throw std::runtime_error("snapshot missing time header");
  f >> word >> n;
  if (word != "points") throw std::runtime_error("snapshot missing points header");
  s.points.resize(n);
  for (SnapshotPoint& p : s.points) {
    f >> p.x.x() >> p.x.y() >> p.v.x() >> p.v.y() >> p.mass >> p.volume >> p.sxx >> p.syy >>
        p.szz >> p.sxy >> p.exx >> p.eyy >> p.exy >> p.affine(0, 0) >> p.affine(0, 1) >>
        p.affine(1, 0) >> p.affine(1, 1) >> p.material;
  }
  f >> word >> n;
  if (word != "bodies") throw std::runtime_error("snapshot missing bodies header");
  s.bodies.resize(n);
  for (SnapshotBody& b : s.bodies) {
    int fixed = 0;
    f >> b.center.x() >> b.center.y() >> b.angle >> b.velocity.x() >> b.velocity.y() >>
        b.omega >> b.mass >> b.inertia >> fixed;
    b.fixed = fixed != 0;
  }
  if (!f) throw std::runtime_error("snapshot '" + path + "' is truncated or malformed");
  return s;
}

double snapshot_kinetic_energy(const Snapshot& s) {
  double ke = 0.0;
  for (const SnapshotPoint& p : s.points) ke += 0.5 * p.mass * p.v.squaredNorm();
  for (const SnapshotBody& b : s.bodies) {
    if (b.fixed) continue;
    ke += 0.5 * b.mass * b.velocity.squaredNorm() + 0.5 * b.inertia * b.omega * b.omega;
  }
  return ke;
}

}  // namespace mpmsdem
