#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mpmsdem/beverloo.hpp"
#include "mpmsdem/constitutive.hpp"
#include "mpmsdem/harness.hpp"
#include "mpmsdem/kernels.hpp"
#include "mpmsdem/scenario.hpp"
#include "mpmsdem/world.hpp"

namespace py = pybind11;
using namespace mpmsdem;

namespace {

// Thin handle keeping the config next to the world so stepping and channel
// evaluation stay consistent.
struct Simulation {
  explicit Simulation(const ScenarioConfig& cfg) : built(build_scenario(cfg)) {}

  BuiltScenario built;

  void step(int n) {
    for (int i = 0; i < n; ++i) built.world.step(built.dt);
  }
  double time() const { return built.world.time; }
  double dt() const { return built.dt; }
  size_t num_points() const { return built.world.points.size(); }
  size_t num_bodies() const { return built.world.bodies.size(); }
  double total_point_mass() const { return built.world.total_point_mass(); }
  double kinetic_energy() const { return built.world.kinetic_energy(); }

  Eigen::MatrixX2d positions() const {
    Eigen::MatrixX2d out(built.world.points.size(), 2);
    for (size_t i = 0; i < built.world.points.size(); ++i)
      out.row(static_cast<Eigen::Index>(i)) = built.world.points[i].x;
    return out;
  }
  Eigen::MatrixX2d velocities() const {
    Eigen::MatrixX2d out(built.world.points.size(), 2);
    for (size_t i = 0; i < built.world.points.size(); ++i)
      out.row(static_cast<Eigen::Index>(i)) = built.world.points[i].v;
    return out;
  }
  py::dict body_state(size_t i) const {
    const Spheropolygon& b = built.world.bodies.at(i);
    py::dict d;
    d["name"] = built.world.body_names.at(i);
    d["center"] = b.center;
    d["angle"] = b.angle;
    d["velocity"] = b.velocity;
    d["omega"] = b.omega;
    d["mass"] = b.mass;
    d["fixed"] = b.fixed;
    return d;
  }
};

Simulation* sim_from_builtin(const std::string& name) {
  return new Simulation(builtin_scenario(name));
}
Simulation* sim_from_file(const std::string& path) {
  return new Simulation(load_scenario(path));
}
Simulation* sim_from_text(const std::string& text, const std::string& name) {
  return new Simulation(parse_scenario(text, name));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "2D coupled MPM / spheropolygon-DEM simulator";

  m.def("gimp_weight", &gimp_weight, py::arg("dx"), py::arg("spacing"), py::arg("half_width"));
  m.def("gimp_weight_gradient", &gimp_weight_gradient, py::arg("dx"), py::arg("spacing"),
        py::arg("half_width"));
  m.def("bspline_weight", &bspline_weight, py::arg("dx"), py::arg("spacing"));
  m.def(
      "dp_coefficients",
      [](double phi, double c) {
        const DpCoefficients q = dp_coefficients(phi, c);
        return py::make_tuple(q.q, q.k);
      },
      py::arg("friction_angle"), py::arg("cohesion"));

  m.def("builtin_scenarios", &builtin_scenarios);
  m.def(
      "run_scenario",
      [](const std::string& name_or_path, const std::string& out_dir, double until) {
        const ScenarioConfig cfg = is_builtin_scenario(name_or_path)
                                       ? builtin_scenario(name_or_path)
                                       : load_scenario(name_or_path);
        RunOptions opt;
        opt.out_dir = out_dir;
        opt.until = until;
        const RunResult res = run_scenario(cfg, opt);
        py::dict d;
        d["steps"] = res.steps;
        d["final_time"] = res.final_time;
        d["series_path"] = res.series_path;
        return d;
      },
      py::arg("scenario"), py::arg("out_dir") = ".", py::arg("until") = -1.0);

  m.def(
      "beverloo_fit",
      [](const std::vector<double>& d0, const std::vector<double>& q, double d) {
        const BeverlooFit f = beverloo_fit(d0, q, d);
        py::dict out;
        out["C"] = f.coefficient;
        out["kc"] = f.kc;
        out["exponent"] = f.exponent;
        out["residual"] = f.residual;
        return out;
      },
      py::arg("neck_diameters"), py::arg("rates"), py::arg("char_size"));

  py::class_<Simulation>(m, "Simulation")
      .def(py::init([](const std::string& name) { return sim_from_builtin(name); }),
           py::arg("builtin"))
      .def_static("from_file", &sim_from_file, py::arg("path"))
      .def_static("from_text", &sim_from_text, py::arg("text"), py::arg("name") = "inline")
      .def("step", &Simulation::step, py::arg("n") = 1)
      .def_property_readonly("time", &Simulation::time)
      .def_property_readonly("dt", &Simulation::dt)
      .def_property_readonly("num_points", &Simulation::num_points)
      .def_property_readonly("num_bodies", &Simulation::num_bodies)
      .def("total_point_mass", &Simulation::total_point_mass)
      .def("kinetic_energy", &Simulation::kinetic_energy)
      .def("positions", &Simulation::positions)
      .def("velocities", &Simulation::velocities)
      .def("body_state", &Simulation::body_state, py::arg("index"));
}
