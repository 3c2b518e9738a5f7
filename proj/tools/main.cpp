#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpmsdem/beverloo.hpp"
#include "mpmsdem/errors.hpp"
#include "mpmsdem/harness.hpp"
#include "mpmsdem/scenario.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& scenario_name,
            const std::string& out_dir, double until, int dump_every) {
  mpmsdem::ScenarioConfig cfg;
  if (!scenario_name.empty()) {
    if (!mpmsdem::is_builtin_scenario(scenario_name)) {
      std::cerr << "error: unknown builtin scenario '" << scenario_name
                << "' (see `list-scenarios`)\n";
      return 1;
    }
    cfg = mpmsdem::builtin_scenario(scenario_name);
  } else if (!config_path.empty()) {
    cfg = mpmsdem::load_scenario(config_path);
  } else {
    std::cerr << "error: give a config file or --scenario NAME\n";
    return 1;
  }

  mpmsdem::RunOptions opt;
  opt.out_dir = out_dir;
  opt.until = until;
  opt.dump_every = dump_every;
  const mpmsdem::RunResult res = mpmsdem::run_scenario(cfg, opt);
  std::cout << "scenario " << cfg.name << ": " << res.steps << " steps to t = " << res.final_time
            << ", series written to " << res.series_path << "\n";
  return 0;
}

int cmd_fit_beverloo(const std::string& csv_path, double char_size) {
  std::ifstream in(csv_path);
  if (!in) {
    std::cerr << "error: cannot open '" << csv_path << "'\n";
    return 1;
  }
  std::vector<double> d0, q;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a, b;
    if (row >> a >> b) {
      d0.push_back(a);
      q.push_back(b);
    }  // non-numeric rows (headers) are skipped
  }
  const mpmsdem::BeverlooFit fit = mpmsdem::beverloo_fit(d0, q, char_size);
  std::printf("C        = %.6g\n", fit.coefficient);
  std::printf("k_c      = %.6g\n", fit.kc);
  std::printf("exponent = %.6g\n", fit.exponent);
  std::printf("residual = %.6g\n", fit.residual);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D coupled MPM / spheropolygon-DEM simulator"};
  app.require_subcommand(1);

  std::string config_path, scenario_name, out_dir = ".";
  double until = -1.0;
  int dump_every = -1;
  CLI::App* run = app.add_subcommand("run", "run a scenario config or builtin");
  run->add_option("config", config_path, "scenario config file");
  run->add_option("--scenario", scenario_name, "builtin scenario name instead of a file");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--until", until, "stop at this time instead of the configured t_end");
  run->add_option("--dump-every", dump_every, "snapshot cadence in steps (0 disables)");

  CLI::App* list = app.add_subcommand("list-scenarios", "list builtin scenarios");

  std::string csv_path;
  double char_size = 0.2;
  CLI::App* fit = app.add_subcommand("fit-beverloo", "fit Q = C (D0 - kc d)^p to a CSV of D0,Q");
  fit->add_option("csv", csv_path, "CSV file with D0,Q rows")->required();
  fit->add_option("--char-size", char_size, "characteristic size d (default 0.2)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, scenario_name, out_dir, until, dump_every);
    if (list->parsed()) {
      for (const std::string& name : mpmsdem::builtin_scenarios()) std::cout << name << "\n";
      return 0;
    }
    if (fit->parsed()) return cmd_fit_beverloo(csv_path, char_size);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
