#pragma once

#include <span>
#include <string>
#include <vector>

#include "mpmsdem/scenario.hpp"
#include "mpmsdem/world.hpp"

namespace mpmsdem {

// One time-series record; the channel set is fixed for a whole run.
struct SeriesRecord {
  double t;
  std::vector<double> values;
};

struct SeriesChannels {
  std::vector<std::string> names;
  std::vector<SeriesRecord> records;

  int index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
  std::vector<double> times() const;
};

// Channel evaluation for the current world state (used by run() each output
// step and by tests directly).
SeriesChannels make_channels(const ScenarioConfig& cfg);
void append_record(SeriesChannels& ch, const World& w, const ScenarioConfig& cfg);

struct RunOptions {
  std::string out_dir = ".";
  double until = -1.0;    // override t_end when positive
  int dump_every = -1;    // override snapshot cadence when nonnegative
  bool write_files = true;
};

struct RunResult {
  long steps = 0;
  double final_time = 0.0;
  std::string series_path;
  SeriesChannels series;
};

// Drive a scenario to t_end: CSV time series (17 significant digits), periodic
// snapshots, and a final snapshot. Simulation errors are rethrown with the
// failing step index.
RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opt);

// Steady discharge rate: linear regression of discharged mass over the middle
// half of the discharge window.
double steady_discharge_rate(std::span<const double> t, std::span<const double> mass);

void write_series_csv(const SeriesChannels& ch, const std::string& path);

}  // namespace mpmsdem
