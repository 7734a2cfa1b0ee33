#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "jetph/sim/system.hpp"

namespace jetph::sim {

enum class Form { Geometric, Dirac, Both };

struct SimConfig {
  PlateParams params;
  int nx = 32, ny = 32;
  Form form = Form::Both;
  double dt = 0.0;  // 0 selects the stability-based default
  long long steps = 100;
  int record_every = 1;
  int snapshot_every = 0;          // 0 disables field snapshots
  std::string snapshot_dir;        // required when snapshots are on
  bool force_dt = false;
  double balance_tolerance = 0.0;  // 0 disables the post-run balance check
  Backend backend = Backend::OpenMP;
  PlateBC bc;
  InitialCondition ic;
};

SimConfig sim_config_from_json(const std::string& text);
SimConfig load_sim_config(const std::string& path);

struct Record {
  double t = 0.0;
  double energy = 0.0;
  double boundary_power = 0.0;
  double balance_residual = 0.0;  // centered dH/dt minus recorded power; NaN at the ends
  double discrepancy = 0.0;       // max nodal gap between the two forms, when both ran
};

struct TimeSeries {
  std::vector<Record> rows;
  bool has_discrepancy = false;
};

void write_csv(const TimeSeries& ts, std::ostream& os);

struct RunResult {
  double dt = 0.0;
  std::vector<std::string> warnings;
  std::optional<TimeSeries> geometric;
  std::optional<TimeSeries> dirac;
  std::optional<GeoState> geo_final;
  std::optional<DiracState> dirac_final;
};

// Runs the configured number of steps in the requested form(s). With both
// forms the runs advance in lockstep on the same discretization and the
// discrepancy column compares displacements against reconstructions at each
// record time. Deterministic for a fixed config, independent of thread
// count.
RunResult run(const SimConfig& cfg);

// Raw field snapshot: magic, version, rows, cols, then row-major float64.
void write_snapshot(const std::string& path, int rows, int cols, const double* data);

}  // namespace jetph::sim
