#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "shearmhd/config.hpp"
#include "shearmhd/diagnostics.hpp"
#include "shearmhd/initial_data.hpp"

namespace shearmhd::experiments {

struct Assertion {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double lo = 0.0, hi = 0.0;  // pass iff lo ≤ value ≤ hi
};

// Files are written under cfg.out when it is set; otherwise only the summary
// is produced. See README for the CSV layouts and the summary schema.
struct Artifact {
  nlohmann::ordered_json summary;
  std::vector<Assertion> assertions;
  std::vector<std::string> files;
  bool ok() const;
};

Artifact run_experiment(const RunConfig& cfg);

// ---- simulation core (simulate, stability, inflation) -----------------------

struct Simulation {
  InitialData data;
  std::vector<nonlinear::DiagnosticsRecord> records;  // one per sample time
  // lockstep linear run (linear_baseline): ‖φ_lin‖_X and ‖φ − φ_lin‖_X
  std::vector<double> X_lin, discrepancy;
  bool has_identity = false;
  nonlinear::IdentityResidual identity;
  double t_end = 0.0;
  double dt_used = 0.0;  // configured step after the identity cap
  long steps = 0, rejections = 0;
  double min_dt = 0.0;   // smallest step after CFL retries
  std::vector<std::string> snapshots;
};

// Samples at 0, h, 2h, … up to t_end (plus t_end itself when it is off the
// lattice and no identity check runs). Identity checks cap dt at h/2.
// Snapshots of φ and G go to snapshot_dir when it is nonempty.
Simulation simulate(const RunConfig& cfg, const std::string& snapshot_dir = {});

// ---- CSV --------------------------------------------------------------------

std::string diagnostics_csv(const Simulation& sim);

}  // namespace shearmhd::experiments
