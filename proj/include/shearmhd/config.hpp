#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "shearmhd/echo.hpp"
#include "shearmhd/weights.hpp"

namespace shearmhd::experiments {

enum class Kind { linear_sweep, simulate, stability, inflation, echo, weights_audit };
const char* to_string(Kind k);
Kind kind_from_string(const std::string& s);  // CLI spelling, e.g. "linear-sweep"

enum class TEndPolicy { absolute, eps_two_thirds, eps_half };  // t_end, c·ε^{−2/3}, c·ε^{−1/2}
enum class Recipe { single_mode, random_band };
enum class DataField { phi, G, both };

// Flat configuration; the file format is a YAML mapping of the same keys
// (see README). Defaults depend on the kind, see defaults_for.
struct RunConfig {
  Kind kind = Kind::simulate;
  unsigned long seed = 1;
  int threads = 1;
  std::string out;

  int nx = 64, ny = 64;
  double ly = 2.0 * std::numbers::pi;
  double dealias = 2.0 / 3.0;

  double nu = 1.0, alpha = 1.0;
  double eps = 1e-3;
  bool nonlinear = true;

  TEndPolicy t_end_policy = TEndPolicy::absolute;
  double t_end = 1.0;
  double t_end_c = 1.0;
  double dt = 0.01;
  double cfl_safety = 0.9;
  double sample_every = 0.1;

  Recipe recipe = Recipe::random_band;
  DataField data_field = DataField::both;
  int mode_k = 1, mode_m = 0;
  int band_k_min = 1, band_k_max = 4, band_m_min = 0, band_m_max = 4;
  double gevrey_sigma = 0.5;  // envelope e^{−σ(|k|+|η|)^{1/2}}
  bool mean_flow = false;

  weights::WeightParams weights;
  int k0 = 4;

  bool full_diagnostics = true;
  bool identity_check = false;
  bool identity_refine = false;
  bool linear_baseline = false;
  double snapshot_every = 0.0;  // 0 disables

  double fit_t_lo = 5.0;
  double fit_t_hi = 0.0;  // 0 selects ε^{−2/3}/2

  double assert_energy_ratio = 4.0;
  double assert_exponent_lo = 1.8, assert_exponent_hi = 2.2;
  double assert_discrepancy = 0.1;
  double assert_identity_tol = 1e-4;
  double assert_identity_gain = 3.0;

  int sweep_k_max = 8;
  double sweep_eta_max = 32.0;
  int sweep_n_eta = 129;
  double sweep_t_end = 60.0;
  double sweep_rtol = 1e-10;
  double sweep_tol = 1e-6;
  double sweep_output_every = 1.0;

  std::vector<double> echo_etas{1e3, 1e4, 1e5};
  echo::Coupling echo_coupling = echo::Coupling::regime_matched;
  double echo_delta = 2.0 / std::numbers::pi;
  double echo_eps = 1e-6;
  double echo_window = 8.0;
  double echo_link_factor = 2.0;
  double echo_slope_lo = 0.25, echo_slope_hi = 1.0;
  double echo_r2 = 0.95;

  std::vector<double> audit_etas{50.0, 500.0, 5000.0};
  int audit_k_max = 8;
  int audit_n_t = 400;
  double audit_t_max = 0.0;  // 0 selects 2η for each η

  // Concrete end time; throws ConfigError when unresolvable.
  double resolved_t_end() const;
  double resolved_fit_t_hi() const;
  void validate() const;  // throws ConfigError
};

RunConfig defaults_for(Kind kind);
// Parses key: value text over defaults_for(kind of the file, or `kind`).
RunConfig parse_config(const std::string& text, Kind kind);
RunConfig load_config(const std::string& path, Kind kind);
// Serializes every key, for the summary and for reruns.
std::string dump_config(const RunConfig& c);

}  // namespace shearmhd::experiments
