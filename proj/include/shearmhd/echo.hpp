#pragma once

#include <numbers>
#include <vector>

#include "shearmhd/spectral.hpp"

namespace shearmhd::echo {

// How the coupling ε is picked per link.
//   fixed:          ε for every link
//   regime_matched: ε_k = δ (k/η)^{3/2}, so ε t^{3/2} = δ at t = η/k
enum class Coupling { fixed, regime_matched };

struct EchoConfig {
  double eta = 1e4;
  int k_start = 0;  // 0 means ⌊η^{1/3}⌋
  double eps = 1e-6;
  Coupling coupling = Coupling::fixed;
  double delta = 2.0 / std::numbers::pi;  // quasi-static transfer equals η^{1/2}/k^{3/2}
  double window = 8.0;  // in resonant half-widths η/(2k³)
  cplx G0{0.0, 0.0};
  cplx phi_next0{1.0, 0.0};  // φ(k+1)
  cplx phi0{0.0, 0.0};       // φ(k)
  double rtol = 1e-9;

  static constexpr double k_safety = 2.0;
  static constexpr double eps_eta_guard = 1e6;

  void validate() const;  // throws ConfigError
  int resolved_k_start() const;
  double coupling_for(int k) const;
};

struct Gains {
  double gain_next = 0.0;  // |φ(k+1)(t1)| / |φ(k+1)(t0)|
  double gain_down = 0.0;  // |φ(k)(t1)| / |φ(k+1)(t0)|
};

struct LinkResult {
  int k = 1;
  double eps = 0.0;
  double t0 = 0.0, t1 = 0.0;
  Gains gains;
  cplx G{}, phi_next{}, phi{};  // state at t1
  double predicted = 0.0;       // η^{1/2}/k^{3/2}
  double quasi_static = 0.0;    // ∫ εt(η/k²)(1+|s|)⁻¹(1+s²)⁻¹ dt over the window
  // G at t = η/k against the quasi-static value εt(η/k³)(1+|s|)⁻¹(1+s²)⁻¹φ(k+1)
  double G_center_ratio = 0.0;
  long steps = 0;
};

// Integrates
//   G'      = −k²(1+(t−η/k)²) G + εt(η/k)(1+|t−η/k|)⁻¹ φ(k+1)
//   φ(k+1)' = εtk G
//   φ(k)'   = ik G
// over t ∈ [max(0, η/k − W), η/k + W], W = window·η/(2k³).
LinkResult three_mode_link(const EchoConfig& cfg, int k);
Gains three_mode_integrate(const EchoConfig& cfg, int k);

struct ChainResult {
  std::vector<LinkResult> links;  // k = k_start − 1 down to 1
  double log_growth = 0.0;        // Σ log gain_down
  double predicted_log_growth = 0.0;
  double quasi_static_log_growth = 0.0;
};

// φ(k_start) = phi_next0 feeds the link k = k_start − 1; each link's φ(k)
// output feeds the next with G and φ(k) restarted at zero.
ChainResult chain_run(const EchoConfig& cfg);

double predicted_gain(double eta, int k);
double regime_time_scale(double eps);  // ε^{−2/3}
double quasi_static_gain(double eta, int k, double eps, double t0, double t1);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
// Least squares y = slope·x + intercept. Needs two distinct x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace shearmhd::echo
