#pragma once

#include <vector>

#include "shearmhd/flow_state.hpp"
#include "shearmhd/weight_table.hpp"

namespace shearmhd::nonlinear {

struct DiagnosticsOptions {
  double nu = 1.0;
  double alpha = 1.0;
  int k0 = 4;  // X-seminorm keeps |k| ≥ k0
};

// Sums run over the lattice with ‖f‖² = Σ|f̂|² and ⟨f, g⟩ = Re Σ f̂ conj ĝ.
// Weighted fields below write A for the full multiplier at the sample time.
struct DiagnosticsRecord {
  double t = 0.0;
  double E = 0.0;   // ½(‖AG‖² + ‖Aφ‖²)
  double E0 = 0.0;  // ½‖A⟨∂_y⟩⁻¹v₀ˣ‖²
  double D_gradG = 0.0;  // ‖A∇_tG‖²
  double D_phi = 0.0;    // ‖∂_xΛ_t⁻¹Aφ_≠‖²
  // artificial damping, summed over G and φ
  double D_lambda = 0.0, D_m = 0.0, D_q = 0.0;
  double D_v0 = 0.0;  // ‖A⟨∂_y⟩⁻¹∂_y v₀ˣ‖²
  double D_lambda_v0 = 0.0, D_m_v0 = 0.0, D_q_v0 = 0.0;
  double norm_j = 0.0, norm_b = 0.0, norm_phi = 0.0;
  double gevrey_phi = 0.0;  // (Σ e^{λ(t)(|k|+|η|)^s}|φ̂|²)^{1/2}, i.e. radius λ/2
  double X_phi = 0.0;       // ‖χΛ⁻²φ‖, χ = 1_{|k| ≥ k0}, Λ = ⟨∇⟩
  double L_Gphi = 0.0;
  double NL_phi_to_G = 0.0, NL_G_to_phi = 0.0, NL_phi = 0.0, NL_G = 0.0, NL_v0 = 0.0;

  // Dissipation on the left of the energy identity for the given (ν, α):
  // ν‖A∇_tG‖² + (α²/ν)‖∂_xΛ_t⁻¹Aφ_≠‖² + D_λ + D_m + D_q.
  double dissipation(double nu, double alpha) const;
  double rhs() const { return L_Gphi + NL_phi_to_G + NL_G_to_phi + NL_phi + NL_G; }
  double dissipation_v0(double nu) const { return nu * D_v0 + D_lambda_v0 + D_m_v0 + D_q_v0; }
};

// Per-mode split of the two identities, indexed like field storage:
// e = ½A²(|G|² + |φ|²) and balance = dissipation − (L + NL) at that mode, so
// that Σ e = E and Σ balance = dissipation − rhs. e0 / balance0 do the same
// for E0 on the k = 0 column.
struct ModeBudget {
  std::vector<double> e, balance, e0, balance0;
};

// Norms only (no weights, no inner products): j, b, φ, X.
DiagnosticsRecord norm_diagnostics(const FlowState& s, const DiagnosticsOptions& opt);

// Everything. The table must be at s.t on s's grid. Inner products need ν > 0,
// except at zero state.
DiagnosticsRecord diagnostics(const FlowState& s, const weights::WeightTable& table,
                              const DiagnosticsOptions& opt, ModeBudget* budget = nullptr);

struct IdentityResidual {
  std::vector<double> t;
  std::vector<double> r;   // energy identity for E
  std::vector<double> r0;  // energy identity for E0
  double max_abs = 0.0;
  double max_abs0 = 0.0;
  // IdentityMonitor only: the literal residual over all modes, and how much
  // was set aside because ∂_tA/A jumps inside the difference window
  std::vector<double> r_all, r0_all;
  long masked_modes = 0;           // mode-windows set aside, summed over samples
  double max_masked_fraction = 0;  // max over samples of (masked e) / E
};

// r(t_i) = (E_{i+1} − E_{i−1})/(2h) + dissipation_i − rhs_i at interior
// samples; records must be uniformly spaced. Fewer than 3 throws ContractError.
IdentityResidual energy_identity_residual(const std::vector<DiagnosticsRecord>& rec, double nu,
                                          double alpha);

// Streaming form of the residual for uniformly spaced samples. A central
// difference of E across a time where ∂_tA/A jumps (see
// weights::rate_breakpoints) measures the weights' corner, not the dynamics,
// so r sums the per-mode identity over modes whose window [t−h, t+h] holds no
// breakpoint. Modes with e < 1e−13·E are kept without the check.
class IdentityMonitor {
 public:
  IdentityMonitor(const Grid& g, const weights::WeightParams& p, double nu, double alpha, double h);
  void push(const DiagnosticsRecord& rec, ModeBudget budget);
  const IdentityResidual& result() const { return res_; }

 private:
  Grid grid_;
  weights::WeightParams params_;
  double nu_, alpha_, h_;
  std::vector<DiagnosticsRecord> rec_;
  std::vector<ModeBudget> bud_;
  IdentityResidual res_;
};

}  // namespace shearmhd::nonlinear
