#pragma once

#include <vector>

#include "shearmhd/flow_state.hpp"
#include "shearmhd/radau.hpp"
#include "shearmhd/spectral.hpp"
#include "shearmhd/weights.hpp"

namespace shearmhd::linear {

struct LinearParams {
  double nu = 1.0;
  double alpha = 1.0;
  void validate() const;  // ν > 0
};

struct ModeState {
  int k = 1;
  double eta = 0.0;
  cplx G{};
  cplx phi{};
  double t = 0.0;
};

struct ModeDerivative {
  cplx dG{};
  cplx dphi{};
};

// Per-mode linearized system in (G, φ), p = k² + (η − kt)²:
//   dG = [−νp + 2k(η−kt)/p + α²k²/(νp)] G + i α³k³/(νp²) φ
//   dφ = (iαk/ν) G − α²k²/(νp) φ
ModeDerivative linear_rhs_mode(const ModeState& s, double nu, double alpha);
radau::Mat<2> mode_matrix(int k, double eta, double t, double nu, double alpha);

struct ModeSample {
  double t;
  cplx G;
  cplx phi;
};

// Samples are the initial state followed by (half step, step end) pairs, so
// every even index closes a step whose midpoint is the preceding sample.
// Requested output times are step ends.
struct ModeTrajectory {
  int k = 1;
  double eta = 0.0;
  LinearParams params;
  std::vector<ModeSample> samples;
  long accepted = 0;
  long rejected = 0;
};

// Adaptive implicit integration (see radau.hpp) to relative tolerance rtol;
// absolute floor rtol·1e−6·|(G, φ)(t0)|. `outputs` are extra step ends.
ModeTrajectory integrate_mode(const ModeState& init, double t_end, double rtol,
                              const LinearParams& lp = {},
                              const std::vector<double>& outputs = {});

struct EnergySample {
  double t;
  double E;          // ½ A²(|G|² + |φ|²)
  double diss_G;     // p A²|G|²
  double diss_phi;   // (k²/p) A²|φ|²
  double dlog_mL;    // ∂_t m_L / m_L
  double L_Gphi;     // linear cross term at this mode
  double L_bound;    // ½ diss_G + ½ diss_phi + ½ dlog_mL A²|φ|²
  double lindec;     // ½ d/dt(|AG|²+|Aφ|²) + ½ diss_G + ½ diss_phi + dlog_mL A²|(G,φ)|²
};

// A = m_L(t0)/m_L(t), i.e. m_L⁻¹ normalized to 1 at the first sample.
struct EnergyReport {
  std::vector<EnergySample> samples;
  double E0 = 0.0;
  double max_increase = 0.0;      // max_i (E_i − E_{i−1}) / E0, ≤ 0 when monotone
  double max_budget_excess = 0.0; // max_t (E(t) + ½∫(diss_G + diss_phi) − E0) / E0
  double max_lindec = 0.0;        // max_t of the lindec residual (absolute)
  double max_L_excess = 0.0;      // max_t (|L_Gphi| − L_bound) (absolute)
};

EnergyReport mode_energy_report(const ModeTrajectory& traj, const weights::WeightParams& params);

// Every nonzero-k mode integrated independently; v0 decays by the heat kernel
// and φ's k = 0 column is constant. Modes run on `threads` workers.
FlowState linear_field_solution(const FlowState& init, double t_end, double rtol,
                                const LinearParams& lp = {}, int threads = 1);

}  // namespace shearmhd::linear
