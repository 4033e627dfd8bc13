#pragma once

#include "shearmhd/config.hpp"
#include "shearmhd/flow_state.hpp"

namespace shearmhd::experiments {

// Sizes of the data that the inflation hypotheses compare, with
// ‖f‖_{H⁻²} = ‖⟨∇⟩⁻²f‖ and χ = 1_{|k| ≥ k0}.
struct DataReport {
  double norm = 0.0;           // (‖G‖² + ‖φ‖² + ‖v₀ˣ‖²)^{1/2}, equals ε
  double chi_phi_Hm2 = 0.0;    // ‖χφ‖_{H⁻²}
  double phi_Hm2 = 0.0;        // ‖φ‖_{H⁻²}
  double chi_dxG_Hm2 = 0.0;    // ‖χ∂_xG‖_{H⁻²}
  double concentration = 0.0;  // ‖χφ‖_{H⁻²} / ‖φ‖_{H⁻²}
};

struct InitialData {
  FlowState state;  // t = 0
  DataReport report;
};

// Recipes (both real-valued, mean free, dealiased, scaled to norm ε):
//   single_mode: the pair (±k, ±m) on the selected field(s)
//   random_band: k_min ≤ |k| ≤ k_max, m_min ≤ |m| ≤ m_max, Gaussian coefficients
//                under the envelope e^{−σ(|k|+|η|)^{1/2}}
// mean_flow adds a random v₀ˣ on max(1, m_min) ≤ |m| ≤ m_max under the same envelope.
// G never carries a k = 0 column. cfg must be valid.
InitialData make_initial_data(const RunConfig& cfg);

DataReport report_data(const FlowState& s, int k0);

}  // namespace shearmhd::experiments
