#pragma once

#include "shearmhd/spectral.hpp"

namespace shearmhd {

// State in good unknowns. v0 holds v₀ˣ(y) on the k = 0 column; G has an
// identically zero k = 0 column.
struct FlowState {
  SpectralField G;
  SpectralField phi;
  SpectralField v0;
  double t = 0.0;
};

// State in the primitive unknowns (vorticity w, potential φ, mean flow v₀ˣ).
// w's k = 0 column equals −∂_y v₀ˣ.
struct PrimitiveState {
  SpectralField w;
  SpectralField phi;
  SpectralField v0;
  double t = 0.0;
};

// G = ν ψ_≠ + α ∂_x Δ_t⁻¹ φ_≠ with ψ_≠ = Δ_t⁻¹ P_≠ w, i.e. per mode
// Ĝ = −(ν ŵ + iαk φ̂)/p.
FlowState to_good_unknowns(const PrimitiveState& s, double nu, double alpha);
// Inverse map; ν = 0 throws DomainError.
PrimitiveState from_good_unknowns(const FlowState& s, double nu, double alpha);

// ŵ₀(η) = −iη v̂₀(η) and its inverse (the η = 0 mean flow is carried through
// v0 unchanged and has no vorticity).
SpectralField vorticity_of_mean_flow(const SpectralField& v0);

// A field supported on the k = 0 column only.
bool is_zero_column_only(const SpectralField& f);

}  // namespace shearmhd
