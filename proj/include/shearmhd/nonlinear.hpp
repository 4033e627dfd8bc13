#pragma once

#include <memory>
#include <vector>

#include "shearmhd/flow_state.hpp"
#include "shearmhd/spectral.hpp"

namespace shearmhd::nonlinear {

// Quadratic terms of the moving-frame system, with v = v₀ˣe₁ + ∇_t^⊥Δ_t⁻¹w_≠,
// b = ∇_t^⊥φ and j = Δ_tφ:
//   Nw   = (b·∇_t j − v·∇_t w)_≠
//   Nphi = −v·∇_t φ
//   Nv0  = (b_≠·∇_t bˣ_≠ − v_≠·∇_t vˣ_≠)_0   (k = 0 column)
// w's k = 0 column is taken as −∂_y v₀ˣ.
struct QuadraticTerms {
  SpectralField Nw, Nphi, Nv0;
};

// Peak physical-space speeds seen by the last evaluation.
struct Speeds {
  double vx = 0.0, vy = 0.0, bx = 0.0, by = 0.0;
};

// Reusable evaluator with scratch buffers for one grid. Not thread safe.
class QuadraticEvaluator {
 public:
  explicit QuadraticEvaluator(const Grid& g);
  ~QuadraticEvaluator();
  // w_ne's k = 0 column is ignored.
  QuadraticTerms operator()(const SpectralField& w_ne, const SpectralField& phi,
                            const SpectralField& v0, double t, Speeds* speeds = nullptr);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

QuadraticTerms quadratic_terms(const SpectralField& w_ne, const SpectralField& phi,
                               const SpectralField& v0, double t);

struct PrimitiveRhs {
  SpectralField dw, dphi, dv0;
};

// Full right-hand side in (w, φ, v₀ˣ):
//   ∂_t w  = νΔ_t w + α∂_xΔ_tφ + b·∇_t j − v·∇_t w
//   ∂_t φ  = α∂_xΔ_t⁻¹w − v·∇_t φ
//   ∂_t v₀ˣ = ν∂_y²v₀ˣ + Nv0
// dw's k = 0 column is −∂_y dv0. Non-dealiased input throws ContractError.
PrimitiveRhs nonlinear_rhs(const PrimitiveState& s, double nu, double alpha);

// ---- time stepping ----------------------------------------------------------

struct StepperConfig {
  double dt = 0.01;
  double cfl_safety = 1.0;  // bound on dt·rate, see Stepper::rate
  double nu = 1.0;
  double alpha = 1.0;
  bool nonlinear = true;  // false drops the quadratic terms
  void validate() const;  // throws ConfigError
};

// Lawson RK4 with the exact viscous integrating factor
//   exp(−ν[k²δ + ((η−kt)³ − (η−k(t+δ))³)/(3k)])  (k ≠ 0)
// on G; the remaining linear terms of G and φ are bounded and advanced
// explicitly. v₀ˣ, whose rate νη² is constant, takes the Cox–Matthews ETDRK4
// update on the same stage times. For ν = 0 the state is (w_≠, φ, v₀ˣ) with no
// integrating factor and the scheme is classical RK4.
class Stepper {
 public:
  Stepper(const PrimitiveState& init, const StepperConfig& cfg);
  // ν > 0 only.
  Stepper(const FlowState& init, const StepperConfig& cfg);
  ~Stepper();

  double t() const { return t_; }
  const StepperConfig& config() const { return cfg_; }
  const Grid& grid() const { return phi_.grid(); }
  PrimitiveState primitive() const;
  FlowState good() const;

  // Explicit rate bound over [t, t + dt]:
  //   (max|vˣ| + max|bˣ|)·k_cut + (max|vʸ| + max|bʸ|)·max|η − kτ| + linear rate,
  // linear rate 1 + 2α²/ν in (G, φ) and |α|·k_cut in (w, φ).
  double rate(double dt) const;
  // One step; throws StepRejected (state untouched) when dt·rate > cfl_safety.
  void step(double dt);
  void step() { step(cfg_.dt); }
  // Steps of cfg.dt, the last one shortened to land on t_end.
  void advance_to(double t_end);
  long steps_taken() const { return steps_; }

 private:
  struct Rhs {
    SpectralField a, phi, v0;
  };
  Rhs explicit_rhs(const SpectralField& a, const SpectralField& phi, const SpectralField& v0,
                   double t, Speeds* speeds);
  double linear_rate() const;
  double rate_from(const Speeds& s, double dt) const;

  StepperConfig cfg_;
  bool good_ = true;  // a_ holds G (true) or w_≠ (false)
  SpectralField a_, phi_, v0_;
  double t_ = 0.0;
  long steps_ = 0;
  std::unique_ptr<QuadraticEvaluator> eval_;
};

}  // namespace shearmhd::nonlinear
