#pragma once

#include <vector>

#include "shearmhd/spectral.hpp"
#include "shearmhd/weights.hpp"

namespace shearmhd::weights {

// Cached log-multipliers for every lattice point of a grid at one time.
// All weights are even under (k,η) → (−k,−η), so only one half of the
// lattice is evaluated and mirrored.
class WeightTable {
 public:
  WeightTable(const Grid& g, const WeightParams& p, double t, int threads = 1);
  // Same values at t_new ≥ previous.t(), reusing the previous log m.
  WeightTable(const WeightTable& previous, double t_new, int threads = 1);

  double t() const { return t_; }
  const Grid& grid() const { return grid_; }
  const WeightParams& params() const { return params_; }
  double lambda() const { return lambda_; }
  double lambda_rate() const { return lambda_rate_; }

  // indexed like SpectralField storage
  std::vector<double> log_mL, log_m, log_q, log_J, log_Jt, log_A, log_At;
  std::vector<double> dmL_ratio;  // ∂_t m_L / m_L
  std::vector<double> dm_ratio;   // ∂_t m / m
  std::vector<double> dq_ratio;   // ∂_t q / q
  std::vector<double> Jt_over_J;  // J̃ / J

 private:
  void fill(const WeightTable* previous, int threads);

  Grid grid_;
  WeightParams params_;
  double t_ = 0.0;
  double lambda_ = 0.0;
  double lambda_rate_ = 0.0;
};

}  // namespace shearmhd::weights
