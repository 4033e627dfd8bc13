#pragma once

#include <vector>

namespace shearmhd::experiments {

struct FitResult {
  double exponent = 0.0;
  double prefactor = 0.0;
  double t_lo = 0.0, t_hi = 0.0;  // window as requested
  double r2 = 0.0;
  int n = 0;  // samples used
};

// Least squares of log v against log t over samples with t ∈ [t_lo, t_hi].
// Needs at least 10 samples there, all with t > 0 and v > 0 (FitError).
FitResult fit_power_law(const std::vector<double>& t, const std::vector<double>& v, double t_lo,
                        double t_hi);

}  // namespace shearmhd::experiments
