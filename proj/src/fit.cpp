#include "shearmhd/fit.hpp"

#include <cmath>

#include "shearmhd/echo.hpp"
#include "shearmhd/errors.hpp"

namespace shearmhd::experiments {

FitResult fit_power_law(const std::vector<double>& t, const std::vector<double>& v, double t_lo,
                        double t_hi) {
  if (t.size() != v.size()) throw ContractError("fit_power_law: size mismatch");
  if (!(t_lo < t_hi)) throw FitError("fit_power_law: empty window");
  if (t.empty() || t_lo < t.front() - 1e-9 * std::abs(t.front()) ||
      t_hi > t.back() + 1e-9 * std::abs(t.back()))
    throw FitError("fit_power_law: window outside the sampled range");
  std::vector<double> x, y;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(t[i] > 0.0)) throw FitError("fit_power_law: nonpositive time in window");
    if (!(v[i] > 0.0) || !std::isfinite(v[i]))
      throw FitError("fit_power_law: nonpositive or non-finite value in window");
    x.push_back(std::log(t[i]));
    y.push_back(std::log(v[i]));
  }
  if (x.size() < 10) throw FitError("fit_power_law: fewer than 10 samples in window");
  const auto line = echo::fit_line(x, y);
  FitResult r;
  r.exponent = line.slope;
  r.prefactor = std::exp(line.intercept);
  r.t_lo = t_lo;
  r.t_hi = t_hi;
  r.r2 = line.r2;
  r.n = int(x.size());
  return r;
}

}  // namespace shearmhd::experiments
