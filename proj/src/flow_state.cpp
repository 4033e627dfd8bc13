#include "shearmhd/flow_state.hpp"

#include "shearmhd/errors.hpp"

namespace shearmhd {

FlowState to_good_unknowns(const PrimitiveState& s, double nu, double alpha) {
  require_same_grid(s.w, s.phi);
  require_same_grid(s.w, s.v0);
  const Grid& g = s.w.grid();
  if (std::abs(s.w.mode(0, 0)) != 0.0 || std::abs(s.phi.mode(0, 0)) != 0.0)
    throw ContractError("to_good_unknowns: (0,0) modes of w and phi must vanish");
  FlowState out{SpectralField(g, "G"), s.phi, s.v0, s.t};
  for (int ix = 0; ix < g.n_x; ++ix) {
    const int k = g.k_of(ix);
    if (k == 0) continue;
    for (int iy = 0; iy < g.n_y; ++iy) {
      const double p = p_t(k, g.eta_of(iy), s.t);
      out.G(ix, iy) = -(nu * s.w(ix, iy) + cplx(0.0, alpha * k) * s.phi(ix, iy)) / p;
    }
  }
  return out;
}

PrimitiveState from_good_unknowns(const FlowState& s, double nu, double alpha) {
  if (nu == 0.0) throw DomainError("from_good_unknowns: G does not determine w when nu = 0");
  require_same_grid(s.G, s.phi);
  const Grid& g = s.G.grid();
  PrimitiveState out{vorticity_of_mean_flow(s.v0), s.phi, s.v0, s.t};
  out.w.set_label("w");
  for (int ix = 0; ix < g.n_x; ++ix) {
    const int k = g.k_of(ix);
    if (k == 0) continue;
    for (int iy = 0; iy < g.n_y; ++iy) {
      const double p = p_t(k, g.eta_of(iy), s.t);
      out.w(ix, iy) = (-p * s.G(ix, iy) - cplx(0.0, alpha * k) * s.phi(ix, iy)) / nu;
    }
  }
  return out;
}

SpectralField vorticity_of_mean_flow(const SpectralField& v0) {
  const Grid& g = v0.grid();
  SpectralField w(g, "w");
  for (int iy = 0; iy < g.n_y; ++iy) w(0, iy) = cplx(0.0, -g.eta_of(iy)) * v0(0, iy);
  return w;
}

bool is_zero_column_only(const SpectralField& f) {
  const Grid& g = f.grid();
  for (int ix = 1; ix < g.n_x; ++ix)
    for (int iy = 0; iy < g.n_y; ++iy)
      if (f(ix, iy) != 0.0) return false;
  return true;
}

}  // namespace shearmhd
