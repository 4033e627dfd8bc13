#include "shearmhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "shearmhd/errors.hpp"
#include "shearmhd/nonlinear.hpp"
#include "shearmhd/transform.hpp"

namespace shearmhd::nonlinear {

double DiagnosticsRecord::dissipation(double nu, double alpha) const {
  return nu * D_gradG + alpha * alpha / nu * D_phi + D_lambda + D_m + D_q;
}

namespace {

const cplx I(0.0, 1.0);

// Real physical values of a real field.
std::vector<double> phys(const SpectralField& f) {
  auto c = to_physical(f);
  std::vector<double> r(c.size());
  for (size_t i = 0; i < c.size(); ++i) r[i] = c[i].real();
  return r;
}

// Spectral coefficients of Σ_n a_n·b_n (dealiased).
SpectralField sum_of_products(const Grid& g,
                              std::initializer_list<std::pair<const std::vector<double>*,
                                                              const std::vector<double>*>> terms,
                              double sign_last = 1.0) {
  std::vector<cplx> acc(static_cast<size_t>(g.size()));
  size_t n = 0;
  for (auto [a, b] : terms) {
    const double sgn = (++n == terms.size()) ? sign_last : 1.0;
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += sgn * (*a)[i] * (*b)[i];
  }
  return to_spectral(acc, g);
}

template <class F>
SpectralField map_modes(const SpectralField& f, F fn) {
  const Grid& g = f.grid();
  SpectralField out(g);
  for (int ix = 0; ix < g.n_x; ++ix)
    for (int iy = 0; iy < g.n_y; ++iy) out(ix, iy) = fn(g.k_of(ix), g.eta_of(iy), f(ix, iy));
  return out;
}

void fill_norms(DiagnosticsRecord& r, const FlowState& s, int k0) {
  const Grid& g = s.phi.grid();
  double j2 = 0, b2 = 0, f2 = 0, x2 = 0;
  for (int ix = 0; ix < g.n_x; ++ix) {
    const int k = g.k_of(ix);
    for (int iy = 0; iy < g.n_y; ++iy) {
      const double eta = g.eta_of(iy);
      const double a = std::norm(s.phi(ix, iy));
      const double p = p_t(k, eta, s.t);
      j2 += p * p * a;
      b2 += p * a;
      f2 += a;
      if (std::abs(k) >= k0) {
        const double br2 = 1.0 + double(k) * k + eta * eta;
        x2 += a / (br2 * br2);
      }
    }
  }
  r.norm_j = std::sqrt(j2);
  r.norm_b = std::sqrt(b2);
  r.norm_phi = std::sqrt(f2);
  r.X_phi = std::sqrt(x2);
}

}  // namespace

DiagnosticsRecord norm_diagnostics(const FlowState& s, const DiagnosticsOptions& opt) {
  DiagnosticsRecord r;
  r.t = s.t;
  fill_norms(r, s, opt.k0);
  return r;
}

DiagnosticsRecord diagnostics(const FlowState& s, const weights::WeightTable& tab,
                              const DiagnosticsOptions& opt, ModeBudget* budget) {
  const Grid& g = s.phi.grid();
  require_same_grid(s.G, s.phi);
  require_same_grid(s.G, s.v0);
  if (!(tab.grid() == g)) throw ConfigError("diagnostics: weight table grid mismatch");
  if (std::abs(tab.t() - s.t) > 1e-12 * std::max(1.0, std::abs(s.t)))
    throw ContractError("diagnostics: weight table time differs from the state time");

  DiagnosticsRecord r;
  r.t = s.t;
  fill_norms(r, s, opt.k0);
  const double nu = opt.nu, al = opt.alpha;
  const auto& P = tab.params();
  const double lam_rate = tab.lambda_rate();

  // per-mode weights
  const size_t n = static_cast<size_t>(g.size());
  std::vector<double> A2(n);
  ModeBudget local;
  ModeBudget& B = budget ? *budget : local;
  for (auto* v : {&B.e, &B.balance, &B.e0, &B.balance0}) v->assign(n, 0.0);
  double gev2 = 0.0;
  for (int ix = 0; ix < g.n_x; ++ix) {
    const int k = g.k_of(ix);
    for (int iy = 0; iy < g.n_y; ++iy) {
      const int i = g.index(ix, iy);
      const double eta = g.eta_of(iy);
      const double gw = weights::gevrey_weight(k, eta, P.s);
      A2[i] = std::exp(2.0 * tab.log_A[i]);
      const double dm = tab.dm_ratio[i];
      const double dq = tab.Jt_over_J[i] * tab.dq_ratio[i];
      const double dl = -lam_rate * gw;
      const double gf = std::norm(s.G(ix, iy)) + std::norm(s.phi(ix, iy));
      r.E += 0.5 * A2[i] * gf;
      r.D_m += dm * A2[i] * gf;
      r.D_q += dq * A2[i] * gf;
      r.D_lambda += dl * A2[i] * gf;
      B.e[i] = 0.5 * A2[i] * gf;
      B.balance[i] = (dm + dq + dl) * A2[i] * gf;
      gev2 += std::exp(tab.lambda() * gw) * std::norm(s.phi(ix, iy));
      if (k == 0) {
        const double a0 = A2[i] / (1.0 + eta * eta);
        const double v2 = std::norm(s.v0(ix, iy));
        r.E0 += 0.5 * a0 * v2;
        r.D_v0 += a0 * eta * eta * v2;
        r.D_m_v0 += dm * a0 * v2;
        r.D_q_v0 += dq * a0 * v2;
        r.D_lambda_v0 += dl * a0 * v2;
        B.e0[i] = 0.5 * a0 * v2;
        B.balance0[i] = (nu * eta * eta + dm + dq + dl) * a0 * v2;
        continue;
      }
      const double p = p_t(k, eta, s.t);
      const double sh = eta - k * s.t;
      const double kk = double(k) * k;
      const cplx G = s.G(ix, iy), f = s.phi(ix, iy);
      r.D_gradG += p * A2[i] * std::norm(G);
      r.D_phi += kk / p * A2[i] * std::norm(f);
      if (nu > 0.0) {
        const double a2k2 = al * al * kk;
        const double L = A2[i] * ((2.0 * k * sh + a2k2 / nu) / p * std::norm(G) +
                                  std::real(cplx(0.0, al * a2k2 * k / (nu * p * p)) * f * std::conj(G) +
                                            cplx(0.0, al * k / nu) * G * std::conj(f)));
        r.L_Gphi += L;
        B.balance[i] += nu * p * A2[i] * std::norm(G) + a2k2 / (nu * p) * A2[i] * std::norm(f) - L;
      }
    }
  }
  r.gevrey_phi = std::sqrt(gev2);
  if (nu == 0.0) return r;

  // fields
  SpectralField w = vorticity_of_mean_flow(s.v0);
  for (int ix = 0; ix < g.n_x; ++ix) {
    const int k = g.k_of(ix);
    if (k == 0) continue;
    for (int iy = 0; iy < g.n_y; ++iy)
      w(ix, iy) = (-p_t(k, g.eta_of(iy), s.t) * s.G(ix, iy) - cplx(0.0, al * k) * s.phi(ix, iy)) / nu;
  }
  const double t = s.t;
  auto dx = [&](const SpectralField& f) {
    return map_modes(f, [](int k, double, cplx c) { return I * double(k) * c; });
  };
  auto dyt = [&](const SpectralField& f) {
    return map_modes(f, [t](int k, double eta, cplx c) { return I * (eta - k * t) * c; });
  };
  auto inv_lap_ne = [&](const SpectralField& f) {
    return map_modes(f, [t](int k, double eta, cplx c) {
      return k == 0 ? cplx{} : -c / p_t(k, eta, t);
    });
  };
  SpectralField psi = inv_lap_ne(w);
  SpectralField vx_s = dyt(psi);
  vx_s *= -1.0;
  vx_s += s.v0;
  const auto vx = phys(vx_s), vy = phys(dx(psi));
  const auto phx = phys(dx(s.phi)), phy = phys(dyt(s.phi));  // bʸ, −bˣ
  SpectralField j = map_modes(s.phi, [t](int k, double eta, cplx c) { return -p_t(k, eta, t) * c; });
  const auto jx = phys(dx(j)), jy = phys(dyt(j));
  const auto wx = phys(dx(w)), wy = phys(dyt(w));
  const auto Gx = phys(dx(s.G)), Gy = phys(dyt(s.G));
  SpectralField chi = dx(inv_lap_ne(s.phi));  // ∂_xΔ_t⁻¹φ_≠
  const auto ux = phys(dyt(chi)), uy = phys(dx(chi));  // u = (−ux, uy)
  const auto v0p = phys(s.v0);
  SpectralField phi_ne = project(s.phi, Part::nonzero_modes);
  const auto phnx = phys(dx(phi_ne));
  std::vector<double> bx(phy.size());
  for (size_t i = 0; i < bx.size(); ++i) bx[i] = -phy[i];

  // b·∇_t j, v·∇_t w, v·∇_t φ, ∇^⊥G·∇φ, u·∇φ, v₀ˣ∂_xφ_≠
  SpectralField P1 = sum_of_products(g, {{&bx, &jx}, {&phx, &jy}});
  SpectralField P2 = sum_of_products(g, {{&vx, &wx}, {&vy, &wy}});
  SpectralField P3 = sum_of_products(g, {{&vx, &phx}, {&vy, &phy}});
  // ∇^⊥G·∇φ = −∂_y^tG ∂_xφ + ∂_xG ∂_y^tφ
  SpectralField P4 = sum_of_products(g, {{&Gx, &phy}, {&Gy, &phx}}, -1.0);
  // u = ∇_t^⊥χ = (−∂_y^tχ, ∂_xχ)
  SpectralField P5 = sum_of_products(g, {{&uy, &phy}, {&ux, &phx}}, -1.0);
  SpectralField P6 = sum_of_products(g, {{&v0p, &phnx}});

  // (b_≠·∇_t bˣ_≠ − v_≠·∇_t vˣ_≠)_0 in advective form
  SpectralField bxne = map_modes(s.phi, [t](int k, double eta, cplx c) {
    return k == 0 ? cplx{} : -I * (eta - k * t) * c;
  });
  SpectralField vxne = project(vx_s, Part::nonzero_modes);
  const auto bxx = phys(dx(bxne)), bxy = phys(dyt(bxne));
  const auto vxx = phys(dx(vxne)), vxy = phys(dyt(vxne));
  // b_≠ = (bˣ_≠, bʸ), v_≠ = (vˣ_≠, vʸ)
  const auto bxn = phys(bxne), vxn = phys(vxne);
  std::vector<cplx> fl(n);
  for (size_t i = 0; i < n; ++i)
    fl[i] = bxn[i] * bxx[i] + phx[i] * bxy[i] - vxn[i] * vxx[i] - vy[i] * vxy[i];
  SpectralField F = to_spectral(fl, g);

  for (int ix = 0; ix < g.n_x; ++ix) {
    const int k = g.k_of(ix);
    for (int iy = 0; iy < g.n_y; ++iy) {
      const int i = g.index(ix, iy);
      const double eta = g.eta_of(iy);
      const cplx G = s.G(ix, iy), f = s.phi(ix, iy);
      const double gp = -A2[i] / nu * std::real(P4(ix, iy) * std::conj(f));
      double ph = al / nu * A2[i] * std::real(P5(ix, iy) * std::conj(f));
      if (k == 0) {
        const double v = A2[i] / (1.0 + eta * eta) * std::real(F(ix, iy) * std::conj(s.v0(ix, iy)));
        r.NL_v0 += v;
        B.balance0[i] -= v;
        r.NL_G_to_phi += gp;
        r.NL_phi += ph;
        B.balance[i] -= gp + ph;
        continue;
      }
      ph -= A2[i] * std::real(P6(ix, iy) * std::conj(f));
      const double p = p_t(k, eta, t);
      const double pg = A2[i] * std::real(-nu * P1(ix, iy) / p * std::conj(G));
      const double ng =
          A2[i] * std::real((nu * P2(ix, iy) + I * (al * k) * P3(ix, iy)) / p * std::conj(G));
      r.NL_G_to_phi += gp;
      r.NL_phi += ph;
      r.NL_phi_to_G += pg;
      r.NL_G += ng;
      B.balance[i] -= gp + ph + pg + ng;
    }
  }
  return r;
}

IdentityResidual energy_identity_residual(const std::vector<DiagnosticsRecord>& rec, double nu,
                                          double alpha) {
  if (rec.size() < 3) throw ContractError("energy_identity_residual: need at least 3 samples");
  if (!(nu > 0.0)) throw DomainError("energy_identity_residual: the identity needs nu > 0");
  const double h = rec[1].t - rec[0].t;
  for (size_t i = 1; i < rec.size(); ++i)
    if (std::abs(rec[i].t - rec[i - 1].t - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw ContractError("energy_identity_residual: samples are not uniformly spaced");
  IdentityResidual out;
  for (size_t i = 1; i + 1 < rec.size(); ++i) {
    const auto& c = rec[i];
    const double r = (rec[i + 1].E - rec[i - 1].E) / (2.0 * h) + c.dissipation(nu, alpha) - c.rhs();
    const double r0 = (rec[i + 1].E0 - rec[i - 1].E0) / (2.0 * h) + c.dissipation_v0(nu) - c.NL_v0;
    out.t.push_back(c.t);
    out.r.push_back(r);
    out.r0.push_back(r0);
    out.max_abs = std::max(out.max_abs, std::abs(r));
    out.max_abs0 = std::max(out.max_abs0, std::abs(r0));
  }
  return out;
}

IdentityMonitor::IdentityMonitor(const Grid& g, const weights::WeightParams& p, double nu,
                                 double alpha, double h)
    : grid_(g), params_(p), nu_(nu), alpha_(alpha), h_(h) {
  if (!(nu > 0.0)) throw DomainError("IdentityMonitor: the identity needs nu > 0");
  if (!(h > 0.0)) throw ContractError("IdentityMonitor: h must be positive");
}

void IdentityMonitor::push(const DiagnosticsRecord& rec, ModeBudget budget) {
  if (!rec_.empty() && std::abs(rec.t - rec_.back().t - h_) > 1e-9 * std::max(1.0, h_))
    throw ContractError("IdentityMonitor: samples are not uniformly spaced");
  rec_.push_back(rec);
  bud_.push_back(std::move(budget));
  if (rec_.size() > 3) {
    rec_.erase(rec_.begin());
    bud_.erase(bud_.begin());
  }
  if (rec_.size() < 3) return;

  const auto &lo = bud_[0], &mid = bud_[1], &hi = bud_[2];
  const double tc = rec_[1].t;
  const double Emax = std::max({rec_[0].E, rec_[1].E, rec_[2].E});
  const double E0max = std::max({rec_[0].E0, rec_[1].E0, rec_[2].E0});
  double r = 0.0, r0 = 0.0, r_all = 0.0, r0_all = 0.0, masked_e = 0.0;
  for (int ix = 0; ix < grid_.n_x; ++ix) {
    const int k = grid_.k_of(ix);
    for (int iy = 0; iy < grid_.n_y; ++iy) {
      const int i = grid_.index(ix, iy);
      const double ri = (hi.e[i] - lo.e[i]) / (2.0 * h_) + mid.balance[i];
      const double r0i = (hi.e0[i] - lo.e0[i]) / (2.0 * h_) + mid.balance0[i];
      r_all += ri;
      r0_all += r0i;
      const double ei = std::max({lo.e[i], mid.e[i], hi.e[i]});
      const double e0i = std::max({lo.e0[i], mid.e0[i], hi.e0[i]});
      const bool check = ei >= 1e-13 * Emax || (k == 0 && e0i >= 1e-13 * E0max);
      if (check && !weights::rate_breakpoints(tc - h_, tc + h_, k, grid_.eta_of(iy), params_).empty()) {
        ++res_.masked_modes;
        masked_e += mid.e[i];
        continue;
      }
      r += ri;
      r0 += r0i;
    }
  }
  res_.t.push_back(tc);
  res_.r.push_back(r);
  res_.r0.push_back(r0);
  res_.r_all.push_back(r_all);
  res_.r0_all.push_back(r0_all);
  res_.max_abs = std::max(res_.max_abs, std::abs(r));
  res_.max_abs0 = std::max(res_.max_abs0, std::abs(r0));
  if (rec_[1].E > 0.0) res_.max_masked_fraction = std::max(res_.max_masked_fraction, masked_e / rec_[1].E);
}

}  // namespace shearmhd::nonlinear
