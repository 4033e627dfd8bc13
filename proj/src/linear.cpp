#include "shearmhd/linear.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "shearmhd/errors.hpp"

namespace shearmhd::linear {

void LinearParams::validate() const {
  if (!(nu > 0.0)) throw ConfigError("linear: nu must be positive");
  if (!std::isfinite(alpha)) throw ConfigError("linear: alpha must be finite");
}

radau::Mat<2> mode_matrix(int k, double eta, double t, double nu, double alpha) {
  if (k == 0) throw DomainError("linear_rhs_mode: k = 0 has no linear coupling");
  const double kk = k;
  const double s = eta - kk * t;
  const double p = kk * kk + s * s;
  const double a2k2 = alpha * alpha * kk * kk;
  return {cplx(-nu * p + 2.0 * kk * s / p + a2k2 / (nu * p), 0.0),
          cplx(0.0, alpha * a2k2 * kk / (nu * p * p)), cplx(0.0, alpha * kk / nu),
          cplx(-a2k2 / (nu * p), 0.0)};
}

ModeDerivative linear_rhs_mode(const ModeState& st, double nu, double alpha) {
  const auto M = mode_matrix(st.k, st.eta, st.t, nu, alpha);
  return {M[0] * st.G + M[1] * st.phi, M[2] * st.G + M[3] * st.phi};
}

ModeTrajectory integrate_mode(const ModeState& init, double t_end, double rtol,
                              const LinearParams& lp, const std::vector<double>& outputs) {
  lp.validate();
  if (init.k == 0) throw DomainError("integrate_mode: k = 0 has no linear coupling");
  if (!(t_end > init.t)) throw ContractError("integrate_mode: t_end must exceed the start time");
  if (!(rtol > 1e-12 && rtol < 1e-3)) throw ContractError("integrate_mode: rtol outside (1e-12, 1e-3)");
  if (!std::isfinite(std::abs(init.G)) || !std::isfinite(std::abs(init.phi)))
    throw ContractError("integrate_mode: non-finite initial state");

  ModeTrajectory tr;
  tr.k = init.k;
  tr.eta = init.eta;
  tr.params = lp;
  tr.samples.push_back({init.t, init.G, init.phi});
  std::vector<double> stops;
  for (double t : outputs)
    if (t > init.t && t < t_end) stops.push_back(t);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  const double scale = std::max(std::abs(init.G), std::abs(init.phi));
  if (scale == 0.0) {
    stops.push_back(t_end);
    for (double t : stops) {
      tr.samples.push_back({0.5 * (tr.samples.back().t + t), 0.0, 0.0});
      tr.samples.push_back({t, 0.0, 0.0});
    }
    return tr;
  }
  radau::Options opt;
  opt.rtol = rtol;
  opt.atol = rtol * 1e-6 * scale;
  // first step on the scale of the fastest local rate
  const auto M0 = mode_matrix(init.k, init.eta, init.t, lp.nu, lp.alpha);
  double rate = 0.0;
  for (auto v : M0) rate = std::max(rate, std::abs(v));
  opt.h0 = std::min(0.1 * std::pow(rtol, 1.0 / 6.0) / std::max(rate, 1e-3), t_end - init.t);

  auto M = [&](double t) { return mode_matrix(init.k, init.eta, t, lp.nu, lp.alpha); };
  radau::Stats stats;
  radau::integrate<2>(
      M, init.t, t_end, radau::Vec<2>{init.G, init.phi}, opt, stops,
      [&](double t, const radau::Vec<2>& y, bool) { tr.samples.push_back({t, y[0], y[1]}); },
      &stats);
  tr.accepted = stats.accepted;
  tr.rejected = stats.rejected;
  return tr;
}

EnergyReport mode_energy_report(const ModeTrajectory& traj, const weights::WeightParams& params) {
  if (traj.samples.empty()) throw ContractError("mode_energy_report: empty trajectory");
  EnergyReport rep;
  const int k = traj.k;
  const double eta = traj.eta;
  const double log_ref = weights::log_mL(traj.samples.front().t, k, eta, params);
  for (const auto& s : traj.samples) {
    EnergySample e{};
    e.t = s.t;
    const double A2 = std::exp(-2.0 * (weights::log_mL(s.t, k, eta, params) - log_ref));
    const double g2 = std::norm(s.G), f2 = std::norm(s.phi);
    const double p = p_t(k, eta, s.t);
    const double kk = double(k) * k;
    e.E = 0.5 * A2 * (g2 + f2);
    e.diss_G = p * A2 * g2;
    e.diss_phi = kk / p * A2 * f2;
    e.dlog_mL = weights::dlog_mL(s.t, k, eta);
    // ⟨(2∂_x∂_y^tΔ_t⁻¹ + ∂_x²Δ_t⁻¹)AG, AG⟩ − ⟨(∂_x³Δ_t⁻² + ∂_x)Aφ, AG⟩
    const double diag = (2.0 * k * (eta - k * s.t) + kk) / p;
    const cplx off(0.0, -kk * k / (p * p) + k);
    e.L_Gphi = diag * A2 * g2 - A2 * std::real(off * s.phi * std::conj(s.G));
    e.L_bound = 0.5 * e.diss_G + 0.5 * e.diss_phi + 0.5 * e.dlog_mL * A2 * f2;
    const auto d = linear_rhs_mode({k, eta, s.G, s.phi, s.t}, traj.params.nu, traj.params.alpha);
    const double ddt = A2 * std::real(std::conj(s.G) * d.dG + std::conj(s.phi) * d.dphi) -
                       e.dlog_mL * A2 * (g2 + f2);
    e.lindec = ddt + 0.5 * e.diss_G + 0.5 * e.diss_phi + e.dlog_mL * A2 * (g2 + f2);
    rep.samples.push_back(e);
  }
  const auto& S = rep.samples;
  rep.E0 = S.front().E;
  const double norm = rep.E0 > 0.0 ? rep.E0 : 1.0;
  rep.max_increase = S.size() > 1 ? -INFINITY : 0.0;
  rep.max_lindec = -INFINITY;
  rep.max_L_excess = -INFINITY;
  rep.max_budget_excess = 0.0;
  double integral = 0.0;
  auto D = [&](size_t i) { return S[i].diss_G + S[i].diss_phi; };
  for (size_t i = 0; i < S.size(); ++i) {
    rep.max_lindec = std::max(rep.max_lindec, S[i].lindec);
    rep.max_L_excess = std::max(rep.max_L_excess, std::abs(S[i].L_Gphi) - S[i].L_bound);
    if (i > 0) rep.max_increase = std::max(rep.max_increase, (S[i].E - S[i - 1].E) / norm);
    // Simpson over each (start, half, end) triple
    if (i >= 2 && i % 2 == 0) {
      const double h = S[i].t - S[i - 2].t;
      integral += h / 6.0 * (D(i - 2) + 4.0 * D(i - 1) + D(i));
      rep.max_budget_excess =
          std::max(rep.max_budget_excess, (S[i].E + 0.5 * integral - rep.E0) / norm);
    }
  }
  return rep;
}

FlowState linear_field_solution(const FlowState& init, double t_end, double rtol,
                                const LinearParams& lp, int threads) {
  lp.validate();
  const Grid& g = init.G.grid();
  require_same_grid(init.G, init.phi);
  require_same_grid(init.G, init.v0);
  for (int iy = 0; iy < g.n_y; ++iy)
    if (init.G(0, iy) != 0.0) throw ContractError("linear_field_solution: G has a k = 0 component");
  if (!is_zero_column_only(init.v0))
    throw ContractError("linear_field_solution: v0 must live on the k = 0 column");

  FlowState out{SpectralField(g, init.G.label()), init.phi, SpectralField(g, init.v0.label()), t_end};
  const double dt = t_end - init.t;
  for (int iy = 0; iy < g.n_y; ++iy) {
    const double eta = g.eta_of(iy);
    out.v0(0, iy) = init.v0(0, iy) * std::exp(-lp.nu * eta * eta * dt);
  }
  if (dt <= 0.0) {
    if (dt < 0.0) throw ContractError("linear_field_solution: t_end before the state time");
    out.G = init.G;
    return out;
  }

  auto run_row = [&](int ix) {
    const int k = g.k_of(ix);
    for (int iy = 0; iy < g.n_y; ++iy) {
      const cplx G0 = init.G(ix, iy), P0 = init.phi(ix, iy);
      if (G0 == 0.0 && P0 == 0.0) {
        out.G(ix, iy) = 0.0;
        out.phi(ix, iy) = 0.0;
        continue;
      }
      const double eta = g.eta_of(iy);
      try {
        auto tr = integrate_mode({k, eta, G0, P0, init.t}, t_end, rtol, lp);
        out.G(ix, iy) = tr.samples.back().G;
        out.phi(ix, iy) = tr.samples.back().phi;
      } catch (const IntegrationError& e) {
        std::ostringstream os;
        os << e.what() << " (mode k = " << k << ", eta = " << eta << ")";
        throw IntegrationError(os.str(), e.t_reached());
      }
    }
  };

  threads = std::max(1, threads);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    auto body = [&, w] {
      try {
        for (int ix = w; ix < g.n_x; ix += threads)
          if (g.k_of(ix) != 0) run_row(ix);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    };
    if (threads == 1) body();
    else pool.emplace_back(body);
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace shearmhd::linear
