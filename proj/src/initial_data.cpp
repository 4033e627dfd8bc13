#include "shearmhd/initial_data.hpp"

#include <cmath>
#include <random>

#include "shearmhd/errors.hpp"

namespace shearmhd::experiments {

namespace {

double envelope(int k, double eta, double sigma) {
  return std::exp(-sigma * std::sqrt(std::abs(k) + std::abs(eta)));
}

// ‖⟨∇⟩⁻²f‖ over |k| ≥ k_min, optionally with ∂_x applied
double hm2(const SpectralField& f, int k_min, bool dx) {
  const Grid& g = f.grid();
  double s = 0.0;
  for (int ix = 0; ix < g.n_x; ++ix) {
    const int k = g.k_of(ix);
    if (std::abs(k) < k_min) continue;
    for (int iy = 0; iy < g.n_y; ++iy) {
      const double eta = g.eta_of(iy);
      const double w = 1.0 + k * k + eta * eta;
      const double d = dx ? double(k) * k : 1.0;
      s += d * std::norm(f(ix, iy)) / (w * w);
    }
  }
  return std::sqrt(s);
}

}  // namespace

DataReport report_data(const FlowState& s, int k0) {
  DataReport r;
  r.norm = std::sqrt(s.G.norm2() + s.phi.norm2() + s.v0.norm2());
  r.chi_phi_Hm2 = hm2(s.phi, k0, false);
  r.phi_Hm2 = hm2(s.phi, 0, false);
  r.chi_dxG_Hm2 = hm2(s.G, k0, true);
  r.concentration = r.phi_Hm2 > 0.0 ? r.chi_phi_Hm2 / r.phi_Hm2 : 0.0;
  return r;
}

InitialData make_initial_data(const RunConfig& cfg) {
  const Grid g = make_grid(cfg.nx, cfg.ny, cfg.ly, cfg.dealias);
  FlowState s{SpectralField(g, "G"), SpectralField(g, "phi"), SpectralField(g, "v0"), 0.0};
  const bool on_phi = cfg.data_field != DataField::G;
  const bool on_G = cfg.data_field != DataField::phi;

  if (cfg.recipe == Recipe::single_mode) {
    const int k = cfg.mode_k, m = cfg.mode_m;
    if (on_phi) {
      s.phi.mode(k, m) = 1.0;
      s.phi.mode(-k, -m) = 1.0;
    }
    if (on_G && k != 0) {
      s.G.mode(k, m) = cplx(0.0, 1.0);
      s.G.mode(-k, -m) = cplx(0.0, -1.0);
    }
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal;
    auto fill = [&](SpectralField& f, int k_lo, int k_hi) {
      for (int k = -k_hi; k <= k_hi; ++k) {
        if (std::abs(k) < k_lo) continue;
        for (int m = -cfg.band_m_max; m <= cfg.band_m_max; ++m) {
          if ((k == 0 && m == 0) || std::abs(m) < cfg.band_m_min) continue;
          const double a = envelope(k, m * g.d_eta(), cfg.gevrey_sigma);
          const double re = normal(rng), im = normal(rng);
          f.mode(k, m) = a * cplx(re, im);
        }
      }
      f.enforce_real();
    };
    if (on_phi) fill(s.phi, cfg.band_k_min, cfg.band_k_max);
    if (on_G) fill(s.G, std::max(1, cfg.band_k_min), cfg.band_k_max);
  }
  if (cfg.mean_flow && cfg.band_m_max >= 1) {
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> normal;
    for (int m = -cfg.band_m_max; m <= cfg.band_m_max; ++m) {
      if (m == 0 || std::abs(m) < cfg.band_m_min) continue;
      const double a = envelope(0, m * g.d_eta(), cfg.gevrey_sigma);
      const double re = normal(rng), im = normal(rng);
      s.v0.mode(0, m) = a * cplx(re, im);
    }
    s.v0.enforce_real();
  }

  const double n = std::sqrt(s.G.norm2() + s.phi.norm2() + s.v0.norm2());
  if (!(n > 0.0)) throw ConfigError("initial data: recipe produced a zero field");
  for (SpectralField* f : {&s.G, &s.phi, &s.v0}) {
    *f *= cplx(cfg.eps / n, 0.0);
    f->dealias();
  }
  return {s, report_data(s, cfg.k0)};
}

}  // namespace shearmhd::experiments
