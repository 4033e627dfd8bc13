#include "shearmhd/echo.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "shearmhd/errors.hpp"
#include "shearmhd/radau.hpp"

namespace shearmhd::echo {

namespace {

int cube_root_floor(double eta) {
  int k = static_cast<int>(std::cbrt(eta));
  while (double(k + 1) * (k + 1) * (k + 1) <= eta) ++k;
  while (k > 0 && double(k) * k * k > eta) --k;
  return k;
}

double window_half_width(const EchoConfig& c, int k) {
  return c.window * c.eta / (2.0 * double(k) * k * k);
}

}  // namespace

void EchoConfig::validate() const {
  if (!(eta >= 8.0) || !std::isfinite(eta)) throw ConfigError("echo: eta must be at least 8");
  const int kmax = static_cast<int>(std::floor(cube_root_floor(eta) * k_safety));
  if (k_start < 0 || k_start > kmax) {
    std::ostringstream os;
    os << "echo: k_start must lie in [1, " << kmax << "] (0 picks floor(eta^(1/3)))";
    throw ConfigError(os.str());
  }
  if (!(eps >= 0.0 && eps < 1.0)) throw ConfigError("echo: eps must lie in [0, 1)");
  if (eps * eta > eps_eta_guard) throw ConfigError("echo: eps*eta exceeds the overflow guard");
  if (coupling == Coupling::regime_matched && !(delta > 0.0 && std::isfinite(delta)))
    throw ConfigError("echo: delta must be positive");
  if (!(window >= 4.0) || !std::isfinite(window)) throw ConfigError("echo: window must be at least 4");
  if (!(rtol > 1e-13 && rtol < 1e-3)) throw ConfigError("echo: rtol outside (1e-13, 1e-3)");
  for (cplx z : {G0, phi_next0, phi0})
    if (!std::isfinite(std::abs(z))) throw ConfigError("echo: non-finite initial amplitude");
}

int EchoConfig::resolved_k_start() const { return k_start > 0 ? k_start : cube_root_floor(eta); }

double EchoConfig::coupling_for(int k) const {
  if (coupling == Coupling::fixed) return eps;
  return delta * std::pow(double(k) / eta, 1.5);
}

double predicted_gain(double eta, int k) {
  if (!(eta > 0.0)) throw DomainError("predicted_gain: eta must be positive");
  if (k < 1) throw DomainError("predicted_gain: k must be at least 1");
  return std::sqrt(eta) / std::pow(double(k), 1.5);
}

double regime_time_scale(double eps) {
  if (!(eps > 0.0)) throw DomainError("regime_time_scale: eps must be positive");
  return std::pow(eps, -2.0 / 3.0);
}

double quasi_static_gain(double eta, int k, double eps, double t0, double t1) {
  if (k < 1) throw DomainError("quasi_static_gain: k must be at least 1");
  if (!(t1 > t0)) throw ContractError("quasi_static_gain: empty window");
  const double c = eta / k;
  auto f = [&](double t) {
    const double s = std::abs(t - c);
    return eps * t * eta / (double(k) * k) / ((1.0 + s) * (1.0 + s * s));
  };
  using boost::math::quadrature::gauss_kronrod;
  double I = 0.0;
  if (t0 < c) I += gauss_kronrod<double, 31>::integrate(f, t0, std::min(c, t1), 20, 1e-12);
  if (t1 > c) I += gauss_kronrod<double, 31>::integrate(f, std::max(c, t0), t1, 20, 1e-12);
  return I;
}

LinkResult three_mode_link(const EchoConfig& cfg, int k) {
  cfg.validate();
  if (k < 1) throw DomainError("three_mode_integrate: k must be at least 1");
  LinkResult r;
  r.k = k;
  r.eps = cfg.coupling_for(k);
  const double c = cfg.eta / k;
  const double W = window_half_width(cfg, k);
  r.t0 = std::max(0.0, c - W);
  r.t1 = c + W;
  r.predicted = predicted_gain(cfg.eta, k);
  r.quasi_static = quasi_static_gain(cfg.eta, k, r.eps, r.t0, r.t1);

  const double eps = r.eps, eta = cfg.eta, kk = k;
  auto M = [&](double t) {
    const double s = t - c;
    radau::Mat<3> m{};
    m[0] = -kk * kk * (1.0 + s * s);
    m[1] = eps * t * (eta / kk) / (1.0 + std::abs(s));
    m[3] = eps * t * kk;
    m[6] = cplx(0.0, kk);
    return m;
  };
  const double scale = std::max({std::abs(cfg.G0), std::abs(cfg.phi_next0), std::abs(cfg.phi0)});
  radau::Vec<3> y{cfg.G0, cfg.phi_next0, cfg.phi0};
  cplx G_center{}, phin_center{};
  if (scale > 0.0) {
    radau::Options opt;
    opt.rtol = cfg.rtol;
    opt.atol = cfg.rtol * 1e-6 * scale;
    radau::Stats st;
    // land on the kink of |t − η/k|
    const std::vector<double> stops{c};
    y = radau::integrate<3>(
        M, r.t0, r.t1, y, opt, stops,
        [&](double, const radau::Vec<3>& v, bool at_stop) {
          if (at_stop) {
            G_center = v[0];
            phin_center = v[1];
          }
        },
        &st);
    r.steps = st.accepted;
  }
  r.G = y[0];
  r.phi_next = y[1];
  r.phi = y[2];
  const double in = std::abs(cfg.phi_next0);
  if (in > 0.0) {
    r.gains.gain_next = std::abs(y[1]) / in;
    r.gains.gain_down = std::abs(y[2]) / in;
  }
  // εt(η/k³) at s = 0
  const double qs = eps * c * eta / (kk * kk * kk) * std::abs(phin_center);
  if (qs > 0.0) r.G_center_ratio = std::abs(G_center) / qs;
  return r;
}

Gains three_mode_integrate(const EchoConfig& cfg, int k) { return three_mode_link(cfg, k).gains; }

ChainResult chain_run(const EchoConfig& cfg) {
  cfg.validate();
  const int K = cfg.resolved_k_start();
  if (K < 2) throw ConfigError("chain_run: k_start must be at least 2");
  ChainResult out;
  EchoConfig link = cfg;
  link.k_start = 0;
  link.G0 = 0.0;
  link.phi0 = 0.0;
  for (int k = K - 1; k >= 1; --k) {
    LinkResult r = three_mode_link(link, k);
    if (!(r.gains.gain_down > 0.0))
      throw IntegrationError("chain_run: link produced no downward transfer", r.t1);
    out.log_growth += std::log(r.gains.gain_down);
    out.predicted_log_growth += std::log(r.predicted);
    out.quasi_static_log_growth += std::log(r.quasi_static);
    link.phi_next0 = r.phi;
    out.links.push_back(r);
  }
  return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ContractError("fit_line: size mismatch");
  const size_t n = x.size();
  if (n < 2) throw FitError("fit_line: need at least two points");
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw FitError("fit_line: non-finite data");
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw FitError("fit_line: x has no spread");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : sxy * sxy / (sxx * syy);
  return f;
}

}  // namespace shearmhd::echo
