#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "shearmhd/errors.hpp"
#include "shearmhd/nonlinear.hpp"

namespace shearmhd::nonlinear {

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("stepper: dt must be positive");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw ConfigError("stepper: cfl_safety outside (0, 1]");
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw ConfigError("stepper: nu must be nonnegative");
  if (!std::isfinite(alpha)) throw ConfigError("stepper: alpha must be finite");
}

namespace {

void check_state(const SpectralField& a, const SpectralField& phi, const SpectralField& v0) {
  require_same_grid(a, phi);
  require_same_grid(a, v0);
  if (!a.is_dealiased() || !phi.is_dealiased() || !v0.is_dealiased())
    throw ContractError("stepper: initial state is not dealiased");
  if (!is_zero_column_only(v0)) throw ContractError("stepper: v0 must live on the k = 0 column");
  if (phi(0, 0) != 0.0) throw ContractError("stepper: phi has a nonzero (0,0) mode");
}

// exp(−ν∫_{t}^{t+δ} p dτ) per storage index; k = 0 gives e^{−νη²δ}
std::vector<double> viscous_factor(const Grid& g, double nu, double t, double delta) {
  std::vector<double> e(static_cast<size_t>(g.size()), 1.0);
  if (nu == 0.0) return e;
  for (int ix = 0; ix < g.n_x; ++ix) {
    const double k = g.k_of(ix);
    for (int iy = 0; iy < g.n_y; ++iy) {
      const double eta = g.eta_of(iy);
      double integral;
      if (k == 0.0) {
        integral = eta * eta * delta;
      } else {
        const double s0 = eta - k * t, s1 = eta - k * (t + delta);
        integral = k * k * delta + (s0 * s0 * s0 - s1 * s1 * s1) / (3.0 * k);
      }
      e[g.index(ix, iy)] = std::exp(-nu * integral);
    }
  }
  return e;
}

// Cox–Matthews ETDRK4 coefficients for the constant rate −νη² of each k = 0
// mode, by the contour mean of Kassam and Trefethen (stable as z → 0).
struct EtdCoeffs {
  std::vector<double> e, e_half, Q, f1, f2, f3;  // indexed by iy
};

EtdCoeffs etd_coeffs(const Grid& g, double nu, double h) {
  const int n = g.n_y;
  EtdCoeffs c;
  for (auto* v : {&c.e, &c.e_half, &c.Q, &c.f1, &c.f2, &c.f3}) v->assign(n, 0.0);
  constexpr int M = 32;
  for (int iy = 0; iy < n; ++iy) {
    const double eta = g.eta_of(iy);
    const double z = -nu * eta * eta * h;
    c.e[iy] = std::exp(z);
    c.e_half[iy] = std::exp(0.5 * z);
    double q = 0, a = 0, b = 0, d = 0;
    for (int j = 1; j <= M; ++j) {
      const cplx r = z + std::polar(1.0, std::numbers::pi * (j - 0.5) / M);
      const cplx er = std::exp(r), er2 = std::exp(0.5 * r), r3 = r * r * r;
      q += ((er2 - 1.0) / r).real();
      a += ((-4.0 - r + er * (4.0 - 3.0 * r + r * r)) / r3).real();
      b += ((2.0 + r + er * (r - 2.0)) / r3).real();
      d += ((-4.0 - 3.0 * r - r * r + er * (4.0 - r)) / r3).real();
    }
    c.Q[iy] = h * q / M;
    c.f1[iy] = h * a / M;
    c.f2[iy] = h * b / M;
    c.f3[iy] = h * d / M;
  }
  return c;
}

void scale(SpectralField& f, const std::vector<double>& e) {
  auto& d = f.data();
  for (size_t i = 0; i < d.size(); ++i) d[i] *= e[i];
}

}  // namespace

Stepper::Stepper(const PrimitiveState& init, const StepperConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  check_state(init.w, init.phi, init.v0);
  good_ = cfg_.nu > 0.0;
  if (good_) {
    FlowState f = to_good_unknowns(init, cfg_.nu, cfg_.alpha);
    a_ = std::move(f.G);
  } else {
    if (init.w(0, 0) != 0.0) throw ContractError("stepper: w has a nonzero (0,0) mode");
    a_ = init.w;
    for (int iy = 0; iy < a_.grid().n_y; ++iy) a_(0, iy) = 0.0;
    a_.set_label("w");
  }
  phi_ = init.phi;
  v0_ = init.v0;
  t_ = init.t;
  eval_ = std::make_unique<QuadraticEvaluator>(phi_.grid());
}

Stepper::Stepper(const FlowState& init, const StepperConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  if (cfg_.nu == 0.0) throw DomainError("stepper: a good-unknown state needs nu > 0");
  check_state(init.G, init.phi, init.v0);
  for (int iy = 0; iy < init.G.grid().n_y; ++iy)
    if (init.G(0, iy) != 0.0) throw ContractError("stepper: G has a k = 0 component");
  a_ = init.G;
  phi_ = init.phi;
  v0_ = init.v0;
  t_ = init.t;
  eval_ = std::make_unique<QuadraticEvaluator>(phi_.grid());
}

Stepper::~Stepper() = default;

PrimitiveState Stepper::primitive() const {
  if (good_) return from_good_unknowns(FlowState{a_, phi_, v0_, t_}, cfg_.nu, cfg_.alpha);
  PrimitiveState s{vorticity_of_mean_flow(v0_), phi_, v0_, t_};
  s.w += a_;
  return s;
}

FlowState Stepper::good() const {
  if (good_) return FlowState{a_, phi_, v0_, t_};
  return to_good_unknowns(primitive(), cfg_.nu, cfg_.alpha);
}

Stepper::Rhs Stepper::explicit_rhs(const SpectralField& a, const SpectralField& phi,
                                   const SpectralField& v0, double t, Speeds* speeds) {
  const Grid& g = phi.grid();
  const double nu = cfg_.nu, al = cfg_.alpha;
  Rhs r{SpectralField(g), SpectralField(g), SpectralField(g)};
  QuadraticTerms q;
  if (cfg_.nonlinear) {
    if (good_) {
      // w_≠ = (−pG − iαkφ)/ν
      SpectralField w(g);
      for (int ix = 0; ix < g.n_x; ++ix) {
        const int k = g.k_of(ix);
        if (k == 0) continue;
        for (int iy = 0; iy < g.n_y; ++iy)
          w(ix, iy) = (-p_t(k, g.eta_of(iy), t) * a(ix, iy) - cplx(0.0, al * k) * phi(ix, iy)) / nu;
      }
      q = (*eval_)(w, phi, v0, t, speeds);
    } else {
      q = (*eval_)(a, phi, v0, t, speeds);
    }
  } else if (speeds) {
    *speeds = Speeds{};
  }

  for (int ix = 0; ix < g.n_x; ++ix) {
    const int k = g.k_of(ix);
    const double kk = double(k) * k;
    for (int iy = 0; iy < g.n_y; ++iy) {
      const cplx nw = cfg_.nonlinear ? q.Nw(ix, iy) : cplx{};
      const cplx nphi = cfg_.nonlinear ? q.Nphi(ix, iy) : cplx{};
      if (k == 0) {
        r.phi(ix, iy) = nphi;
        if (cfg_.nonlinear) r.v0(ix, iy) = q.Nv0(ix, iy);
        continue;
      }
      const double eta = g.eta_of(iy);
      const double s = eta - k * t;
      const double p = kk + s * s;
      const cplx G = a(ix, iy), f = phi(ix, iy);
      if (good_) {
        const double a2k2 = al * al * kk;
        r.a(ix, iy) = (2.0 * k * s / p + a2k2 / (nu * p)) * G +
                      cplx(0.0, al * a2k2 * k / (nu * p * p)) * f -
                      (nu * nw + cplx(0.0, al * k) * nphi) / p;
        r.phi(ix, iy) = cplx(0.0, al * k / nu) * G - a2k2 / (nu * p) * f + nphi;
      } else {
        r.a(ix, iy) = -cplx(0.0, al * k * p) * f + nw;
        r.phi(ix, iy) = -cplx(0.0, al * k / p) * G + nphi;
      }
    }
  }
  r.phi(0, 0) = 0.0;
  r.v0(0, 0) = 0.0;
  return r;
}

double Stepper::linear_rate() const {
  const Grid& g = phi_.grid();
  if (good_) return 1.0 + 2.0 * cfg_.alpha * cfg_.alpha / cfg_.nu;
  return std::abs(cfg_.alpha) * g.k_cut;
}

double Stepper::rate_from(const Speeds& s, double dt) const {
  const Grid& g = phi_.grid();
  const double tau = std::max(std::abs(t_), std::abs(t_ + dt));
  const double ky = g.m_cut * g.d_eta() + g.k_cut * tau;
  return (s.vx + s.bx) * g.k_cut + (s.vy + s.by) * ky + linear_rate();
}

double Stepper::rate(double dt) const {
  if (!cfg_.nonlinear) return rate_from(Speeds{}, dt);
  Speeds s;
  const_cast<Stepper*>(this)->explicit_rhs(a_, phi_, v0_, t_, &s);
  return rate_from(s, dt);
}

void Stepper::step(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ContractError("stepper: step must be positive");
  const Grid& g = phi_.grid();
  Speeds sp;
  Rhs k1 = explicit_rhs(a_, phi_, v0_, t_, &sp);
  const double r = rate_from(sp, h);
  if (h * r > cfg_.cfl_safety) {
    std::ostringstream os;
    os << "stepper: CFL violated at t = " << t_ << " (dt·rate = " << h * r << ")";
    throw StepRejected(os.str(), cfg_.cfl_safety / r);
  }
  const auto E1 = viscous_factor(g, cfg_.nu, t_, 0.5 * h);
  const auto E2 = viscous_factor(g, cfg_.nu, t_ + 0.5 * h, 0.5 * h);
  // G carries the factor, φ none; v0 is advanced by ETDRK4 below, which keeps
  // the slaved balance v0 ≈ Nv0/(νη²) of stiff mean-flow modes
  auto apply = [&](Rhs& u, const std::vector<double>& e) {
    if (good_) scale(u.a, e);
  };
  const EtdCoeffs C = etd_coeffs(g, cfg_.nu, h);
  auto v0_stage = [&](SpectralField& out, const SpectralField& base, const SpectralField& n1,
                      double c1, const SpectralField* n2, double c2) {
    for (int iy = 0; iy < g.n_y; ++iy) {
      cplx f = c1 * n1(0, iy);
      if (n2) f += c2 * (*n2)(0, iy);
      out(0, iy) = C.e_half[iy] * base(0, iy) + C.Q[iy] * f;
    }
  };
  auto combo = [&](const Rhs& base, double c, const Rhs& k) {
    Rhs u = base;
    u.a.axpy(c, k.a);
    u.phi.axpy(c, k.phi);
    u.v0.axpy(c, k.v0);
    return u;
  };
  const Rhs u0{a_, phi_, v0_};

  Rhs u2 = combo(u0, 0.5 * h, k1);
  apply(u2, E1);
  v0_stage(u2.v0, v0_, k1.v0, 1.0, nullptr, 0.0);
  Rhs k2 = explicit_rhs(u2.a, u2.phi, u2.v0, t_ + 0.5 * h, nullptr);

  Rhs e1u0 = u0;
  apply(e1u0, E1);
  Rhs u3 = combo(e1u0, 0.5 * h, k2);
  v0_stage(u3.v0, v0_, k2.v0, 1.0, nullptr, 0.0);
  Rhs k3 = explicit_rhs(u3.a, u3.phi, u3.v0, t_ + 0.5 * h, nullptr);

  Rhs u4 = combo(e1u0, h, k3);
  apply(u4, E2);
  v0_stage(u4.v0, u2.v0, k3.v0, 2.0, &k1.v0, -1.0);
  Rhs k4 = explicit_rhs(u4.a, u4.phi, u4.v0, t_ + h, nullptr);

  // u1 = E1E2(u0 + h/6 k1) + h/3 E2(k2 + k3) + h/6 k4
  Rhs un = combo(u0, h / 6.0, k1);
  apply(un, E1);
  un = combo(un, h / 3.0, k2);
  un = combo(un, h / 3.0, k3);
  apply(un, E2);
  un = combo(un, h / 6.0, k4);
  for (int iy = 0; iy < g.n_y; ++iy)
    un.v0(0, iy) = C.e[iy] * v0_(0, iy) + C.f1[iy] * k1.v0(0, iy) +
                   2.0 * C.f2[iy] * (k2.v0(0, iy) + k3.v0(0, iy)) + C.f3[iy] * k4.v0(0, iy);

  a_ = std::move(un.a);
  phi_ = std::move(un.phi);
  v0_ = std::move(un.v0);
  a_.set_label(good_ ? "G" : "w");
  phi_.set_label("phi");
  v0_.set_label("v0");
  t_ += h;
  ++steps_;
}

void Stepper::advance_to(double t_end) {
  if (t_end < t_) throw ContractError("stepper: target time is in the past");
  const double tol = 1e-12 * std::max(1.0, std::abs(t_end));
  while (t_end - t_ > tol) {
    const double h = std::min(cfg_.dt, t_end - t_);
    step(h);
  }
  t_ = t_end;
}

}  // namespace shearmhd::nonlinear
