#include <algorithm>
#include <cmath>

#include "shearmhd/errors.hpp"
#include "shearmhd/nonlinear.hpp"
#include "shearmhd/transform.hpp"

namespace shearmhd::nonlinear {

struct QuadraticEvaluator::Impl {
  Grid g;
  std::shared_ptr<const Transformer> tr;
  // spectral inputs, paired for real transforms
  std::vector<cplx> vx, vy, bx, by, jx, jy, wx, wy;
  // physical pairs
  std::vector<cplx> pv, pb, pj, pw, out, flux;

  explicit Impl(const Grid& grid) : g(grid), tr(transformer_for(grid)) {
    const size_t n = static_cast<size_t>(g.size());
    for (auto* v : {&vx, &vy, &bx, &by, &jx, &jy, &wx, &wy, &pv, &pb, &pj, &pw, &out, &flux})
      v->assign(n, cplx{});
  }
};

QuadraticEvaluator::QuadraticEvaluator(const Grid& g) : impl_(std::make_unique<Impl>(g)) {}
QuadraticEvaluator::~QuadraticEvaluator() = default;

QuadraticTerms QuadraticEvaluator::operator()(const SpectralField& w_ne, const SpectralField& phi,
                                              const SpectralField& v0, double t, Speeds* speeds) {
  Impl& m = *impl_;
  const Grid& g = m.g;
  if (!(w_ne.grid() == g) || !(phi.grid() == g) || !(v0.grid() == g))
    throw ConfigError("quadratic_terms: grid mismatch");
  if (!w_ne.is_dealiased() || !phi.is_dealiased() || !v0.is_dealiased())
    throw ContractError("quadratic_terms: input is not dealiased");

  const cplx I(0.0, 1.0);
  for (int ix = 0; ix < g.n_x; ++ix) {
    const int k = g.k_of(ix);
    for (int iy = 0; iy < g.n_y; ++iy) {
      const int i = g.index(ix, iy);
      const double eta = g.eta_of(iy);
      const double s = eta - k * t;
      const double p = double(k) * k + s * s;
      const cplx f = phi(ix, iy);
      cplx psi{}, w{};
      if (k != 0) {
        w = w_ne(ix, iy);
        psi = -w / p;
      } else {
        w = -I * eta * v0(ix, iy);
      }
      m.vx[i] = (k == 0 ? v0(ix, iy) : cplx{}) - I * s * psi;
      m.vy[i] = I * double(k) * psi;
      m.bx[i] = -I * s * f;
      m.by[i] = I * double(k) * f;
      const cplx j = -p * f;
      m.jx[i] = I * double(k) * j;
      m.jy[i] = I * s * j;
      m.wx[i] = I * double(k) * w;
      m.wy[i] = I * s * w;
    }
  }
  m.tr->pair_to_physical(m.vx.data(), m.vy.data(), m.pv.data());
  m.tr->pair_to_physical(m.bx.data(), m.by.data(), m.pb.data());
  m.tr->pair_to_physical(m.jx.data(), m.jy.data(), m.pj.data());
  m.tr->pair_to_physical(m.wx.data(), m.wy.data(), m.pw.data());

  Speeds sp;
  const size_t n = m.pv.size();
  for (size_t i = 0; i < n; ++i) {
    const double vx = m.pv[i].real(), vy = m.pv[i].imag();
    const double bx = m.pb[i].real(), by = m.pb[i].imag();
    const double jx = m.pj[i].real(), jy = m.pj[i].imag();
    const double wx = m.pw[i].real(), wy = m.pw[i].imag();
    const double nw = bx * jx + by * jy - vx * wx - vy * wy;
    // ∂_xφ = bʸ, ∂_y^tφ = −bˣ
    const double nphi = -vx * by + vy * bx;
    m.out[i] = cplx(nw, nphi);
    // (b·∇_t bˣ − v·∇_t vˣ)_0 = ∂_y(bʸbˣ − vʸvˣ)_0, since b, v are divergence
    // free and bʸ, vʸ have no k = 0 part
    m.flux[i] = by * bx - vy * vx;
    sp.vx = std::max(sp.vx, std::abs(vx));
    sp.vy = std::max(sp.vy, std::abs(vy));
    sp.bx = std::max(sp.bx, std::abs(bx));
    sp.by = std::max(sp.by, std::abs(by));
  }
  if (speeds) *speeds = sp;

  QuadraticTerms q{SpectralField(g, "Nw"), SpectralField(g, "Nphi"), SpectralField(g, "Nv0")};
  m.tr->pair_to_spectral(m.out.data(), q.Nw.data().data(), q.Nphi.data().data(), true);
  m.tr->to_spectral(m.flux.data(), m.flux.data(), true);
  for (int iy = 0; iy < g.n_y; ++iy) {
    q.Nw(0, iy) = 0.0;
    q.Nv0(0, iy) = I * g.eta_of(iy) * m.flux[g.index(0, iy)];
  }
  q.Nphi(0, 0) = 0.0;
  q.Nv0(0, 0) = 0.0;
  return q;
}

QuadraticTerms quadratic_terms(const SpectralField& w_ne, const SpectralField& phi,
                               const SpectralField& v0, double t) {
  QuadraticEvaluator ev(phi.grid());
  return ev(w_ne, phi, v0, t);
}

PrimitiveRhs nonlinear_rhs(const PrimitiveState& s, double nu, double alpha) {
  const Grid& g = s.w.grid();
  auto q = quadratic_terms(s.w, s.phi, s.v0, s.t);
  PrimitiveRhs r{SpectralField(g, "dw"), SpectralField(g, "dphi"), SpectralField(g, "dv0")};
  for (int ix = 0; ix < g.n_x; ++ix) {
    const int k = g.k_of(ix);
    for (int iy = 0; iy < g.n_y; ++iy) {
      const double eta = g.eta_of(iy);
      if (k == 0) {
        r.dv0(ix, iy) = -nu * eta * eta * s.v0(ix, iy) + q.Nv0(ix, iy);
        r.dw(ix, iy) = cplx(0.0, -eta) * r.dv0(ix, iy);
        r.dphi(ix, iy) = q.Nphi(ix, iy);
        continue;
      }
      const double p = p_t(k, eta, s.t);
      const cplx w = s.w(ix, iy), f = s.phi(ix, iy);
      r.dw(ix, iy) = -nu * p * w - cplx(0.0, alpha * k * p) * f + q.Nw(ix, iy);
      r.dphi(ix, iy) = -cplx(0.0, alpha * k / p) * w + q.Nphi(ix, iy);
    }
  }
  return r;
}

}  // namespace shearmhd::nonlinear
