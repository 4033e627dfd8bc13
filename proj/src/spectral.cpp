#include "shearmhd/spectral.hpp"

#include <cmath>
#include <sstream>

#include "shearmhd/errors.hpp"

namespace shearmhd {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

std::vector<int> Grid::k_values() const {
  std::vector<int> v;
  for (int k = -n_x / 2; k < n_x / 2; ++k) v.push_back(k);
  return v;
}

std::vector<double> Grid::eta_values() const {
  std::vector<double> v;
  for (int m = -n_y / 2; m < n_y / 2; ++m) v.push_back(m * d_eta());
  return v;
}

Grid make_grid(int n_x, int n_y, double L_y, double dealias_fraction) {
  if (!is_pow2(n_x) || !is_pow2(n_y) || n_x < 8 || n_y < 8) {
    std::ostringstream os;
    os << "grid sizes must be powers of two >= 8, got " << n_x << "x" << n_y;
    throw ConfigError(os.str());
  }
  if (!(L_y > 0.0) || !std::isfinite(L_y)) throw ConfigError("L_y must be positive");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
    throw ConfigError("dealias_fraction must lie in (0, 1]");
  Grid g;
  g.n_x = n_x;
  g.n_y = n_y;
  g.L_y = L_y;
  g.dealias_fraction = dealias_fraction;
  // |k| > f·n_x/2 is removed; the tiny slack keeps f = 1 and f = 2/3 exact.
  g.k_cut = static_cast<int>(std::floor(dealias_fraction * n_x / 2.0 + 1e-9));
  g.m_cut = static_cast<int>(std::floor(dealias_fraction * n_y / 2.0 + 1e-9));
  return g;
}

SpectralField::SpectralField(const Grid& g, std::string label)
    : grid_(g), label_(std::move(label)), c_(static_cast<size_t>(g.size()), cplx{}) {}

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw ConfigError("fields live on different grids");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(cplx a) {
  for (auto& c : c_) c *= a;
  return *this;
}

void SpectralField::axpy(cplx a, const SpectralField& x) {
  require_same_grid(*this, x);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += a * x.c_[i];
}

void SpectralField::set_zero() {
  for (auto& c : c_) c = cplx{};
}

double SpectralField::norm2() const {
  double s = 0.0;
  for (const auto& c : c_) s += std::norm(c);
  return s;
}

double SpectralField::norm() const { return std::sqrt(norm2()); }

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

bool SpectralField::is_dealiased() const {
  for (int ix = 0; ix < grid_.n_x; ++ix)
    for (int iy = 0; iy < grid_.n_y; ++iy)
      if (!grid_.retained(ix, iy) && (*this)(ix, iy) != cplx{}) return false;
  return true;
}

void SpectralField::dealias() {
  for (int ix = 0; ix < grid_.n_x; ++ix)
    for (int iy = 0; iy < grid_.n_y; ++iy)
      if (!grid_.retained(ix, iy)) (*this)(ix, iy) = cplx{};
}

double SpectralField::symmetry_defect() const {
  double d = 0.0;
  for (int ix = 0; ix < grid_.n_x; ++ix)
    for (int iy = 0; iy < grid_.n_y; ++iy)
      d = std::max(d, std::abs(c_[grid_.conj_index(ix, iy)] - std::conj((*this)(ix, iy))));
  return d;
}

void SpectralField::enforce_real() {
  std::vector<cplx> out(c_.size());
  for (int ix = 0; ix < grid_.n_x; ++ix)
    for (int iy = 0; iy < grid_.n_y; ++iy) {
      int i = grid_.index(ix, iy);
      out[i] = 0.5 * (c_[i] + std::conj(c_[grid_.conj_index(ix, iy)]));
    }
  c_.swap(out);
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(cplx s, SpectralField a) { return a *= s; }

cplx moving_symbol(Symbol kind, int k, double eta, double t) {
  const double kk = k;
  const double p = p_t(kk, eta, t);
  const bool origin = (k == 0 && eta == 0.0);
  switch (kind) {
    case Symbol::laplacian_t:
      return {-p, 0.0};
    case Symbol::inv_laplacian_t:
      if (origin) throw DomainError("inv_laplacian_t is singular at (0,0)");
      return {-1.0 / p, 0.0};
    case Symbol::grad_t_x:
      return {0.0, kk};
    case Symbol::grad_t_y:
      return {0.0, eta - kk * t};
    case Symbol::lambda_t:
      return {std::sqrt(p), 0.0};
    case Symbol::inv_lambda_t:
      if (origin) throw DomainError("inv_lambda_t is singular at (0,0)");
      return {1.0 / std::sqrt(p), 0.0};
  }
  return {};
}

SpectralField apply_multiplier(const SpectralField& f, const SymbolFn& symbol, double t) {
  const Grid& g = f.grid();
  SpectralField out(g, f.label());
  for (int ix = 0; ix < g.n_x; ++ix) {
    const int k = g.k_of(ix);
    for (int iy = 0; iy < g.n_y; ++iy) {
      const cplx c = f(ix, iy);
      if (c == cplx{}) continue;
      const double eta = g.eta_of(iy);
      cplx s;
      try {
        s = symbol(k, eta, t);
      } catch (const DomainError& e) {
        std::ostringstream os;
        os << e.what() << " at (k,eta) = (" << k << "," << eta << ")";
        throw DomainError(os.str());
      }
      if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        std::ostringstream os;
        os << "singular symbol meets nonzero coefficient at (k,eta) = (" << k << "," << eta << ")";
        throw DomainError(os.str());
      }
      out(ix, iy) = s * c;
    }
  }
  return out;
}

SpectralField apply_multiplier(const SpectralField& f, Symbol kind, double t) {
  return apply_multiplier(
      f, [kind](int k, double eta, double tt) { return moving_symbol(kind, k, eta, tt); }, t);
}

SpectralField project(const SpectralField& f, Part part) {
  SpectralField out = f;
  const Grid& g = f.grid();
  for (int ix = 0; ix < g.n_x; ++ix) {
    const bool zero_col = (g.k_of(ix) == 0);
    if (zero_col == (part == Part::zero_mode)) continue;
    for (int iy = 0; iy < g.n_y; ++iy) out(ix, iy) = cplx{};
  }
  return out;
}

}  // namespace shearmhd
