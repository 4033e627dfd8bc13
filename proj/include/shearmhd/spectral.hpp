#pragma once

#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace shearmhd {

using cplx = std::complex<double>;

// Truncated Fourier lattice for T_x (period 2π) × T_y (period L_y).
// Coefficients are stored in FFT order: row index ix ↔ k, column iy ↔ m,
// with η = m·(2π/L_y).
struct Grid {
  int n_x = 0;
  int n_y = 0;
  double L_y = 2.0 * std::numbers::pi;
  double dealias_fraction = 2.0 / 3.0;
  int k_cut = 0;  // largest retained |k|
  int m_cut = 0;  // largest retained |m|

  double d_eta() const { return 2.0 * std::numbers::pi / L_y; }
  int size() const { return n_x * n_y; }
  int k_of(int ix) const { return ix < n_x / 2 ? ix : ix - n_x; }
  int m_of(int iy) const { return iy < n_y / 2 ? iy : iy - n_y; }
  double eta_of(int iy) const { return m_of(iy) * d_eta(); }
  int ix_of(int k) const { return k >= 0 ? k : k + n_x; }
  int iy_of(int m) const { return m >= 0 ? m : m + n_y; }
  int index(int ix, int iy) const { return ix * n_y + iy; }
  int conj_index(int ix, int iy) const {
    return ((n_x - ix) % n_x) * n_y + (n_y - iy) % n_y;
  }
  bool contains(int k, int m) const {
    return k >= -n_x / 2 && k < n_x / 2 && m >= -n_y / 2 && m < n_y / 2;
  }
  bool retained(int ix, int iy) const {
    int k = k_of(ix), m = m_of(iy);
    return std::abs(k) <= k_cut && std::abs(m) <= m_cut;
  }
  std::vector<int> k_values() const;       // ascending, [−n_x/2, n_x/2)
  std::vector<double> eta_values() const;  // ascending

  bool operator==(const Grid& o) const {
    return n_x == o.n_x && n_y == o.n_y && L_y == o.L_y &&
           dealias_fraction == o.dealias_fraction;
  }
};

Grid make_grid(int n_x, int n_y, double L_y = 2.0 * std::numbers::pi,
               double dealias_fraction = 2.0 / 3.0);

class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid& g, std::string label = {});

  const Grid& grid() const { return grid_; }
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }

  cplx& operator()(int ix, int iy) { return c_[grid_.index(ix, iy)]; }
  const cplx& operator()(int ix, int iy) const { return c_[grid_.index(ix, iy)]; }
  // Access by wavenumber (k, m) with η = m·dη.
  cplx& mode(int k, int m) { return c_[grid_.index(grid_.ix_of(k), grid_.iy_of(m))]; }
  const cplx& mode(int k, int m) const {
    return c_[grid_.index(grid_.ix_of(k), grid_.iy_of(m))];
  }

  std::vector<cplx>& data() { return c_; }
  const std::vector<cplx>& data() const { return c_; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(cplx a);
  void axpy(cplx a, const SpectralField& x);  // this += a·x
  void set_zero();

  double norm2() const;  // Σ |c|²  (= mean of |f|² over the torus)
  double norm() const;
  double max_abs() const;
  bool is_dealiased() const;
  void dealias();
  // max |c(−k,−η) − conj c(k,η)|
  double symmetry_defect() const;
  void enforce_real();

 private:
  Grid grid_{};
  std::string label_;
  std::vector<cplx> c_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(cplx s, SpectralField a);

void require_same_grid(const SpectralField& a, const SpectralField& b);

// Moving-frame symbols, Δ_t = ∂_x² + (∂_y − t∂_x)², ∇_t = (∂_x, ∂_y − t∂_x).
enum class Symbol { laplacian_t, inv_laplacian_t, grad_t_x, grad_t_y, lambda_t, inv_lambda_t };

inline double p_t(double k, double eta, double t) {
  double s = eta - k * t;
  return k * k + s * s;
}

cplx moving_symbol(Symbol kind, int k, double eta, double t);

using SymbolFn = std::function<cplx(int k, double eta, double t)>;

SpectralField apply_multiplier(const SpectralField& f, const SymbolFn& symbol, double t);
SpectralField apply_multiplier(const SpectralField& f, Symbol kind, double t);

enum class Part { zero_mode, nonzero_modes };
SpectralField project(const SpectralField& f, Part part);

}  // namespace shearmhd
