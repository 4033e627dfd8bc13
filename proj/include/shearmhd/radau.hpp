#pragma once

// Three-stage Radau IIA (order 5, L-stable) for small linear systems
// y' = M(t) y with complex coefficients. Step size is controlled by step
// doubling: one step of h against two of h/2.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "shearmhd/errors.hpp"

namespace shearmhd::radau {

using cplx = std::complex<double>;

template <int n>
using Vec = std::array<cplx, n>;
template <int n>
using Mat = std::array<cplx, n * n>;  // row-major

struct Options {
  double rtol = 1e-8;
  double atol = 1e-14;
  double h0 = 0.0;         // first trial step; 0 picks one from the data
  double max_step = INFINITY;
  long max_steps = 20000000;
};

struct Stats {
  long accepted = 0;
  long rejected = 0;
};

namespace detail {

inline const std::array<double, 3>& nodes() {
  static const std::array<double, 3> c = {(4.0 - std::sqrt(6.0)) / 10.0,
                                          (4.0 + std::sqrt(6.0)) / 10.0, 1.0};
  return c;
}

inline const std::array<double, 9>& coeffs() {
  const double s6 = std::sqrt(6.0);
  static const std::array<double, 9> a = {
      (88.0 - 7.0 * s6) / 360.0,   (296.0 - 169.0 * s6) / 1800.0, (-2.0 + 3.0 * s6) / 225.0,
      (296.0 + 169.0 * s6) / 1800.0, (88.0 + 7.0 * s6) / 360.0,   (-2.0 - 3.0 * s6) / 225.0,
      (16.0 - s6) / 36.0,          (16.0 + s6) / 36.0,            1.0 / 9.0};
  return a;
}

// Gaussian elimination with partial pivoting on a dense m×m system.
template <int m>
bool solve(std::array<cplx, m * m>& a, std::array<cplx, m>& b) {
  for (int c = 0; c < m; ++c) {
    int piv = c;
    for (int r = c + 1; r < m; ++r)
      if (std::abs(a[r * m + c]) > std::abs(a[piv * m + c])) piv = r;
    if (a[piv * m + c] == 0.0) return false;
    if (piv != c) {
      for (int j = 0; j < m; ++j) std::swap(a[c * m + j], a[piv * m + j]);
      std::swap(b[c], b[piv]);
    }
    const cplx inv = 1.0 / a[c * m + c];
    for (int r = c + 1; r < m; ++r) {
      const cplx f = a[r * m + c] * inv;
      if (f == 0.0) continue;
      for (int j = c; j < m; ++j) a[r * m + j] -= f * a[c * m + j];
      b[r] -= f * b[c];
    }
  }
  for (int r = m - 1; r >= 0; --r) {
    cplx s = b[r];
    for (int j = r + 1; j < m; ++j) s -= a[r * m + j] * b[j];
    b[r] = s / a[r * m + r];
  }
  return true;
}

}  // namespace detail

// One Radau IIA step from (t, y) with step h; returns y(t + h).
template <int n, class MatFn>
Vec<n> step(MatFn&& M, double t, const Vec<n>& y, double h) {
  constexpr int m = 3 * n;
  const auto& c = detail::nodes();
  const auto& A = detail::coeffs();
  std::array<Mat<n>, 3> Ms;
  for (int j = 0; j < 3; ++j) Ms[j] = M(t + c[j] * h);
  std::array<cplx, m * m> sys{};
  std::array<cplx, m> rhs{};
  for (int i = 0; i < 3; ++i)
    for (int r = 0; r < n; ++r) {
      rhs[i * n + r] = y[r];
      for (int j = 0; j < 3; ++j)
        for (int q = 0; q < n; ++q) {
          cplx v = -h * A[i * 3 + j] * Ms[j][r * n + q];
          if (i == j && r == q) v += 1.0;
          sys[(i * n + r) * m + j * n + q] = v;
        }
    }
  if (!detail::solve<m>(sys, rhs)) throw IntegrationError("radau: singular stage system", t);
  Vec<n> out;
  for (int r = 0; r < n; ++r) out[r] = rhs[2 * n + r];  // stiffly accurate: y₁ = Y₃
  return out;
}

// Integrates from t0 to t1, landing exactly on every time in `stops`
// (ascending, inside (t0, t1]). `on_step(t, y, is_stop)` is called after each
// accepted step and each half step inside it (is_stop false for half steps).
template <int n, class MatFn, class Callback>
Vec<n> integrate(MatFn&& M, double t0, double t1, Vec<n> y, const Options& opt,
                 const std::vector<double>& stops, Callback&& on_step, Stats* stats = nullptr) {
  Stats st;
  double t = t0;
  double h = opt.h0 > 0.0 ? opt.h0 : std::min({1e-3 * std::max(1.0, t1 - t0), opt.max_step});
  size_t next_stop = 0;
  while (next_stop < stops.size() && stops[next_stop] <= t0) ++next_stop;
  long steps = 0;
  while (t < t1) {
    const double target = next_stop < stops.size() ? std::min(stops[next_stop], t1) : t1;
    double hs = std::min({h, target - t, opt.max_step});
    const bool lands = hs >= target - t;
    if (lands) hs = target - t;
    if (hs < 1e-14 * std::max(1.0, std::abs(t)))
      throw IntegrationError("radau: step size underflow at t = " + std::to_string(t), t);
    if (++steps > opt.max_steps) throw IntegrationError("radau: step budget exhausted", t);

    const Vec<n> big = step<n>(M, t, y, hs);
    const Vec<n> half = step<n>(M, t, y, 0.5 * hs);
    const Vec<n> small = step<n>(M, t + 0.5 * hs, half, 0.5 * hs);
    double err = 0.0;
    for (int r = 0; r < n; ++r) {
      const double sc =
          opt.atol + opt.rtol * std::max({std::abs(y[r]), std::abs(small[r])});
      err = std::max(err, std::abs(small[r] - big[r]) / 31.0 / sc);
    }
    if (!std::isfinite(err)) throw IntegrationError("radau: non-finite state", t);
    const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -1.0 / 6.0), 0.2, 5.0);
    if (err <= 1.0) {
      on_step(t + 0.5 * hs, half, false);
      const double t_new = lands ? target : t + hs;
      y = small;
      t = t_new;
      const bool at_stop = lands && next_stop < stops.size() && target == stops[next_stop];
      if (at_stop) ++next_stop;
      on_step(t, y, at_stop);
      ++st.accepted;
      // a step shortened to hit a stop says little about the next one
      if (!lands || fac < 1.0) h = hs * fac;
      else h = std::max(h, hs * fac);
    } else {
      ++st.rejected;
      h = hs * fac;
    }
  }
  if (stats) *stats = st;
  return y;
}

}  // namespace shearmhd::radau
