#pragma once

// Randomized sweeps over the weight multipliers, shared by the unit tests and
// the acceptance binary. All sweeps are seeded and deterministic.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "shearmhd/weights.hpp"

namespace audits {

namespace w = shearmhd::weights;

struct MBoundsResult {
  double min_log_m = INFINITY;
  double max_log_m = -INFINITY;
  double worst_monotone_drop = 0.0;  // max(log m(t1) − log m(t2)) over t1 < t2
  double max_ceiling_excess = -INFINITY;  // max(log m − log_m_ceiling(k))
  long samples = 0;
};

// log m on random (t, k, η); each sample also checks monotonicity against a
// second, later time for the same mode.
inline MBoundsResult m_bounds_sweep(long n, uint64_t seed, const w::WeightParams& p = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(0.0, 100.0), ue(-128.0, 128.0);
  std::uniform_int_distribution<int> uk(-32, 32);
  MBoundsResult r;
  for (long i = 0; i < n; i += 2) {
    double t1 = ut(rng), t2 = ut(rng);
    if (t1 > t2) std::swap(t1, t2);
    const int k = uk(rng);
    const double eta = ue(rng);
    const double a = w::log_m(t1, k, eta, p);
    const double b = a + w::log_m_increment(t1, t2, k, eta, p);
    r.min_log_m = std::min({r.min_log_m, a, b});
    r.max_log_m = std::max({r.max_log_m, a, b});
    r.worst_monotone_drop = std::max(r.worst_monotone_drop, a - b);
    r.max_ceiling_excess = std::max(r.max_ceiling_excess, b - w::log_m_ceiling(k, p));
    r.samples += 2;
  }
  return r;
}

// Breakpoints of q for (k', η): t⁻, η/k', t⁺ and the I endpoints, for every
// admissible k'. Returns the largest jump of log q across any of them.
inline double q_continuity_defect(double eta, const w::WeightParams& p, int* count = nullptr) {
  const int K = w::cube_root_floor(eta);
  double worst = 0.0;
  int n = 0;
  for (int k = 1; k <= K; ++k) {
    auto L = w::resonance_layout(k, eta);
    const double pts[] = {L->t_minus, L->center, L->t_plus, L->I.lo, L->I.hi, 2.0 * eta};
    for (int mode = 1; mode <= K + 1; ++mode) {
      for (double bp : pts) {
        const double h = 1e-10;
        const double jump =
            std::abs(w::log_q(bp + h, mode, eta, p) - w::log_q(bp - h, mode, eta, p));
        worst = std::max(worst, jump);
        ++n;
      }
    }
  }
  if (count) *count = n;
  return worst;
}

struct Range {
  double lo = INFINITY, hi = -INFINITY;
  long samples = 0;
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    ++samples;
  }
};

// True when t lies in Ĩ_{k',η} for some k' ≠ k (only k = 1 and k' = 2 meet).
inline bool in_other_tilde(double t, int k, double eta) {
  const int K = w::cube_root_floor(eta);
  for (int j = std::max(1, k - 1); j <= std::min(K, k + 1); ++j) {
    if (j == k) continue;
    auto L = w::resonance_layout(j, eta);
    if (L && L->It.contains(t)) return true;
  }
  return false;
}

struct ConcentrationResult {
  Range single;    // t in Ĩ_{k,η} and in no other Ĩ
  Range overlap;   // t in Ĩ_{1,η} ∩ Ĩ_{2,η}
};

// dq_ratio(t)·(1 + |t − η/k|) for t ∈ Ĩ_{k,η}, split by whether another
// resonance interval also covers t.
inline ConcentrationResult dq_concentration_sweep(long n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  w::WeightParams p;
  ConcentrationResult r;
  while (r.single.samples < n) {
    const double eta = std::exp(std::log(8.0) + u01(rng) * (std::log(1e4) - std::log(8.0)));
    const int K = w::cube_root_floor(eta);
    const int k = 1 + static_cast<int>(u01(rng) * K) % K;
    auto L = w::resonance_layout(k, eta);
    const double t = L->t_minus + u01(rng) * (L->t_plus - L->t_minus);
    const double v = w::dq_ratio(t, k, eta, p) * (1.0 + std::abs(t - eta / k));
    (in_other_tilde(t, k, eta) ? r.overlap : r.single).add(v);
  }
  return r;
}

// Right-hand sides (constant 1) of the five J-ratio cases; index 0 ↔ case i).
struct JCaseResult {
  std::array<double, 5> max_ratio{};
  std::array<long, 5> samples{};
};

inline bool in_tilde(double t, int k, double eta) {
  auto L = w::resonance_layout(k, eta);
  return L && L->It.contains(t);
}

inline JCaseResult j_ratio_sweep(long per_case, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  w::WeightParams p;
  JCaseResult r;
  auto done = [&] {
    for (long c : r.samples)
      if (c < per_case) return false;
    return true;
  };
  long guard = 0;
  while (!done() && guard++ < 200 * per_case) {
    const int sgn = u01(rng) < 0.5 ? -1 : 1;
    const double aeta = std::exp(std::log(8.0) + u01(rng) * (std::log(5000.0) - std::log(8.0)));
    const int K = std::max(1, w::cube_root_floor(aeta));
    const int k = sgn * (1 + static_cast<int>(u01(rng) * K) % K);
    const double eta = sgn * aeta;
    int l = k + static_cast<int>(std::floor(u01(rng) * 5)) - 2;
    if (l == 0) l = k;
    const double spread = 0.2 * aeta + 2.0;
    const double xi = eta + (2.0 * u01(rng) - 1.0) * spread;
    double t;
    const double pick = u01(rng);
    auto Lk = w::resonance_layout(k, eta);
    auto Ll = w::resonance_layout(l, xi);
    if (pick < 0.35 && Lk)
      t = Lk->t_minus + u01(rng) * (Lk->t_plus - Lk->t_minus);
    else if (pick < 0.7 && Ll)
      t = Ll->t_minus + u01(rng) * (Ll->t_plus - Ll->t_minus);
    else
      t = u01(rng) * 2.2 * std::max(std::abs(eta), std::abs(xi));

    const bool ik = Lk && Lk->It.contains(t);
    const bool il = Ll && Ll->It.contains(t);
    const double ratio = std::exp(w::log_J(t, k, eta, p) - w::log_J(t, l, xi, p));
    const double ex = std::exp(10.0 * p.rho * std::cbrt(std::hypot(double(k - l), eta - xi)));
    const double res_l =
        Ll ? std::sqrt(std::abs(xi) / std::pow(std::abs(l), 3)) / std::sqrt(1.0 + std::abs(t - xi / l))
           : 0.0;
    const double res_k =
        Lk ? std::sqrt(std::pow(std::abs(k), 3) / std::abs(eta)) * std::sqrt(1.0 + std::abs(t - eta / k))
           : 0.0;

    auto record = [&](int c, double rhs) {
      if (r.samples[c] >= per_case) return;
      r.max_ratio[c] = std::max(r.max_ratio[c], ratio / rhs);
      ++r.samples[c];
    };
    const bool in_Il = Ll && Ll->I.contains(t);
    record(0, (1.0 + (in_Il ? res_l : 0.0)) * ex);
    if (ik && !il) record(1, res_k * ex);
    if (!ik && il) record(2, res_l * ex);
    if (ik && il) record(3, res_k * res_l * ex);
    if (!ik && !il) record(4, ex);
  }
  return r;
}

struct B1Result {
  double fitted_C_i = 0.0;        // max of |x^s − y^s|(x^{1−s}+y^{1−s})/|x−y|
  double worst_ii = -INFINITY;    // max of lhs/rhs − 1 for ii)
  double worst_iii = -INFINITY;   // max of lhs/rhs − 1 for iii)
  double worst_iii_K = -INFINITY; // max of lhs/rhs − 1 for the K-variant
  long samples = 0;
};

inline B1Result scalar_inequality_sweep(long n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  B1Result r;
  for (long i = 0; i < n; ++i) {
    const double s = 0.01 + 0.98 * u01(rng);
    const double x = std::exp(-10.0 + 20.0 * u01(rng));
    double y = x * u01(rng);
    if (x > y)
      r.fitted_C_i = std::max(r.fitted_C_i, std::abs(std::pow(x, s) - std::pow(y, s)) *
                                                (std::pow(x, 1 - s) + std::pow(y, 1 - s)) / (x - y));
    // ii): |x − y| ≤ x/K
    const double K = 1.0 + std::exp(-5.0 + 10.0 * u01(rng));
    const double y2 = x - x / K * u01(rng);
    if (x > y2) {
      const double lhs = std::pow(x, s) - std::pow(y2, s);
      const double rhs = s / std::pow(K - 1.0, 1.0 - s) * std::pow(x - y2, s);
      r.worst_ii = std::max(r.worst_ii, lhs / rhs - 1.0);
    }
    // iii)
    {
      const double lhs = std::pow(x + y, s);
      const double rhs = std::pow(x / (x + y), 1.0 - s) * (std::pow(x, s) + std::pow(y, s));
      r.worst_iii = std::max(r.worst_iii, lhs / rhs - 1.0);
    }
    // iii) with y ≤ x ≤ K y
    {
      const double Kv = 1.0 + 50.0 * u01(rng);
      const double y3 = x / (1.0 + (Kv - 1.0) * u01(rng));
      const double lhs = std::pow(x + y3, s);
      const double rhs = std::pow(Kv / (1.0 + Kv), 1.0 - s) * (std::pow(x, s) + std::pow(y3, s));
      r.worst_iii_K = std::max(r.worst_iii_K, lhs / rhs - 1.0);
    }
    ++r.samples;
  }
  return r;
}

}  // namespace audits
