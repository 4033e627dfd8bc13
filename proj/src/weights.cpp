#include "shearmhd/weights.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "shearmhd/errors.hpp"

namespace shearmhd::weights {

using boost::math::quadrature::gauss_kronrod;

void WeightParams::validate() const {
  if (!(N >= 1.0)) throw ConfigError("weights: N must be >= 1");
  if (!(s > 1.0 / 3.0 && s <= 1.0)) throw ConfigError("weights: s must lie in (1/3, 1]");
  if (!(lambda0 > 0.0)) throw ConfigError("weights: lambda0 must be positive");
  if (!(rho0 > 0.0 && rho0 < 1.0)) throw ConfigError("weights: rho0 must lie in (0, 1)");
  if (!(gamma > 0.0 && gamma < 1.5 * (s - 1.0 / 3.0)))
    throw ConfigError("weights: gamma must lie in (0, 3/2 (s - 1/3))");
  if (!(rho > 0.0)) throw ConfigError("weights: rho must be positive");
  if (j_max < 0) throw ConfigError("weights: j_max must be >= 0");
  if (!(m_rate > 0.0)) throw ConfigError("weights: m_rate must be positive");
  if (!(lambda_limit(*this) > 0.0))
    throw ConfigError("weights: lambda(t) would reach zero; lower rho0 or raise lambda0");
}

double bracket(double x) { return std::sqrt(1.0 + x * x); }
double bracket(double k, double eta) { return std::sqrt(1.0 + k * k + eta * eta); }

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -INFINITY) return a;
  return a + std::log1p(std::exp(b - a));
}

// ---------------------------------------------------------------- λ(t)

double lambda_rate(double t, const WeightParams& p) {
  return -p.rho0 * std::pow(1.0 + t * t, -0.5 * (1.0 + p.gamma));
}

double lambda_at(double t, const WeightParams& p) {
  if (t <= 0.0) return p.lambda0;
  const double e = -0.5 * (1.0 + p.gamma);
  auto f = [e](double tau) { return std::pow(1.0 + tau * tau, e); };
  double err = 0.0;
  // Split at τ = 1 where the integrand changes from flat to algebraic decay.
  double I = gauss_kronrod<double, 31>::integrate(f, 0.0, std::min(t, 1.0), 15, 1e-14, &err);
  if (t > 1.0) I += gauss_kronrod<double, 31>::integrate(f, 1.0, t, 20, 1e-14, &err);
  return p.lambda0 - p.rho0 * I;
}

double lambda_limit(const WeightParams& p) {
  // ∫_0^∞ (1+τ²)^{−a} dτ = (√π/2) Γ(a − 1/2)/Γ(a),  a = (1+γ)/2
  const double a = 0.5 * (1.0 + p.gamma);
  const double I = 0.5 * std::sqrt(std::numbers::pi) * std::tgamma(a - 0.5) / std::tgamma(a);
  return p.lambda0 - p.rho0 * I;
}

// ---------------------------------------------------------------- m_L

double mL_activation_time(int k, double eta) {
  const double r = std::hypot(static_cast<double>(k), eta) / 10.0;
  return r <= 1.0 ? 0.0 : std::sqrt(r * r - 1.0);
}

double log_mL(double t, int k, double eta, const WeightParams& p) {
  const double base = -p.N * std::log(bracket(k, eta));
  if (k == 0) return base;
  const double ts = mL_activation_time(k, eta);
  if (t <= ts) return base;
  const double c = eta / k;
  return base + 5.0 * (std::atan(t - c) - std::atan(ts - c));
}

double dlog_mL(double t, int k, double eta) {
  if (k == 0 || t < mL_activation_time(k, eta)) return 0.0;
  const double s = t - eta / k;
  return 5.0 / (1.0 + s * s);
}

// ---------------------------------------------------------------- m

bool in_S_t(double t, int k, double eta) {
  return std::hypot(static_cast<double>(k), eta) <= 10.0 * t * t;
}

int default_j_max(int k, double t) {
  const double v = 4.0 * (std::abs(k) + std::ceil(t * t));
  return static_cast<int>(std::min(v, 1.0e4));
}

double dlog_m(double t, int k, double eta, int j_max, double pref) {
  if (!in_S_t(t, k, eta)) return 0.0;
  // Scan j outward from k; a candidate at distance d is at most pref/⟨d⟩³,
  // so the scan stops once that bound cannot beat the current best.
  double best = 0.0;
  auto value = [&](long j) {
    const double r = eta / static_cast<double>(j) - t;
    const double d = static_cast<double>(k - j);
    const double b2 = 1.0 + d * d;
    return pref / ((1.0 + r * r) * b2 * std::sqrt(b2));
  };
  const long kk = k;
  const long far = std::abs(kk) + j_max + 1;
  for (long d = 0; d <= far; ++d) {
    const double b2 = 1.0 + static_cast<double>(d) * d;
    if (pref / (b2 * std::sqrt(b2)) <= best) break;
    for (long j : {kk + d, kk - d}) {
      if (j == 0 || std::abs(j) > j_max) continue;
      best = std::max(best, value(j));
      if (d == 0) break;
    }
  }
  return best;
}

double dlog_m(double t, int k, double eta, const WeightParams& p) {
  const int jm = p.j_max > 0 ? p.j_max : default_j_max(k, t);
  return dlog_m(t, k, eta, jm, p.m_rate);
}

namespace {

// One Lorentzian candidate w/(1 + (t − c)²) of the sup defining ∂_t m / m.
struct Lorentz {
  double w, c;
  double at(double t) const {
    const double r = t - c;
    return w / (1.0 + r * r);
  }
  double slope(double t) const {
    const double r = t - c;
    const double d = 1.0 + r * r;
    return -2.0 * w * r / (d * d);
  }
  double integral(double a, double b) const { return w * (std::atan(b - c) - std::atan(a - c)); }
};

// First τ > t at which `o` rises above `cur`. Crossings solve a quadratic
// since both sides share the form w/(1 + (τ − c)²).
double next_overtake(const Lorentz& cur, const Lorentz& o, double t) {
  // h(τ) = o.w (1 + (τ − cur.c)²) − cur.w (1 + (τ − o.c)²) has the sign of o − cur.
  const double A = o.w - cur.w;
  const double B = -2.0 * (o.w * cur.c - cur.w * o.c);
  const double C = o.w * (1.0 + cur.c * cur.c) - cur.w * (1.0 + o.c * o.c);
  auto dh = [&](double x) { return 2.0 * A * x + B; };
  const double eps = 1e-13 * std::max(1.0, std::abs(t));
  double roots[2];
  int n = 0;
  if (std::abs(A) <= 1e-15 * std::max(o.w, cur.w)) {
    if (B != 0.0) roots[n++] = -C / B;
  } else {
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) return INFINITY;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (B + std::copysign(sq, B));
    if (q != 0.0) roots[n++] = C / q;
    roots[n++] = q / A;
  }
  double best = INFINITY;
  for (int i = 0; i < n; ++i)
    if (roots[i] > t + eps && dh(roots[i]) > 0.0) best = std::min(best, roots[i]);
  return best;
}

Lorentz candidate(long j, int k, double eta, double pref) {
  const double d = static_cast<double>(k - j);
  const double b2 = 1.0 + d * d;
  return Lorentz{pref / (b2 * std::sqrt(b2)), eta / static_cast<double>(j)};
}

// Range of j that can lead the sup somewhere on [a, b]. Any fixed candidate
// bounds the envelope from below; j whose peak stays under that floor never lead.
std::pair<long, long> candidate_range(double a, double b, int k, double eta, int j_max,
                                      double pref) {
  double floor = 0.0;
  auto try_floor = [&](long j) {
    if (j == 0 || std::abs(j) > j_max) return;
    const Lorentz L = candidate(j, k, eta, pref);
    floor = std::max(floor, std::min(L.at(a), L.at(b)));
  };
  for (long d = -2; d <= 2; ++d) try_floor(k + d);
  for (double t : {a, b, 0.5 * (a + b)})
    if (t > 0.0) try_floor(std::lround(eta / t));
  const double reach =
      floor > 0.0 ? std::sqrt(std::max(0.0, std::pow(pref / floor, 2.0 / 3.0) - 1.0)) : 1e9;
  const long lo = std::max<long>(static_cast<long>(std::floor(k - reach)), -j_max);
  const long hi = std::min<long>(static_cast<long>(std::ceil(k + reach)), j_max);
  return {lo, hi};
}

long max_candidate(double a, double b, int k, double eta, int j_max, double pref) {
  auto [lo, hi] = candidate_range(a, b, k, eta, j_max, pref);
  return std::max(std::abs(lo), std::abs(hi));
}

// ∫_a^b sup_{0 < |j| ≤ j_max} f_j exactly, walking the upper envelope.
double envelope_integral(double a, double b, int k, double eta, int j_max, double pref) {
  auto [lo, hi] = candidate_range(a, b, k, eta, j_max, pref);
  std::vector<Lorentz> cand;
  for (long j = lo; j <= hi; ++j)
    if (j != 0) cand.push_back(candidate(j, k, eta, pref));
  if (cand.empty()) return 0.0;

  auto leader = [&](double t) {
    size_t best = 0;
    for (size_t i = 1; i < cand.size(); ++i) {
      const double fi = cand[i].at(t), fb = cand[best].at(t);
      if (fi > fb || (fi == fb && cand[i].slope(t) > cand[best].slope(t))) best = i;
    }
    return best;
  };
  double t = a, total = 0.0;
  size_t cur = leader(a);
  for (int guard = 0; guard < 100000 && t < b; ++guard) {
    double next = b;
    size_t who = cur;
    for (size_t i = 0; i < cand.size(); ++i) {
      if (i == cur) continue;
      const double x = next_overtake(cand[cur], cand[i], t);
      if (x < next || (x == next && who != cur && cand[i].slope(x) > cand[who].slope(x))) {
        next = x;
        who = i;
      }
    }
    total += cand[cur].integral(t, next);
    t = next;
    cur = who;
  }
  return total;
}

}  // namespace

double log_m_increment(double t0, double t1, int k, double eta, const WeightParams& p) {
  const double entry = std::sqrt(std::hypot(static_cast<double>(k), eta) / 10.0);
  const double a = std::max(t0, entry);
  if (!(t1 > a)) return 0.0;
  if (p.j_max > 0) return envelope_integral(a, t1, k, eta, p.j_max, p.m_rate);
  // The default cutoff is constant between consecutive t = sqrt(n), and only
  // binds while it is below the largest |j| that can lead on [a, t1].
  const int jm_end = default_j_max(k, t1);
  const long J = max_candidate(a, t1, k, eta, jm_end, p.m_rate);
  const double t_bind = std::sqrt(std::max(0.0, J / 4.0 - std::abs(k)));
  double total = 0.0, lo = a;
  while (lo < std::min(t1, t_bind)) {
    double s = std::sqrt(std::ceil(lo * lo));
    if (s <= lo) s = std::sqrt(std::ceil(lo * lo) + 1.0);
    const double hi = std::min(t1, s);
    total += envelope_integral(lo, hi, k, eta, default_j_max(k, 0.5 * (lo + hi)), p.m_rate);
    lo = hi;
  }
  if (lo < t1) total += envelope_integral(lo, t1, k, eta, jm_end, p.m_rate);
  return total;
}

double log_m(double t, int k, double eta, const WeightParams& p) {
  return log_m_increment(0.0, t, k, eta, p);
}

double log_m_ceiling(int k, const WeightParams& p) {
  // Σ_{n∈ℤ} ⟨n⟩⁻³, tail past |n| = N bounded by ∫_N^∞ 2n⁻³ dn = N⁻²
  static const double full = [] {
    constexpr int N = 20000;
    double s = 1.0 / (double(N) * N);
    for (int n = N; n >= 1; --n) s += 2.0 * std::pow(bracket(n), -3.0);
    return s + 1.0;
  }();
  return p.m_rate * std::numbers::pi * (full - std::pow(bracket(k), -3.0));
}

std::vector<double> rate_breakpoints(double t0, double t1, int k, double eta,
                                     const WeightParams& p) {
  std::vector<double> out;
  auto add = [&](double t) {
    if (t >= t0 && t <= t1) out.push_back(t);
  };
  add(std::sqrt(std::hypot(static_cast<double>(k), eta) / 10.0));
  if (p.j_max == 0) {
    // j_max(t) steps just after t = √n
    const long n_lo = static_cast<long>(std::ceil(t0 * t0)), n_hi = static_cast<long>(std::floor(t1 * t1));
    for (long n = std::max(1L, n_lo); n <= n_hi; ++n) {
      const double t = std::sqrt(static_cast<double>(n));
      if (!in_S_t(t, k, eta)) continue;
      const int before = static_cast<int>(std::min(4.0 * (std::abs(k) + n), 1.0e4));
      const int after = static_cast<int>(std::min(4.0 * (std::abs(k) + n + 1), 1.0e4));
      if (after == before) continue;
      if (dlog_m(t, k, eta, before, p.m_rate) != dlog_m(t, k, eta, after, p.m_rate)) add(t);
    }
  }
  const double ae = std::abs(eta);
  if (ae > 1.0) {
    const int K = cube_root_floor(ae);
    for (int kp = 1; kp <= K; ++kp) {
      const double c = ae / kp, hw = ae / (2.0 * kp * kp * kp);
      add(c - hw);
      add(c);
      add(c + hw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- geometry

int cube_root_floor(double x) {
  if (!(x >= 1.0)) return 0;
  long K = static_cast<long>(std::floor(std::cbrt(x)));
  while (static_cast<double>(K + 1) * (K + 1) * (K + 1) <= x) ++K;
  while (K > 0 && static_cast<double>(K) * K * K > x) --K;
  return static_cast<int>(K);
}

std::optional<ResonanceLayout> resonance_layout(int k, double eta) {
  if (k == 0 || !(eta * k > 0.0)) return std::nullopt;
  const double ae = std::abs(eta);
  const int ak = std::abs(k);
  if (ak > cube_root_floor(ae)) return std::nullopt;
  ResonanceLayout L;
  L.k = k;
  L.eta = eta;
  const double k3 = static_cast<double>(ak) * ak * ak;
  L.center = ae / ak;
  L.t_minus = L.center - ae / (2.0 * k3);
  L.t_plus = L.center + ae / (2.0 * k3);
  L.a = 4.0 * (1.0 - k3 / (2.0 * ae));
  if (ak == 1) {
    L.I = {ae / 3.0, 2.0 * ae};
  } else {
    L.I = {0.5 * (ae / ak + ae / (ak + 1)), 0.5 * (ae / ak + ae / (ak - 1))};
  }
  L.I_left = {L.I.lo, L.center};
  L.I_right = {L.center, L.I.hi};
  L.It = {L.t_minus, L.t_plus};
  L.It_left = {L.t_minus, L.center};
  L.It_right = {L.center, L.t_plus};
  return L;
}

// ---------------------------------------------------------------- q

namespace {

struct QValue {
  double log_q = 0.0;
  double rate = 0.0;
};

// log q_NR is the sum over 1 ≤ k' ≤ ⌊η^{1/3}⌋ of one block per critical
// interval Ĩ_{k',η}; each block runs from 0 (after t⁺) through
// (ρ+½)·log B on Ĩ^R and (ρ+½)·log(k'³/2η) − ρ·log(1+a|t−η/k'|) on Ĩ^L
// to the constant (2ρ+½)·log(k'³/2η) before t⁻, with
// B = (k'³/2η)(1 + a|t − η/k'|). The resonant mode k adds −½·log B on Ĩ_{k,η}.
QValue q_eval(double t, int k, double eta, double rho) {
  if (eta < 0.0) {
    eta = -eta;
    k = -k;
  }
  QValue q;
  if (eta <= 1.0 || t > 2.0 * eta) return q;
  const int K = cube_root_floor(eta);
  for (int kp = 1; kp <= K; ++kp) {
    const double k3 = static_cast<double>(kp) * kp * kp;
    const double c = eta / kp;
    const double hw = eta / (2.0 * k3);
    if (t >= c + hw) continue;
    const double a = 4.0 * (1.0 - k3 / (2.0 * eta));
    const double L0 = std::log(k3 / (2.0 * eta));
    if (t >= c) {
      const double s = t - c;
      q.log_q += (rho + 0.5) * (L0 + std::log1p(a * s));
      q.rate += (rho + 0.5) * a / (1.0 + a * s);
    } else if (t >= c - hw) {
      const double s = c - t;
      q.log_q += (rho + 0.5) * L0 - rho * std::log1p(a * s);
      q.rate += rho * a / (1.0 + a * s);
    } else {
      q.log_q += (2.0 * rho + 0.5) * L0;
    }
  }
  if (k >= 1 && k <= K) {
    const double k3 = static_cast<double>(k) * k * k;
    const double c = eta / k;
    const double hw = eta / (2.0 * k3);
    if (t >= c - hw && t <= c + hw) {
      const double a = 4.0 * (1.0 - k3 / (2.0 * eta));
      const double s = std::abs(t - c);
      q.log_q -= 0.5 * (std::log(k3 / (2.0 * eta)) + std::log1p(a * s));
      q.rate += (t >= c ? -0.5 : 0.5) * a / (1.0 + a * s);
    }
  }
  return q;
}

}  // namespace

double log_q(double t, int k, double eta, const WeightParams& p) {
  return q_eval(t, k, eta, p.rho).log_q;
}

double dq_ratio(double t, int k, double eta, const WeightParams& p) {
  return q_eval(t, k, eta, p.rho).rate;
}

// ---------------------------------------------------------------- J, A

double log_Jt(double t, int k, double eta, const WeightParams& p) {
  return 8.0 * p.rho * std::cbrt(std::abs(eta)) - log_q(t, k, eta, p);
}

double log_J(double t, int k, double eta, const WeightParams& p) {
  return log_add_exp(log_Jt(t, k, eta, p), 8.0 * p.rho * std::cbrt(std::abs(k)));
}

double dlog_J(double t, int k, double eta, const WeightParams& p) {
  const double frac = std::exp(log_Jt(t, k, eta, p) - log_J(t, k, eta, p));
  return -frac * dq_ratio(t, k, eta, p);
}

double gevrey_weight(int k, double eta, double s) {
  return std::pow(std::abs(static_cast<double>(k)) + std::abs(eta), s);
}

double log_A(double t, int k, double eta, const WeightParams& p) {
  return p.N * std::log(bracket(k, eta)) - log_m(t, k, eta, p) + log_J(t, k, eta, p) +
         lambda_at(t, p) * gevrey_weight(k, eta, p.s);
}

double log_At(double t, int k, double eta, const WeightParams& p) {
  return p.N * std::log(bracket(k, eta)) - log_m(t, k, eta, p) + log_Jt(t, k, eta, p) +
         lambda_at(t, p) * gevrey_weight(k, eta, p.s);
}

// ---------------------------------------------------------------- pairs

PairClass classify_pair(int k, double eta, int l, double xi) {
  const double d = std::hypot(static_cast<double>(k - l), eta - xi);
  const double n = std::hypot(static_cast<double>(l), xi);
  if (d > 8.0 * n) return PairClass::reaction;
  if (8.0 * d < n) return PairClass::transport;
  return PairClass::remainder;
}

const char* to_string(PairClass c) {
  switch (c) {
    case PairClass::reaction: return "reaction";
    case PairClass::transport: return "transport";
    case PairClass::remainder: return "remainder";
  }
  return "?";
}

}  // namespace shearmhd::weights
