#pragma once

#include <optional>
#include <vector>

namespace shearmhd::weights {

struct WeightParams {
  double N = 6.0;         // Sobolev exponent
  double s = 0.5;         // Gevrey index
  double lambda0 = 1.0;   // initial radius
  double rho0 = 0.1;      // radius decay rate
  double gamma = 0.2;     // decay exponent γ*
  double rho = 0.05;      // q-weight exponent
  int j_max = 0;          // 0 selects the default 4(|k| + ⌈t²⌉) capped at 10⁴
  double m_rate = 10.0;   // prefactor of the m growth rate

  // Throws ConfigError when a constraint fails.
  void validate() const;
};

// ⟨x⟩ = sqrt(1 + x²), ⟨k,η⟩ = sqrt(1 + k² + η²)
double bracket(double x);
double bracket(double k, double eta);

// ---- radius λ(t) ----------------------------------------------------------
double lambda_at(double t, const WeightParams& p);
double lambda_rate(double t, const WeightParams& p);  // ∂_t λ
// lim_{t→∞} λ(t), in closed form through Γ functions.
double lambda_limit(const WeightParams& p);

// ---- linear multiplier m_L ------------------------------------------------
// Time at which |k,η| ≤ 10⟨t⟩ starts to hold.
double mL_activation_time(int k, double eta);
double log_mL(double t, int k, double eta, const WeightParams& p);
double dlog_mL(double t, int k, double eta);  // ∂_t m_L / m_L

// ---- resonance multiplier m -----------------------------------------------
bool in_S_t(double t, int k, double eta);  // |k,η| ≤ 10t²
int default_j_max(int k, double t);
// sup_{0<|j|≤j_max} 10/(1+(η/j − t)²)/⟨k−j⟩³ on S_t, else 0.
double dlog_m(double t, int k, double eta, int j_max, double pref = 10.0);
double dlog_m(double t, int k, double eta, const WeightParams& p);
// ∫_{t0}^{t1} dlog_m dτ, exact up to rounding: the integrand is the upper
// envelope of Lorentzians, integrated piece by piece.
double log_m_increment(double t0, double t1, int k, double eta, const WeightParams& p);
double log_m(double t, int k, double eta, const WeightParams& p);
// Upper bound on log m(·, k, ·) from integrating every candidate of the sup
// over the whole line: m_rate·π·Σ_{j≠0} ⟨k − j⟩⁻³.
double log_m_ceiling(int k, const WeightParams& p);

// Times in [t0, t1] where ∂_t A / A may jump: the q block ends and centers,
// the entry into S_t, and steps of the default j_max that change the sup.
// Between them ∂_t A / A is continuous.
std::vector<double> rate_breakpoints(double t0, double t1, int k, double eta,
                                     const WeightParams& p);

// ---- resonant geometry ----------------------------------------------------
struct Interval {
  double lo = 0.0, hi = 0.0;
  bool contains(double t) const { return t >= lo && t <= hi; }
  double length() const { return hi - lo; }
};

struct ResonanceLayout {
  int k = 0;
  double eta = 0.0;
  double t_minus = 0.0, t_plus = 0.0;
  double center = 0.0;  // η/k
  double a = 0.0;
  Interval I, I_left, I_right;
  Interval It, It_left, It_right;  // Ĩ pieces
};

int cube_root_floor(double x);  // ⌊x^{1/3}⌋ for x ≥ 0, exact at perfect cubes
std::optional<ResonanceLayout> resonance_layout(int k, double eta);

// ---- q, J, A ----------------------------------------------------------------
double log_q(double t, int k, double eta, const WeightParams& p);
double dq_ratio(double t, int k, double eta, const WeightParams& p);  // ∂_t q / q

double log_Jt(double t, int k, double eta, const WeightParams& p);
double log_J(double t, int k, double eta, const WeightParams& p);
// ∂_t J / J = −(J̃/J)·∂_t q / q
double dlog_J(double t, int k, double eta, const WeightParams& p);

// Gevrey exponent (|k| + |η|)^s
double gevrey_weight(int k, double eta, double s);
double log_A(double t, int k, double eta, const WeightParams& p);
double log_At(double t, int k, double eta, const WeightParams& p);

// numerically stable log(e^a + e^b)
double log_add_exp(double a, double b);

// ---- frequency pair sets ---------------------------------------------------
enum class PairClass { reaction, transport, remainder };
PairClass classify_pair(int k, double eta, int l, double xi);
const char* to_string(PairClass c);

}  // namespace shearmhd::weights
