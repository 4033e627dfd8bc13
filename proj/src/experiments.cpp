#include "shearmhd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "shearmhd/echo.hpp"
#include "shearmhd/errors.hpp"
#include "shearmhd/fit.hpp"
#include "shearmhd/linear.hpp"
#include "shearmhd/nonlinear.hpp"
#include "shearmhd/snapshot.hpp"
#include "shearmhd/weight_table.hpp"
#include "shearmhd/weights.hpp"

namespace shearmhd::experiments {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using nonlinear::DiagnosticsRecord;

bool Artifact::ok() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

namespace {

// Fixed format so that reruns are byte-identical.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) {
    for (size_t i = 0; i < header.size(); ++i) text_ += (i ? "," : "") + header[i];
    text_ += '\n';
  }
  Csv& row() {
    first_ = true;
    return *this;
  }
  Csv& operator<<(double v) { return put(num(v)); }
  Csv& operator<<(int v) { return put(std::to_string(v)); }
  void end() { text_ += '\n'; }
  const std::string& str() const { return text_; }

 private:
  Csv& put(const std::string& s) {
    if (!first_) text_ += ',';
    text_ += s;
    first_ = false;
    return *this;
  }
  std::string text_;
  bool first_ = true;
};

void write_file(Artifact& a, const std::string& dir, const std::string& name,
                const std::string& text) {
  if (dir.empty()) return;
  fs::create_directories(dir);
  const std::string path = (fs::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ConfigError("cannot write " + path);
  a.files.push_back(name);
}

void check(Artifact& a, const std::string& name, double value, double lo, double hi) {
  a.assertions.push_back({name, value >= lo && value <= hi, value, lo, hi});
}

ordered_json fit_json(const FitResult& f) {
  return {{"exponent", f.exponent}, {"prefactor", f.prefactor}, {"t_lo", f.t_lo},
          {"t_hi", f.t_hi},         {"r2", f.r2},               {"n", f.n}};
}

// ---- simulation core --------------------------------------------------------

// Steps to `target`, cutting the step to 0.9 of the suggested value whenever
// the CFL guard rejects one. The cut is kept for the rest of the run.
struct StepControl {
  double dt;
  double h;
  long rejections = 0;

  void advance(nonlinear::Stepper& s, double target) {
    const double tol = 1e-12 * std::max(1.0, std::abs(target));
    while (s.t() < target - tol) {
      const double rest = target - s.t();
      const double step = rest <= h * (1.0 + 1e-9) ? rest : h;
      try {
        s.step(step);
      } catch (const StepRejected& e) {
        ++rejections;
        const double next = 0.9 * e.suggested_dt();
        if (!(next > 1e-10 * dt)) throw;
        h = std::min(h, next);
      }
    }
  }
};

std::vector<double> sample_times(double T, double h, bool strict) {
  std::vector<double> ts;
  const long n = long(std::floor(T / h * (1.0 + 1e-12)));
  for (long i = 0; i <= n; ++i) ts.push_back(i * h);
  if (!strict && ts.back() < T * (1.0 - 1e-12)) ts.push_back(T);
  return ts;
}

std::unique_ptr<nonlinear::Stepper> make_stepper(const FlowState& init,
                                                 const nonlinear::StepperConfig& sc) {
  if (sc.nu > 0.0) return std::make_unique<nonlinear::Stepper>(init, sc);
  PrimitiveState p{vorticity_of_mean_flow(init.v0), init.phi, init.v0, init.t};
  return std::make_unique<nonlinear::Stepper>(p, sc);
}

FlowState good_state(const nonlinear::Stepper& s) {
  if (s.config().nu > 0.0) return s.good();
  // ν = 0: G is undefined; the diagnostics see G = 0 and use φ only
  PrimitiveState p = s.primitive();
  FlowState f{SpectralField(p.phi.grid(), "G"), p.phi, p.v0, p.t};
  return f;
}

}  // namespace

Simulation simulate(const RunConfig& cfg, const std::string& snapshot_dir) {
  cfg.validate();
  Simulation sim;
  sim.data = make_initial_data(cfg);
  sim.t_end = cfg.resolved_t_end();
  const double h = cfg.sample_every;
  const bool identity = cfg.identity_check;
  sim.dt_used = identity ? std::min(cfg.dt, 0.5 * h) : cfg.dt;

  nonlinear::StepperConfig sc;
  sc.dt = sim.dt_used;
  sc.cfl_safety = cfg.cfl_safety;
  sc.nu = cfg.nu;
  sc.alpha = cfg.alpha;
  sc.nonlinear = cfg.nonlinear;
  auto main = make_stepper(sim.data.state, sc);
  std::unique_ptr<nonlinear::Stepper> lin;
  if (cfg.linear_baseline) {
    auto lc = sc;
    lc.nonlinear = false;
    lin = make_stepper(sim.data.state, lc);
  }
  StepControl ctl{sim.dt_used, sim.dt_used};
  StepControl lctl{sim.dt_used, sim.dt_used};

  const Grid g = sim.data.state.phi.grid();
  nonlinear::DiagnosticsOptions opt{cfg.nu, cfg.alpha, cfg.k0};
  std::unique_ptr<nonlinear::IdentityMonitor> monitor;
  if (identity) monitor = std::make_unique<nonlinear::IdentityMonitor>(g, cfg.weights, cfg.nu, cfg.alpha, h);
  std::unique_ptr<weights::WeightTable> table;

  if (!snapshot_dir.empty() && cfg.snapshot_every > 0.0) fs::create_directories(snapshot_dir);
  double next_snapshot = 0.0;

  for (double ts : sample_times(sim.t_end, h, identity)) {
    ctl.advance(*main, ts);
    const FlowState s = good_state(*main);
    DiagnosticsRecord rec;
    if (cfg.full_diagnostics) {
      table = table ? std::make_unique<weights::WeightTable>(*table, ts, cfg.threads)
                    : std::make_unique<weights::WeightTable>(g, cfg.weights, ts, cfg.threads);
      nonlinear::ModeBudget budget;
      rec = nonlinear::diagnostics(s, *table, opt, identity ? &budget : nullptr);
      if (monitor) monitor->push(rec, std::move(budget));
    } else {
      rec = nonlinear::norm_diagnostics(s, opt);
    }
    sim.records.push_back(rec);

    if (lin) {
      lctl.advance(*lin, ts);
      const FlowState l = good_state(*lin);
      FlowState d{s.G - l.G, s.phi - l.phi, s.v0 - l.v0, ts};
      sim.X_lin.push_back(nonlinear::norm_diagnostics(l, opt).X_phi);
      sim.discrepancy.push_back(nonlinear::norm_diagnostics(d, opt).X_phi);
    }

    if (!snapshot_dir.empty() && cfg.snapshot_every > 0.0 && ts >= next_snapshot - 1e-9 * h) {
      char name[64];
      for (const auto& [f, tag] : {std::pair{&s.phi, "phi"}, std::pair{&s.G, "G"}}) {
        std::snprintf(name, sizeof name, "%s_t%010.4f.bin", tag, ts);
        write_snapshot((fs::path(snapshot_dir) / name).string(), *f, ts);
        sim.snapshots.push_back(name);
      }
      next_snapshot += cfg.snapshot_every;
    }
  }
  if (monitor) {
    sim.has_identity = true;
    sim.identity = monitor->result();
  }
  sim.steps = main->steps_taken();
  sim.rejections = ctl.rejections;
  sim.min_dt = ctl.h;
  return sim;
}

std::string diagnostics_csv(const Simulation& sim) {
  std::vector<std::string> head = {
      "t",         "E",           "E0",          "D_gradG",     "D_phi",  "D_lambda", "D_m",
      "D_q",       "D_v0",        "D_lambda_v0", "D_m_v0",      "D_q_v0", "norm_j",   "norm_b",
      "norm_phi",  "gevrey_phi",  "X_phi",       "L_Gphi",      "NL_phi_to_G",
      "NL_G_to_phi", "NL_phi",    "NL_G",        "NL_v0"};
  const bool lin = !sim.X_lin.empty();
  if (lin) {
    head.push_back("X_lin");
    head.push_back("discrepancy");
  }
  Csv csv(head);
  for (size_t i = 0; i < sim.records.size(); ++i) {
    const auto& r = sim.records[i];
    csv.row() << r.t << r.E << r.E0 << r.D_gradG << r.D_phi << r.D_lambda << r.D_m << r.D_q
              << r.D_v0 << r.D_lambda_v0 << r.D_m_v0 << r.D_q_v0 << r.norm_j << r.norm_b
              << r.norm_phi << r.gevrey_phi << r.X_phi << r.L_Gphi << r.NL_phi_to_G
              << r.NL_G_to_phi << r.NL_phi << r.NL_G << r.NL_v0;
    if (lin) csv << sim.X_lin[i] << sim.discrepancy[i];
    csv.end();
  }
  return csv.str();
}

namespace {

ordered_json data_json(const DataReport& d) {
  return {{"norm", d.norm},
          {"chi_phi_Hm2", d.chi_phi_Hm2},
          {"phi_Hm2", d.phi_Hm2},
          {"chi_dxG_Hm2", d.chi_dxG_Hm2},
          {"concentration", d.concentration}};
}

ordered_json run_json(const Simulation& sim) {
  return {{"t_end", sim.t_end},           {"dt", sim.dt_used},
          {"min_dt", sim.min_dt},         {"steps", sim.steps},
          {"cfl_rejections", sim.rejections}, {"samples", sim.records.size()}};
}

std::string identity_csv(const nonlinear::IdentityResidual& r) {
  Csv csv({"t", "r", "r0", "r_all", "r0_all"});
  for (size_t i = 0; i < r.t.size(); ++i) {
    csv.row() << r.t[i] << r.r[i] << r.r0[i] << r.r_all[i] << r.r0_all[i];
    csv.end();
  }
  return csv.str();
}

void write_sim_files(Artifact& a, const RunConfig& cfg, const Simulation& sim) {
  write_file(a, cfg.out, "diagnostics.csv", diagnostics_csv(sim));
  if (sim.has_identity) write_file(a, cfg.out, "identity.csv", identity_csv(sim.identity));
  for (const auto& s : sim.snapshots) a.files.push_back("snapshots/" + s);
}

std::string snapshot_dir(const RunConfig& cfg) {
  return cfg.out.empty() ? std::string() : (fs::path(cfg.out) / "snapshots").string();
}

// max over samples of E(t)/E(0) for the chosen energy
double max_ratio(const std::vector<DiagnosticsRecord>& rec, double DiagnosticsRecord::*field) {
  const double e0 = rec.front().*field;
  if (!(e0 > 0.0)) return NAN;
  double m = 0.0;
  for (const auto& r : rec) m = std::max(m, r.*field / e0);
  return m;
}

void run_simulate(Artifact& a, const RunConfig& cfg) {
  const Simulation sim = simulate(cfg, snapshot_dir(cfg));
  write_sim_files(a, cfg, sim);
  auto& res = a.summary["results"];
  res["run"] = run_json(sim);
  res["data"] = data_json(sim.data.report);
  double maxE = 0.0, maxE0 = 0.0;
  for (const auto& r : sim.records) {
    maxE = std::max(maxE, r.E);
    maxE0 = std::max(maxE0, r.E0);
  }
  res["max_E"] = maxE;
  res["max_E0"] = maxE0;
  res["max_E_ratio"] = max_ratio(sim.records, &DiagnosticsRecord::E);
  if (!sim.has_identity) return;

  const auto& id = sim.identity;
  const double rel = id.max_abs / maxE;
  ordered_json j = {{"h", cfg.sample_every},
                    {"max_residual", id.max_abs},
                    {"max_residual_rel", rel},
                    {"max_residual0", id.max_abs0},
                    {"max_residual0_rel", maxE0 > 0.0 ? id.max_abs0 / maxE0 : 0.0},
                    {"masked_mode_windows", id.masked_modes},
                    {"max_masked_fraction", id.max_masked_fraction}};
  double lit = 0.0;
  for (double v : id.r_all) lit = std::max(lit, std::abs(v));
  j["max_literal_residual_rel"] = lit / maxE;
  check(a, "identity_residual_rel", rel, 0.0, cfg.assert_identity_tol);
  if (cfg.identity_refine) {
    RunConfig fine = cfg;
    fine.sample_every = 0.5 * cfg.sample_every;
    fine.dt = std::min(cfg.dt, 0.5 * fine.sample_every);
    fine.linear_baseline = false;
    fine.snapshot_every = 0.0;
    const Simulation s2 = simulate(fine);
    double maxE2 = 0.0;
    for (const auto& r : s2.records) maxE2 = std::max(maxE2, r.E);
    const double rel2 = s2.identity.max_abs / maxE2;
    const double gain = rel / rel2;
    j["refined_h"] = fine.sample_every;
    j["refined_max_residual_rel"] = rel2;
    j["refinement_gain"] = gain;
    write_file(a, cfg.out, "identity_refined.csv", identity_csv(s2.identity));
    check(a, "identity_refinement_gain", gain, cfg.assert_identity_gain, INFINITY);
  }
  res["identity"] = j;
}

void run_stability(Artifact& a, const RunConfig& cfg) {
  const Simulation sim = simulate(cfg, snapshot_dir(cfg));
  write_sim_files(a, cfg, sim);
  auto& res = a.summary["results"];
  res["run"] = run_json(sim);
  res["data"] = data_json(sim.data.report);
  const double ratio = max_ratio(sim.records, &DiagnosticsRecord::E);
  res["E_initial"] = sim.records.front().E;
  res["max_E_ratio"] = ratio;
  res["max_E0_ratio"] = max_ratio(sim.records, &DiagnosticsRecord::E0);
  res["max_norm_phi_ratio"] = max_ratio(sim.records, &DiagnosticsRecord::norm_phi);
  check(a, "max_E_ratio", ratio, 0.0, cfg.assert_energy_ratio);
}

void run_inflation(Artifact& a, const RunConfig& cfg) {
  const Simulation sim = simulate(cfg, snapshot_dir(cfg));
  write_sim_files(a, cfg, sim);
  auto& res = a.summary["results"];
  res["run"] = run_json(sim);
  res["data"] = data_json(sim.data.report);
  res["k0"] = cfg.k0;

  std::vector<double> t, j, tb;
  for (const auto& r : sim.records) {
    t.push_back(r.t);
    j.push_back(r.norm_j);
    tb.push_back(std::sqrt(1.0 + r.t * r.t) * r.norm_b);
  }
  const double lo = cfg.fit_t_lo, hi = cfg.resolved_fit_t_hi();
  const FitResult fj = fit_power_law(t, j, lo, hi);
  const FitResult fb = fit_power_law(t, tb, lo, hi);
  res["fit_j"] = fit_json(fj);
  res["fit_tb"] = fit_json(fb);
  check(a, "exponent_j", fj.exponent, cfg.assert_exponent_lo, cfg.assert_exponent_hi);
  check(a, "exponent_t_b", fb.exponent, cfg.assert_exponent_lo, cfg.assert_exponent_hi);

  if (!sim.X_lin.empty()) {
    double worst = 0.0, C = 1.0;
    const double x_in = sim.X_lin.front();
    std::vector<double> td, d;
    for (size_t i = 0; i < sim.X_lin.size(); ++i) {
      if (sim.X_lin[i] > 0.0) worst = std::max(worst, sim.discrepancy[i] / sim.X_lin[i]);
      if (x_in > 0.0 && sim.X_lin[i] > 0.0)
        C = std::max({C, sim.X_lin[i] / x_in, x_in / sim.X_lin[i]});
      if (sim.discrepancy[i] > 0.0) {
        td.push_back(t[i]);
        d.push_back(sim.discrepancy[i]);
      }
    }
    ordered_json b = {{"max_discrepancy_rel", worst}, {"sandwich_constant", C}};
    try {
      b["fit_discrepancy"] = fit_json(fit_power_law(td, d, std::max(lo, td.front()), std::min(hi, td.back())));
    } catch (const std::exception&) {
      b["fit_discrepancy"] = nullptr;  // identically zero or too few samples
    }
    res["baseline"] = b;
    check(a, "max_discrepancy_rel", worst, 0.0, cfg.assert_discrepancy);
  }
}

// ---- echo -------------------------------------------------------------------

void run_echo(Artifact& a, const RunConfig& cfg) {
  Csv csv({"eta", "k", "eps", "gain_down", "predicted", "ratio", "gain_next", "quasi_static",
           "G_center_ratio"});
  std::vector<double> x, y, yp, yq;
  double worst = 1.0;
  bool monotone = true;
  ordered_json per_eta = ordered_json::array();
  for (double eta : cfg.echo_etas) {
    echo::EchoConfig e;
    e.eta = eta;
    e.eps = cfg.echo_eps;
    e.coupling = cfg.echo_coupling;
    e.delta = cfg.echo_delta;
    e.window = cfg.echo_window;
    const auto ch = echo::chain_run(e);
    double prev = 0.0;
    for (const auto& l : ch.links) {
      const double ratio = l.gains.gain_down / l.predicted;
      worst = std::max({worst, ratio, 1.0 / ratio});
      if (l.gains.gain_down <= prev) monotone = false;
      prev = l.gains.gain_down;
      csv.row() << eta << l.k << l.eps << l.gains.gain_down << l.predicted << ratio
                << l.gains.gain_next << l.quasi_static << l.G_center_ratio;
      csv.end();
    }
    x.push_back(std::cbrt(eta));
    y.push_back(ch.log_growth);
    yp.push_back(ch.predicted_log_growth);
    yq.push_back(ch.quasi_static_log_growth);
    per_eta.push_back({{"eta", eta},
                       {"k_start", e.resolved_k_start()},
                       {"log_growth", ch.log_growth},
                       {"predicted_log_growth", ch.predicted_log_growth},
                       {"quasi_static_log_growth", ch.quasi_static_log_growth}});
  }
  write_file(a, cfg.out, "echo.csv", csv.str());
  auto& res = a.summary["results"];
  res["coupling"] = cfg.echo_coupling == echo::Coupling::fixed ? "fixed" : "regime_matched";
  res["chains"] = per_eta;
  res["max_link_factor"] = worst;
  res["gains_monotone_in_k"] = monotone;
  check(a, "max_link_factor", worst, 1.0, cfg.echo_link_factor);
  if (x.size() >= 2) {
    const auto f = echo::fit_line(x, y);
    const auto fp = echo::fit_line(x, yp);
    const auto fq = echo::fit_line(x, yq);
    res["slope"] = f.slope;
    res["intercept"] = f.intercept;
    res["r2"] = f.r2;
    res["predicted_slope"] = fp.slope;
    res["quasi_static_slope"] = fq.slope;
    check(a, "slope", f.slope, cfg.echo_slope_lo, cfg.echo_slope_hi);
    check(a, "r2", f.r2, cfg.echo_r2, 1.0);
  }
}

// ---- linear sweep -----------------------------------------------------------

struct SweepMode {
  int k;
  double eta;
  std::string rows;
  double max_increase = 0.0;
  double max_budget_excess = 0.0;
};

void sweep_one(SweepMode& m, const RunConfig& cfg, const std::vector<double>& outputs) {
  linear::ModeState s{m.k, m.eta, cplx(1.0, 0.0), cplx(1.0, 0.0), 0.0};
  const auto tr = linear::integrate_mode(s, cfg.sweep_t_end, cfg.sweep_rtol,
                                         linear::LinearParams{cfg.nu, cfg.alpha}, outputs);
  const auto rep = linear::mode_energy_report(tr, cfg.weights);
  m.max_increase = rep.max_increase;
  m.max_budget_excess = rep.max_budget_excess;
  size_t next = 0;
  for (size_t i = 0; i < tr.samples.size() && next < outputs.size(); ++i) {
    if (std::abs(tr.samples[i].t - outputs[next]) > 1e-9 * std::max(1.0, outputs[next])) continue;
    const auto& e = rep.samples[i];
    Csv line({});
    line.row() << m.k << m.eta << tr.samples[i].t << std::abs(tr.samples[i].G)
               << std::abs(tr.samples[i].phi) << e.E << e.lindec;
    line.end();
    m.rows += line.str().substr(1);  // drop the empty header line
    ++next;
  }
}

void run_linear_sweep(Artifact& a, const RunConfig& cfg) {
  std::vector<double> outputs;
  for (double t = 0.0; t <= cfg.sweep_t_end * (1.0 + 1e-12); t += cfg.sweep_output_every)
    outputs.push_back(std::min(t, cfg.sweep_t_end));
  if (outputs.back() < cfg.sweep_t_end) outputs.push_back(cfg.sweep_t_end);

  std::vector<SweepMode> modes;
  for (int k = 1; k <= cfg.sweep_k_max; ++k)
    for (int i = 0; i < cfg.sweep_n_eta; ++i) {
      const double eta = cfg.sweep_n_eta == 1
                             ? 0.0
                             : -cfg.sweep_eta_max + 2.0 * cfg.sweep_eta_max * i / (cfg.sweep_n_eta - 1);
      modes.push_back({k, eta, {}});
    }
  const int nt = std::max(1, std::min<int>(cfg.threads, int(modes.size())));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> err(nt);
  for (int w = 0; w < nt; ++w)
    pool.emplace_back([&, w] {
      try {
        for (size_t i = w; i < modes.size(); i += nt) sweep_one(modes[i], cfg, outputs);
      } catch (...) {
        err[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : err)
    if (e) std::rethrow_exception(e);

  std::string csv = "k,eta,t,abs_G,abs_phi,E_weighted,residual\n";
  double worst = -INFINITY, worst_budget = -INFINITY;
  int wk = 0;
  double weta = 0.0;
  for (const auto& m : modes) {
    csv += m.rows;
    if (m.max_increase > worst) {
      worst = m.max_increase;
      wk = m.k;
      weta = m.eta;
    }
    worst_budget = std::max(worst_budget, m.max_budget_excess);
  }
  write_file(a, cfg.out, "linear_sweep.csv", csv);
  auto& res = a.summary["results"];
  res["modes"] = modes.size();
  res["max_relative_increase"] = worst;
  res["worst_mode"] = {{"k", wk}, {"eta", weta}};
  res["max_budget_excess"] = worst_budget;
  check(a, "max_relative_increase", worst, -INFINITY, cfg.sweep_tol);
}

// ---- weight audit -----------------------------------------------------------

void run_weights_audit(Artifact& a, const RunConfig& cfg) {
  std::string csv = "t,k,eta,log_mL,log_m,log_q,dq_ratio,log_J,log_A\n";
  double min_m = INFINITY, max_m = -INFINITY;
  for (double eta : cfg.audit_etas) {
    const double T = cfg.audit_t_max > 0.0 ? cfg.audit_t_max : 2.0 * std::abs(eta);
    for (int k = 1; k <= cfg.audit_k_max; ++k) {
      double lm = 0.0, t_prev = 0.0;
      for (int i = 0; i < cfg.audit_n_t; ++i) {
        const double t = T * i / (cfg.audit_n_t - 1);
        if (i > 0) lm += weights::log_m_increment(t_prev, t, k, eta, cfg.weights);
        t_prev = t;
        min_m = std::min(min_m, lm);
        max_m = std::max(max_m, lm);
        Csv line({});
        line.row() << t << k << eta << weights::log_mL(t, k, eta, cfg.weights) << lm
                   << weights::log_q(t, k, eta, cfg.weights)
                   << weights::dq_ratio(t, k, eta, cfg.weights)
                   << weights::log_J(t, k, eta, cfg.weights) << weights::log_A(t, k, eta, cfg.weights);
        line.end();
        csv += line.str().substr(1);
      }
    }
  }
  write_file(a, cfg.out, "weights_audit.csv", csv);
  auto& res = a.summary["results"];
  res["t_max"] = cfg.audit_t_max > 0.0 ? ordered_json(cfg.audit_t_max) : ordered_json("2*eta");
  res["min_log_m"] = min_m;
  res["max_log_m"] = max_m;
  check(a, "min_log_m", min_m, 0.0, INFINITY);
}

}  // namespace

Artifact run_experiment(const RunConfig& cfg) {
  cfg.validate();
  Artifact a;
  a.summary["kind"] = to_string(cfg.kind);
  a.summary["seed"] = cfg.seed;
  a.summary["config"] = dump_config(cfg);
  const bool sim = cfg.kind == Kind::simulate || cfg.kind == Kind::stability ||
                   cfg.kind == Kind::inflation;
  if (sim) {
    const double T = cfg.resolved_t_end();
    a.summary["eps"] = cfg.eps;
    a.summary["t_end"] = T;
    a.summary["implied_delta"] = cfg.eps * std::pow(T, 1.5);
  }
  a.summary["results"] = ordered_json::object();
  switch (cfg.kind) {
    case Kind::linear_sweep: run_linear_sweep(a, cfg); break;
    case Kind::simulate: run_simulate(a, cfg); break;
    case Kind::stability: run_stability(a, cfg); break;
    case Kind::inflation: run_inflation(a, cfg); break;
    case Kind::echo: run_echo(a, cfg); break;
    case Kind::weights_audit: run_weights_audit(a, cfg); break;
  }
  ordered_json as = ordered_json::array();
  for (const auto& x : a.assertions)
    as.push_back({{"name", x.name}, {"pass", x.pass}, {"value", x.value},
                  {"lo", std::isfinite(x.lo) ? ordered_json(x.lo) : ordered_json(nullptr)},
                  {"hi", std::isfinite(x.hi) ? ordered_json(x.hi) : ordered_json(nullptr)}});
  a.summary["assertions"] = as;
  a.summary["all_pass"] = a.ok();
  a.files.push_back("summary.json");
  a.summary["files"] = a.files;
  if (!cfg.out.empty()) {
    fs::create_directories(cfg.out);
    std::ofstream out(fs::path(cfg.out) / "summary.json", std::ios::binary);
    out << a.summary.dump(2) << '\n';
  } else {
    a.files.pop_back();
    a.summary["files"] = a.files;
  }
  return a;
}

}  // namespace shearmhd::experiments
