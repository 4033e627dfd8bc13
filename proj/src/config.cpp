#include "shearmhd/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "shearmhd/errors.hpp"
#include "shearmhd/spectral.hpp"

namespace shearmhd::experiments {

namespace {

struct KindName {
  Kind kind;
  const char* name;
};
constexpr KindName kKinds[] = {{Kind::linear_sweep, "linear-sweep"}, {Kind::simulate, "simulate"},
                               {Kind::stability, "stability"},       {Kind::inflation, "inflation"},
                               {Kind::echo, "echo"},                 {Kind::weights_audit, "weights-audit"}};

template <class E>
struct EnumName {
  E value;
  const char* name;
};
constexpr EnumName<TEndPolicy> kPolicies[] = {{TEndPolicy::absolute, "absolute"},
                                              {TEndPolicy::eps_two_thirds, "eps_two_thirds"},
                                              {TEndPolicy::eps_half, "eps_half"}};
constexpr EnumName<Recipe> kRecipes[] = {{Recipe::single_mode, "single_mode"},
                                         {Recipe::random_band, "random_band"}};
constexpr EnumName<DataField> kFields[] = {
    {DataField::phi, "phi"}, {DataField::G, "G"}, {DataField::both, "both"}};
constexpr EnumName<echo::Coupling> kCouplings[] = {{echo::Coupling::fixed, "fixed"},
                                                   {echo::Coupling::regime_matched, "regime_matched"}};

template <class E, size_t n>
E enum_from(const EnumName<E> (&table)[n], const std::string& s, const char* key) {
  for (const auto& e : table)
    if (s == e.name) return e.value;
  std::string opts;
  for (const auto& e : table) opts += std::string(opts.empty() ? "" : ", ") + e.name;
  throw ConfigError(std::string("config: ") + key + " must be one of {" + opts + "}, got '" + s + "'");
}

template <class E, size_t n>
const char* enum_name(const EnumName<E> (&table)[n], E v) {
  for (const auto& e : table)
    if (e.value == v) return e.name;
  return "?";
}

// One config key: how to read it from a node and how to write it back.
struct Field {
  const char* name;
  std::function<void(const YAML::Node&, RunConfig&)> set;
  std::function<void(YAML::Emitter&, const RunConfig&)> put;
};

template <class T, class Ref>
Field plain(const char* name, Ref ref) {
  return {name,
          [ref, name](const YAML::Node& n, RunConfig& c) {
            try {
              ref(c) = n.as<T>();
            } catch (const YAML::Exception&) {
              throw ConfigError(std::string("config: cannot read '") + name + "'");
            }
          },
          [ref](YAML::Emitter& e, const RunConfig& c) {
            e << ref(const_cast<RunConfig&>(c));
          }};
}

template <class E, size_t n, class Ref>
Field enumerated(const char* name, const EnumName<E> (&table)[n], Ref ref) {
  return {name,
          [&table, ref, name](const YAML::Node& node, RunConfig& c) {
            ref(c) = enum_from(table, node.as<std::string>(), name);
          },
          [&table, ref](YAML::Emitter& e, const RunConfig& c) {
            e << enum_name(table, ref(const_cast<RunConfig&>(c)));
          }};
}

#define KEY(T, name, member) plain<T>(name, [](RunConfig& c) -> T& { return c.member; })

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      {"kind",
       [](const YAML::Node& n, RunConfig& c) { c.kind = kind_from_string(n.as<std::string>()); },
       [](YAML::Emitter& e, const RunConfig& c) { e << to_string(c.kind); }},
      KEY(unsigned long, "seed", seed),
      KEY(int, "threads", threads),
      KEY(std::string, "out", out),
      KEY(int, "nx", nx),
      KEY(int, "ny", ny),
      KEY(double, "ly", ly),
      KEY(double, "dealias", dealias),
      KEY(double, "nu", nu),
      KEY(double, "alpha", alpha),
      KEY(double, "eps", eps),
      KEY(bool, "nonlinear", nonlinear),
      enumerated("t_end_policy", kPolicies, [](RunConfig& c) -> TEndPolicy& { return c.t_end_policy; }),
      KEY(double, "t_end", t_end),
      KEY(double, "t_end_c", t_end_c),
      KEY(double, "dt", dt),
      KEY(double, "cfl_safety", cfl_safety),
      KEY(double, "sample_every", sample_every),
      enumerated("recipe", kRecipes, [](RunConfig& c) -> Recipe& { return c.recipe; }),
      enumerated("data_field", kFields, [](RunConfig& c) -> DataField& { return c.data_field; }),
      KEY(int, "mode_k", mode_k),
      KEY(int, "mode_m", mode_m),
      KEY(int, "band_k_min", band_k_min),
      KEY(int, "band_k_max", band_k_max),
      KEY(int, "band_m_min", band_m_min),
      KEY(int, "band_m_max", band_m_max),
      KEY(double, "gevrey_sigma", gevrey_sigma),
      KEY(bool, "mean_flow", mean_flow),
      KEY(double, "weight_N", weights.N),
      KEY(double, "weight_s", weights.s),
      KEY(double, "lambda0", weights.lambda0),
      KEY(double, "rho0", weights.rho0),
      KEY(double, "gamma", weights.gamma),
      KEY(double, "rho", weights.rho),
      KEY(int, "j_max", weights.j_max),
      KEY(double, "m_rate", weights.m_rate),
      KEY(int, "k0", k0),
      KEY(bool, "full_diagnostics", full_diagnostics),
      KEY(bool, "identity_check", identity_check),
      KEY(bool, "identity_refine", identity_refine),
      KEY(bool, "linear_baseline", linear_baseline),
      KEY(double, "snapshot_every", snapshot_every),
      KEY(double, "fit_t_lo", fit_t_lo),
      KEY(double, "fit_t_hi", fit_t_hi),
      KEY(double, "assert_energy_ratio", assert_energy_ratio),
      KEY(double, "assert_exponent_lo", assert_exponent_lo),
      KEY(double, "assert_exponent_hi", assert_exponent_hi),
      KEY(double, "assert_discrepancy", assert_discrepancy),
      KEY(double, "assert_identity_tol", assert_identity_tol),
      KEY(double, "assert_identity_gain", assert_identity_gain),
      KEY(int, "sweep_k_max", sweep_k_max),
      KEY(double, "sweep_eta_max", sweep_eta_max),
      KEY(int, "sweep_n_eta", sweep_n_eta),
      KEY(double, "sweep_t_end", sweep_t_end),
      KEY(double, "sweep_rtol", sweep_rtol),
      KEY(double, "sweep_tol", sweep_tol),
      KEY(double, "sweep_output_every", sweep_output_every),
      KEY(std::vector<double>, "echo_etas", echo_etas),
      enumerated("echo_coupling", kCouplings,
                 [](RunConfig& c) -> echo::Coupling& { return c.echo_coupling; }),
      KEY(double, "echo_delta", echo_delta),
      KEY(double, "echo_eps", echo_eps),
      KEY(double, "echo_window", echo_window),
      KEY(double, "echo_link_factor", echo_link_factor),
      KEY(double, "echo_slope_lo", echo_slope_lo),
      KEY(double, "echo_slope_hi", echo_slope_hi),
      KEY(double, "echo_r2", echo_r2),
      KEY(std::vector<double>, "audit_etas", audit_etas),
      KEY(int, "audit_k_max", audit_k_max),
      KEY(int, "audit_n_t", audit_n_t),
      KEY(double, "audit_t_max", audit_t_max),
  };
  return f;
}

#undef KEY

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError("config: " + msg);
}

}  // namespace

const char* to_string(Kind k) {
  for (const auto& e : kKinds)
    if (e.kind == k) return e.name;
  return "?";
}

Kind kind_from_string(const std::string& s) {
  for (const auto& e : kKinds)
    if (s == e.name) return e.kind;
  throw ConfigError("config: unknown experiment kind '" + s + "'");
}

RunConfig defaults_for(Kind kind) {
  RunConfig c;
  c.kind = kind;
  switch (kind) {
    case Kind::stability:
      c.eps = 1e-3;
      c.t_end_policy = TEndPolicy::eps_half;
      c.t_end_c = 0.1;
      c.sample_every = 0.05;
      c.mean_flow = true;
      break;
    case Kind::inflation:
      c.nx = 128;
      c.ny = 256;
      c.eps = 1e-3;
      c.t_end_policy = TEndPolicy::eps_two_thirds;
      c.t_end_c = 0.5;
      c.dt = 0.05;
      c.sample_every = 0.5;
      c.data_field = DataField::phi;
      c.band_k_min = 5;
      c.band_k_max = 6;
      c.band_m_max = 3;
      c.full_diagnostics = false;
      c.linear_baseline = true;
      break;
    case Kind::simulate:
      c.ny = 128;
      c.t_end = 20.0;
      c.dt = 0.025;
      c.sample_every = 0.05;
      // S_t activation well before the resonance t = η/k, see README
      c.data_field = DataField::phi;
      c.band_k_min = 1;
      c.band_k_max = 1;
      c.band_m_min = 8;
      c.band_m_max = 12;
      c.identity_check = true;
      c.identity_refine = true;
      break;
    default:
      break;
  }
  return c;
}

double RunConfig::resolved_t_end() const {
  double t = t_end;
  if (t_end_policy != TEndPolicy::absolute) {
    require(eps > 0.0, "an eps-scaled t_end needs eps > 0");
    t = t_end_c * std::pow(eps, t_end_policy == TEndPolicy::eps_two_thirds ? -2.0 / 3.0 : -0.5);
  }
  require(std::isfinite(t) && t > 0.0, "t_end does not resolve to a positive finite time");
  return t;
}

double RunConfig::resolved_fit_t_hi() const {
  if (fit_t_hi > 0.0) return fit_t_hi;
  require(eps > 0.0, "fit_t_hi = 0 needs eps > 0");
  return 0.5 * std::pow(eps, -2.0 / 3.0);
}

void RunConfig::validate() const {
  require(threads >= 1, "threads must be at least 1");
  switch (kind) {
    case Kind::linear_sweep:
      require(sweep_k_max >= 1, "sweep_k_max must be at least 1");
      require(sweep_n_eta >= 1, "sweep_n_eta must be at least 1");
      require(sweep_eta_max >= 0.0, "sweep_eta_max must be nonnegative");
      require(sweep_t_end > 0.0, "sweep_t_end must be positive");
      require(sweep_rtol > 1e-12 && sweep_rtol < 1e-3, "sweep_rtol outside (1e-12, 1e-3)");
      require(sweep_output_every > 0.0, "sweep_output_every must be positive");
      require(nu > 0.0, "the linear sweep needs nu > 0");
      weights.validate();
      return;
    case Kind::echo:
      require(!echo_etas.empty(), "echo_etas is empty");
      for (double eta : echo_etas) {
        echo::EchoConfig e;
        e.eta = eta;
        e.eps = echo_eps;
        e.coupling = echo_coupling;
        e.delta = echo_delta;
        e.window = echo_window;
        e.validate();
      }
      require(echo_link_factor >= 1.0, "echo_link_factor must be at least 1");
      return;
    case Kind::weights_audit:
      require(!audit_etas.empty(), "audit_etas is empty");
      for (double eta : audit_etas) require(eta > 0.0 && std::isfinite(eta), "audit_etas must be positive");
      require(audit_k_max >= 1, "audit_k_max must be at least 1");
      require(audit_n_t >= 2, "audit_n_t must be at least 2");
      require(audit_t_max >= 0.0, "audit_t_max must be nonnegative");
      weights.validate();
      return;
    default:
      break;
  }
  Grid g = make_grid(nx, ny, ly, dealias);
  require(eps > 0.0 && eps <= 0.1, "eps must lie in (0, 0.1]");
  require(nu >= 0.0 && std::isfinite(alpha), "nu must be nonnegative and alpha finite");
  require(dt > 0.0 && sample_every > 0.0, "dt and sample_every must be positive");
  require(cfl_safety > 0.0 && cfl_safety <= 1.0, "cfl_safety outside (0, 1]");
  const double T = resolved_t_end();
  require(sample_every <= T, "sample_every exceeds t_end");
  require(snapshot_every >= 0.0, "snapshot_every must be nonnegative");
  require(k0 >= 1, "k0 must be at least 1");
  if (recipe == Recipe::single_mode) {
    require(std::abs(mode_k) <= g.k_cut && std::abs(mode_m) <= g.m_cut, "mode outside the retained lattice");
    require(mode_k != 0 || mode_m != 0, "mode (0, 0) carries no perturbation");
  } else {
    require(band_k_min >= 0 && band_k_min <= band_k_max && band_k_max <= g.k_cut,
            "band_k range must satisfy 0 <= band_k_min <= band_k_max <= k_cut");
    require(band_m_min >= 0 && band_m_min <= band_m_max && band_m_max <= g.m_cut,
            "band_m range must satisfy 0 <= band_m_min <= band_m_max <= m_cut");
    require(gevrey_sigma >= 0.0, "gevrey_sigma must be nonnegative");
  }
  if (full_diagnostics || identity_check) weights.validate();
  if (identity_check) {
    require(nu > 0.0, "identity_check needs nu > 0");
    require(full_diagnostics, "identity_check needs full_diagnostics");
  }
  if (nu == 0.0 && data_field != DataField::phi)
    require(false, "nu = 0 runs take data on phi only (G needs nu > 0)");
  if (kind == Kind::inflation) {
    require(data_field == DataField::phi, "inflation data sit on phi (G_in = 0)");
    const int k_lo = recipe == Recipe::single_mode ? std::abs(mode_k) : band_k_min;
    require(k_lo > k0, "inflation data must lie above the cutoff k0");
    require(fit_t_lo > 0.0 && fit_t_lo < resolved_fit_t_hi(), "fit window is empty");
    require(resolved_fit_t_hi() <= T * (1.0 + 1e-12), "fit window ends after t_end");
  }
}

RunConfig parse_config(const std::string& text, Kind kind) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (root.IsNull()) return defaults_for(kind);
  if (!root.IsMap()) throw ConfigError("config: expected a mapping of key: value lines");
  if (root["kind"]) kind = kind_from_string(root["kind"].as<std::string>());
  RunConfig c = defaults_for(kind);
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    bool known = false;
    for (const auto& f : fields())
      if (key == f.name) {
        f.set(kv.second, c);
        known = true;
        break;
      }
    if (!known) throw ConfigError("config: unknown key '" + key + "'");
  }
  return c;
}

RunConfig load_config(const std::string& path, Kind kind) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), kind);
}

std::string dump_config(const RunConfig& c) {
  YAML::Emitter e;
  e << YAML::BeginMap;
  for (const auto& f : fields()) {
    e << YAML::Key << f.name << YAML::Value;
    if (std::string(f.name).rfind("echo_etas", 0) == 0 || std::string(f.name) == "audit_etas")
      e << YAML::Flow;
    f.put(e, c);
  }
  e << YAML::EndMap;
  return e.c_str();
}

}  // namespace shearmhd::experiments
