#include <CLI11.hpp>
#include <iostream>

#include "shearmhd/errors.hpp"
#include "shearmhd/experiments.hpp"

using namespace shearmhd;
using namespace shearmhd::experiments;

int main(int argc, char** argv) {
  CLI::App app{"Sheared-frame MHD laboratory"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  unsigned long seed = 0;
  int threads = 0;
  const Kind kinds[] = {Kind::linear_sweep, Kind::simulate, Kind::stability,
                        Kind::inflation,    Kind::echo,     Kind::weights_audit};
  for (Kind k : kinds) {
    auto* sub = app.add_subcommand(to_string(k));
    sub->add_option("--config", config_path, "YAML file of key: value settings");
    sub->add_option("--out", out_dir, "output directory (default out/<subcommand>)");
    sub->add_option("--seed", seed, "random seed (overrides the config)");
    sub->add_option("--threads", threads, "worker threads (overrides the config)")
        ->check(CLI::PositiveNumber);
  }
  CLI11_PARSE(app, argc, argv);

  const Kind kind = kind_from_string(app.get_subcommands().front()->get_name());
  try {
    RunConfig cfg = config_path.empty() ? defaults_for(kind) : load_config(config_path, kind);
    if (cfg.kind != kind)
      throw ConfigError(std::string("config kind '") + to_string(cfg.kind) +
                        "' does not match the subcommand");
    if (app.get_subcommands().front()->count("--seed")) cfg.seed = seed;
    if (threads > 0) cfg.threads = threads;
    if (!out_dir.empty()) cfg.out = out_dir;
    if (cfg.out.empty()) cfg.out = std::string("out/") + to_string(kind);

    const Artifact a = run_experiment(cfg);
    for (const auto& x : a.assertions)
      std::cout << (x.pass ? "PASS " : "FAIL ") << x.name << " = " << x.value << '\n';
    std::cout << "wrote " << a.files.size() << " files to " << cfg.out << '\n';
    return a.ok() ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
