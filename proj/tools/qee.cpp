// qee: q tables, spectral densities, LDOS and survival probabilities of
// embedded Gaussian ensembles.

#include <CLI11.hpp>
#include <iostream>

#include "qee/error.hpp"
#include "qee/experiment.hpp"
#include "qee/parallel.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  qee::ExperimentConfig cfg;
  cfg.workers = qee::default_workers();
  std::string format = "csv";
  std::string out = cfg.out_dir.string();
  std::vector<std::string> systems;

  CLI::App app{"Embedded Gaussian ensembles and q-Hermite theory curves"};
  app.set_config("--config", "", "key = value file; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--kind", cfg.kind, "FEGOE, FEGUE, BEGOE or BEGUE")->capture_default_str();
  app.add_option("-N,--orbitals", cfg.N, "single-particle states")->capture_default_str();
  app.add_option("-m,--particles", cfg.m, "particles")->capture_default_str();
  app.add_option("-k,--rank", cfg.k_values, "body ranks (default: all meaningful ranks)");
  app.add_option("--hamiltonian", cfg.hamiltonian, "pure (H = V) or quench (H = h + lambda V)");
  app.add_option("--members", cfg.members, "ensemble members")->capture_default_str();
  app.add_option("--lambda", cfg.lambda, "interaction strength in quench mode")->capture_default_str();
  app.add_option("--seed", cfg.seed, "base seed")->capture_default_str();
  app.add_option("--center", cfg.window_center, "window center on the standardized axis")->capture_default_str();
  app.add_option("--delta", cfg.delta, "LDOS window half-width")->capture_default_str();
  app.add_option("--delta1", cfg.delta1, "survival window half-width")->capture_default_str();
  app.add_option("--bins", cfg.bins, "histogram bins")->capture_default_str();
  app.add_option("--bin-lower", cfg.bin_lower, "histogram lower edge")->capture_default_str();
  app.add_option("--bin-upper", cfg.bin_upper, "histogram upper edge")->capture_default_str();
  app.add_option("--t-max", cfg.t_max, "last time point")->capture_default_str();
  app.add_option("--t-steps", cfg.t_steps, "time intervals")->capture_default_str();
  app.add_option("--kinds", cfg.table_kinds, "qtable: ensemble kinds");
  app.add_option("--systems", systems, "qtable: N:m pairs");
  app.add_option("--k-min", cfg.k_min, "qtable: first k")->capture_default_str();
  app.add_option("--k-max", cfg.k_max, "qtable: last k (0 = m)")->capture_default_str();
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_option("--format", format, "csv or json")->capture_default_str();
  app.add_option("--workers", cfg.workers, "worker threads")->capture_default_str();

  app.add_subcommand("qtable", "q for each (kind, N, m, k) to three decimals");
  app.add_subcommand("density", "pooled spectral density and theory curve");
  app.add_subcommand("ldos", "local density of states around the window center");
  app.add_subcommand("survival", "survival probability after a quench");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    cfg.mode = qee::parse_mode(app.get_subcommands().front()->get_name());
    cfg.format = qee::parse_format(format);
    cfg.out_dir = out;
    for (const auto& s : systems) cfg.table_systems.push_back(qee::parse_system(s));
    cfg.validate();
    const auto manifest = qee::run_experiment(cfg);
    std::cout << "wrote " << manifest.files.size() << " file(s) and manifest.json to " << cfg.out_dir.string()
              << " in " << manifest.wall_seconds << " s\n";
    return 0;
  } catch (const qee::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const qee::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const qee::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
