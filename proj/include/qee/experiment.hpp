#pragma once

// Configuration-driven runs producing the q tables, pooled spectral
// densities, LDOS and survival-probability curves as CSV/JSON files.

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "qee/ensemble.hpp"
#include "qee/observables.hpp"
#include "qee/output.hpp"

namespace qee {

enum class RunMode { qtable, density, ldos, survival };

RunMode parse_mode(const std::string& name);
std::string mode_name(RunMode mode);

struct ExperimentConfig {
  RunMode mode = RunMode::density;

  // Ensemble.
  std::string kind = "FEGOE";
  int N = 12;
  int m = 6;
  /// Body ranks to run; empty means 1..m (density) or 2..m (ldos, survival).
  std::vector<int> k_values;
  /// "pure" (H = V) or "quench" (H = h + lambda V); empty picks pure for
  /// density and quench otherwise.
  std::string hamiltonian;
  std::size_t members = 1000;
  double lambda = 0.5;
  std::uint64_t seed = 1;

  // Observables.
  double window_center = 0.0;
  double delta = 0.2;
  double delta1 = 0.01;
  int bins = 50;
  double bin_lower = -3.0;
  double bin_upper = 3.0;
  double t_max = 5.0;
  int t_steps = 500;

  // q table; empty lists reproduce the fermion and boson tables.
  std::vector<std::string> table_kinds;
  std::vector<std::pair<int, int>> table_systems;
  int k_min = 1;
  int k_max = 0;  ///< 0 means m

  std::filesystem::path out_dir = "out";
  OutputFormat format = OutputFormat::csv;
  unsigned workers = 1;

  /// Throws ConfigError with an actionable message.
  void validate() const;
  std::vector<int> body_ranks() const;
  HamiltonianMode hamiltonian_mode() const;
  Binning binning() const { return {bin_lower, bin_upper, bins}; }
  std::vector<double> times() const { return uniform_grid(0.0, t_max, t_steps); }
  EnsembleRunSpec run_spec(int k) const;
  nlohmann::json to_json() const;
};

/// Parses "N:m" (e.g. "12:6").
std::pair<int, int> parse_system(const std::string& text);

struct OutputFile {
  std::string name;
  std::string sha256;
};

struct RunManifest {
  nlohmann::json config;
  nlohmann::json results = nlohmann::json::object();
  std::vector<OutputFile> files;
  double wall_seconds = 0.0;

  nlohmann::json to_json() const;
};

/// Per-member spectra of one ensemble run, standardized; eigenvectors on request.
std::vector<SpectralResult> standardized_spectra(const EnsembleRunSpec& run, Eigenvectors vectors, unsigned workers);

RunManifest run_qtable(const ExperimentConfig& config);
RunManifest run_density(const ExperimentConfig& config);
RunManifest run_ldos(const ExperimentConfig& config);
RunManifest run_survival(const ExperimentConfig& config);

/// Dispatches on config.mode and writes manifest.json into config.out_dir.
RunManifest run_experiment(const ExperimentConfig& config);

/// Fixed-point q with three decimals, as printed in the tables.
std::string format_q(double q);

}  // namespace qee
