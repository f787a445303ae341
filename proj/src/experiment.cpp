#include "qee/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qee/error.hpp"
#include "qee/parallel.hpp"
#include "qee/qparam.hpp"

namespace qee {

using nlohmann::json;

namespace {

template <class... Parts>
[[noreturn]] void reject(const Parts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  throw ConfigError(os.str());
}

std::string stem(const std::string& name, int k, OutputFormat format) {
  return name + "_k" + std::to_string(k) + format_extension(format);
}

SystemSpec system_for(const ExperimentConfig& c, int k) {
  return {c.N, c.m, k, EnsembleKind::parse(c.kind)};
}

// Writes either CSV or JSON and records the checksum.
void emit(RunManifest& manifest, const ExperimentConfig& c, const std::string& name, const std::string& csv,
          const json& doc) {
  const auto text = c.format == OutputFormat::csv ? csv : doc.dump(2) + "\n";
  manifest.files.push_back({name, write_file(c.out_dir / name, text)});
}

json system_json(const SystemSpec& s) {
  return {{"kind", s.kind.name()}, {"N", s.N}, {"m", s.m}, {"k", s.k}};
}

json metadata(const ExperimentConfig& c, const SystemSpec& s, double q) {
  return {{"system", system_json(s)}, {"seed", c.seed}, {"members", c.members}, {"q", q}};
}

// q as recorded in the manifest: 12 significant digits.
json manifest_q(double q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", q);
  return json::parse(buf);
}

}  // namespace

RunMode parse_mode(const std::string& name) {
  if (name == "qtable") return RunMode::qtable;
  if (name == "density") return RunMode::density;
  if (name == "ldos") return RunMode::ldos;
  if (name == "survival") return RunMode::survival;
  reject("unknown mode '", name, "' (expected qtable, density, ldos or survival)");
}

std::string mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::qtable: return "qtable";
    case RunMode::density: return "density";
    case RunMode::ldos: return "ldos";
    case RunMode::survival: return "survival";
  }
  return "?";
}

std::pair<int, int> parse_system(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) reject("system '", text, "' must be written N:m, e.g. 12:6");
  try {
    std::size_t used_n = 0, used_m = 0;
    const int N = std::stoi(text.substr(0, colon), &used_n);
    const int m = std::stoi(text.substr(colon + 1), &used_m);
    if (used_n != colon || used_m != text.size() - colon - 1) throw std::invalid_argument(text);
    return {N, m};
  } catch (const std::logic_error&) {
    reject("system '", text, "' must be written N:m with integers, e.g. 12:6");
  }
}

std::vector<int> ExperimentConfig::body_ranks() const {
  if (!k_values.empty()) return k_values;
  std::vector<int> ks;
  for (int k = mode == RunMode::density ? 1 : 2; k <= m; ++k) ks.push_back(k);
  return ks;
}

HamiltonianMode ExperimentConfig::hamiltonian_mode() const {
  if (hamiltonian.empty()) return mode == RunMode::density ? HamiltonianMode::interaction_only : HamiltonianMode::quench;
  if (hamiltonian == "pure") return HamiltonianMode::interaction_only;
  if (hamiltonian == "quench") return HamiltonianMode::quench;
  reject("hamiltonian must be 'pure' or 'quench', got '", hamiltonian, "'");
}

EnsembleRunSpec ExperimentConfig::run_spec(int k) const {
  EnsembleRunSpec run;
  run.system = system_for(*this, k);
  run.members = members;
  run.lambda = lambda;
  run.base_seed = seed;
  run.mode = hamiltonian_mode();
  return run;
}

void ExperimentConfig::validate() const {
  if (workers == 0) reject("workers must be at least 1");
  if (mode == RunMode::qtable) {
    for (const auto& name : table_kinds) {
      try {
        EnsembleKind::parse(name);
      } catch (const std::exception&) {
        reject("unknown ensemble kind '", name, "' (expected FEGOE, FEGUE, BEGOE or BEGUE)");
      }
    }
    if (k_min < 1) reject("k_min must be at least 1, got ", k_min);
    if (k_max != 0 && k_max < k_min) reject("k_max (", k_max, ") is below k_min (", k_min, ")");
    return;
  }

  EnsembleKind kind_value;
  try {
    kind_value = EnsembleKind::parse(kind);
  } catch (const std::exception&) {
    reject("unknown ensemble kind '", kind, "' (expected FEGOE, FEGUE, BEGOE or BEGUE)");
  }
  if (N < 1) reject("N must be at least 1, got ", N);
  if (m < 1) reject("m must be at least 1, got ", m);
  if (kind_value.statistics == Statistics::fermion && m > N)
    reject("fermion systems need m <= N, got m = ", m, " > N = ", N, "; lower m or raise N");
  if (members < 1) reject("members must be at least 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) reject("lambda must be a finite value >= 0, got ", lambda);
  for (int k : body_ranks()) {
    if (k < 1 || k > m) reject("body rank k = ", k, " must satisfy 1 <= k <= m = ", m);
  }
  if (body_ranks().empty()) reject("no body ranks selected; set k or raise m");
  hamiltonian_mode();
  if (!(bin_upper > bin_lower)) reject("bin_upper (", bin_upper, ") must exceed bin_lower (", bin_lower, ")");
  if (bins < 1) reject("bins must be at least 1, got ", bins);
  if (!(delta > 0.0)) reject("delta must be > 0, got ", delta);
  if (!(delta1 > 0.0)) reject("delta1 must be > 0, got ", delta1);
  if (!(t_max > 0.0)) reject("t_max must be > 0, got ", t_max);
  if (t_steps < 1) reject("t_steps must be at least 1, got ", t_steps);
}

json ExperimentConfig::to_json() const {
  json sys_list = json::array();
  for (const auto& [n, mm] : table_systems) sys_list.push_back(std::to_string(n) + ":" + std::to_string(mm));
  return {{"mode", mode_name(mode)},
          {"kind", kind},
          {"N", N},
          {"m", m},
          {"k", body_ranks()},
          {"hamiltonian", hamiltonian_mode() == HamiltonianMode::quench ? "quench" : "pure"},
          {"members", members},
          {"lambda", lambda},
          {"seed", seed},
          {"window_center", window_center},
          {"delta", delta},
          {"delta1", delta1},
          {"bins", bins},
          {"bin_lower", bin_lower},
          {"bin_upper", bin_upper},
          {"t_max", t_max},
          {"t_steps", t_steps},
          {"table_kinds", table_kinds},
          {"table_systems", sys_list},
          {"k_min", k_min},
          {"k_max", k_max},
          {"out", out_dir.string()},
          {"format", format == OutputFormat::csv ? "csv" : "json"}};
}

json RunManifest::to_json() const {
  json f = json::array();
  for (const auto& file : files) f.push_back({{"name", file.name}, {"sha256", file.sha256}});
  return {{"config", config}, {"results", results}, {"files", f}, {"wall_seconds", wall_seconds}};
}

std::string format_q(double q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", q);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::vector<SpectralResult> standardized_spectra(const EnsembleRunSpec& run, Eigenvectors vectors, unsigned workers) {
  const MemberGenerator gen(run);
  return parallel_map(run.members, workers,
                      [&](std::size_t i) { return standardize(diagonalize(gen.generate(i), vectors)); });
}

RunManifest run_qtable(const ExperimentConfig& c) {
  c.validate();
  std::vector<std::pair<std::string, std::pair<int, int>>> rows;
  if (c.table_kinds.empty() && c.table_systems.empty()) {
    for (const char* kind : {"FEGOE", "FEGUE"})
      for (auto sys : {std::pair{12, 6}, std::pair{20, 8}, std::pair{50, 10}}) rows.push_back({kind, sys});
    for (const char* kind : {"BEGUE", "BEGOE"})
      for (auto sys : {std::pair{5, 10}, std::pair{10, 20}}) rows.push_back({kind, sys});
  } else {
    const std::vector<std::string> kinds = c.table_kinds.empty() ? std::vector<std::string>{c.kind} : c.table_kinds;
    const auto systems = c.table_systems.empty() ? std::vector<std::pair<int, int>>{{c.N, c.m}} : c.table_systems;
    for (const auto& kind : kinds)
      for (auto sys : systems) rows.push_back({kind, sys});
  }

  RunManifest manifest;
  manifest.config = c.to_json();
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream csv;
  csv << "kind,N,m,k,q\n";
  json table = json::array();
  json errors = json::array();
  for (const auto& [kind, sys] : rows) {
    const auto [N, m] = sys;
    const int kmax = c.k_max == 0 ? m : c.k_max;
    for (int k = c.k_min; k <= kmax; ++k) {
      const SystemSpec spec{N, m, k, EnsembleKind::parse(kind)};
      try {
        spec.validate();
        const double q = q_for(spec);
        csv << kind << ',' << N << ',' << m << ',' << k << ',' << format_q(q) << '\n';
        table.push_back({{"kind", kind}, {"N", N}, {"m", m}, {"k", k}, {"q", format_q(q)}});
      } catch (const std::exception& e) {
        errors.push_back({{"row", system_json(spec)}, {"error", e.what()}});
      }
    }
  }
  emit(manifest, c, std::string("qtable") + format_extension(c.format), csv.str(), json{{"rows", table}});
  manifest.results["invalid_rows"] = errors;
  manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return manifest;
}

RunManifest run_density(const ExperimentConfig& c) {
  c.validate();
  RunManifest manifest;
  manifest.config = c.to_json();
  const auto start = std::chrono::steady_clock::now();
  const auto binning = c.binning();
  const auto grid = uniform_grid(binning.lower, binning.upper, 600);
  for (int k : c.body_ranks()) {
    const auto run = c.run_spec(k);
    run.validate();
    const double q = q_for(run.system);
    const auto spectra = standardized_spectra(run, Eigenvectors::skip, c.workers);
    const auto hist = density_histogram(spectra, binning);
    auto theory = theory_density(grid, QValue(q), 0.0, 1.0);
    const auto meta = metadata(c, run.system, q);
    emit(manifest, c, stem("density", k, c.format), histogram_csv(hist), histogram_json(hist, meta));
    emit(manifest, c, stem("density_theory", k, c.format), curve_csv(theory), curve_json(theory, meta));

    json r{{"q", manifest_q(q)},
           {"dimension", spectra.empty() ? 0 : spectra.front().energies.size()},
           {"mu4", moments_of_spectrum(spectra, 4)}};
    if (c.members >= 2) r["chi2_per_bin"] = chi_square_per_bin(hist, theory_bin_mass(binning, QValue(q), 0.0, 1.0));
    manifest.results["k" + std::to_string(k)] = r;
  }
  manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return manifest;
}

RunManifest run_ldos(const ExperimentConfig& c) {
  c.validate();
  RunManifest manifest;
  manifest.config = c.to_json();
  const auto start = std::chrono::steady_clock::now();
  const auto binning = c.binning();
  const WindowSpec window{c.window_center, c.delta};
  const auto grid = uniform_grid(binning.lower, binning.upper, 600);
  for (int k : c.body_ranks()) {
    const auto run = c.run_spec(k);
    run.validate();
    const double q = q_for(run.system);
    const MemberGenerator gen(run);
    const auto per_member = parallel_map(run.members, c.workers, [&](std::size_t i) {
      return member_ldos(standardize(diagonalize(gen.generate(i))), window, binning, i);
    });
    std::vector<MemberBins> bins;
    LdosMoments moments;
    json states = json::array();
    for (const auto& mem : per_member) {
      bins.push_back(mem.bins);
      moments += mem.moments;
      states.push_back(mem.moments.states);
    }
    const auto hist = merge_members(bins, binning, "E");
    const double ec = moments.centroid(), width = moments.width();
    const auto theory = theory_density(grid, QValue(q), ec, width);
    const auto meta = metadata(c, run.system, q);
    emit(manifest, c, stem("ldos", k, c.format), histogram_csv(hist), histogram_json(hist, meta));
    emit(manifest, c, stem("ldos_theory", k, c.format), curve_csv(theory), curve_json(theory, meta));

    json r{{"q", manifest_q(q)},
           {"dimension", gen.basis().size()},
           {"ldos_centroid", ec},
           {"ldos_width", width},
           {"window_states", states}};
    if (c.members >= 2) r["chi2_per_bin"] = chi_square_per_bin(hist, theory_bin_mass(binning, QValue(q), ec, width));
    manifest.results["k" + std::to_string(k)] = r;
  }
  manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return manifest;
}

RunManifest run_survival(const ExperimentConfig& c) {
  c.validate();
  RunManifest manifest;
  manifest.config = c.to_json();
  const auto start = std::chrono::steady_clock::now();
  const auto times = c.times();
  const WindowSpec window{c.window_center, c.delta1};
  for (int k : c.body_ranks()) {
    const auto run = c.run_spec(k);
    run.validate();
    const double q = q_for(run.system);
    const MemberGenerator gen(run);
    const auto per_member = parallel_map(run.members, c.workers, [&](std::size_t i) {
      return member_survival(standardize(diagonalize(gen.generate(i))), times, window);
    });
    json states = json::array();
    for (const auto& mem : per_member) states.push_back(mem.states);
    const auto mc = merge_survival(per_member, times);
    const auto theory = survival_theory(QValue(q), times);
    const auto meta = metadata(c, run.system, q);
    emit(manifest, c, stem("survival", k, c.format), curve_csv(mc), curve_json(mc, meta));
    emit(manifest, c, stem("survival_theory", k, c.format), curve_csv(theory), curve_json(theory, meta));
    manifest.results["k" + std::to_string(k)] = {
        {"q", manifest_q(q)}, {"dimension", gen.basis().size()}, {"qualifying_states", states}};
  }
  manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return manifest;
}

RunManifest run_experiment(const ExperimentConfig& c) {
  RunManifest manifest;
  switch (c.mode) {
    case RunMode::qtable: manifest = run_qtable(c); break;
    case RunMode::density: manifest = run_density(c); break;
    case RunMode::ldos: manifest = run_ldos(c); break;
    case RunMode::survival: manifest = run_survival(c); break;
  }
  write_file(c.out_dir / "manifest.json", manifest.to_json().dump(2) + "\n");
  return manifest;
}

}  // namespace qee
