#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qee/error.hpp"
#include "qee/experiment.hpp"
#include "qee/qparam.hpp"

using namespace qee;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("qee_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small(RunMode mode, const std::string& name) {
  ExperimentConfig c;
  c.mode = mode;
  c.kind = "FEGOE";
  c.N = 8;
  c.m = 4;
  c.k_values = {2, 3};
  c.members = 3;
  c.seed = 17;
  c.delta1 = 0.3;
  c.t_steps = 20;
  c.out_dir = scratch(name);
  return c;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QEE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("defaults") {
  const ExperimentConfig c;
  CHECK(c.lambda == 0.5);
  CHECK(c.delta == 0.2);
  CHECK(c.delta1 == 0.01);
  CHECK(c.members == 1000);
  CHECK(c.bins == 50);
  CHECK(c.times().size() == 501);
  CHECK(c.times().back() == 5.0);
}

TEST_CASE("config validation messages") {
  auto c = small(RunMode::density, "invalid");
  c.m = 9;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("m <= N"), ConfigError);
  c = small(RunMode::density, "invalid");
  c.k_values = {5};
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("1 <= k <= m"), ConfigError);
  c = small(RunMode::density, "invalid");
  c.lambda = -0.1;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("lambda"), ConfigError);
  c = small(RunMode::density, "invalid");
  c.kind = "GSE";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small(RunMode::density, "invalid");
  c.hamiltonian = "mixed";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(parse_mode("plot"), ConfigError);
  CHECK_THROWS_AS(parse_format("xml"), ConfigError);
  CHECK_THROWS_AS(parse_system("12-6"), ConfigError);
  CHECK(parse_system("12:6") == std::pair{12, 6});
}

TEST_CASE("default body ranks and Hamiltonian") {
  auto c = small(RunMode::density, "ranks");
  c.k_values.clear();
  CHECK(c.body_ranks() == std::vector<int>{1, 2, 3, 4});
  CHECK(c.hamiltonian_mode() == HamiltonianMode::interaction_only);
  c.mode = RunMode::ldos;
  CHECK(c.body_ranks() == std::vector<int>{2, 3, 4});
  CHECK(c.hamiltonian_mode() == HamiltonianMode::quench);
}

TEST_CASE("q table output") {
  auto c = small(RunMode::qtable, "qtable");
  c.table_kinds.clear();
  const auto m = run_experiment(c);
  const auto text = slurp(c.out_dir / "qtable.csv");
  CHECK(text.find("FEGUE,12,6,1,0.735\n") != std::string::npos);
  CHECK(text.find("FEGUE,12,6,2,0.287\n") != std::string::npos);
  CHECK(text.find("BEGUE,5,10,3,0.664\n") != std::string::npos);
  CHECK(text.find("BEGUE,10,20,20,0.000\n") != std::string::npos);
  CHECK(format_q(-1e-9) == "0.000");

  c.table_kinds = {"FEGUE"};
  c.table_systems = {{4, 6}, {12, 6}};
  const auto m2 = run_experiment(c);
  CHECK(m2.results["invalid_rows"].size() == 6);
  CHECK(slurp(c.out_dir / "qtable.csv").find("FEGUE,12,6,6,0.000") != std::string::npos);
}

TEST_CASE("density run writes files, manifest and unit-area histograms") {
  auto c = small(RunMode::density, "density");
  const auto m = run_experiment(c);
  REQUIRE(m.files.size() == 4);
  for (const auto& f : m.files) CHECK(fs::exists(c.out_dir / f.name));
  CHECK(fs::exists(c.out_dir / "manifest.json"));
  const auto manifest = nlohmann::json::parse(slurp(c.out_dir / "manifest.json"));
  const double q = manifest["results"]["k2"]["q"];
  CHECK(std::abs(q - q_fegoe(8, 4, 2)) <= 1e-12 * std::max(1.0, q));
  CHECK(manifest["results"]["k2"]["dimension"] == 70);
  CHECK(manifest["config"]["seed"] == 17);

  const auto csv = slurp(c.out_dir / "density_k2.csv");
  CHECK(csv.rfind("bin_center,density,std_error\n", 0) == 0);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  double area = 0;
  while (std::getline(in, line)) {
    double center, density;
    char comma;
    std::istringstream(line) >> center >> comma >> density;
    area += density * 6.0 / 50;
  }
  CHECK(area == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("members = 1 smoke run") {
  auto c = small(RunMode::density, "single");
  c.members = 1;
  const auto m = run_experiment(c);
  CHECK(m.files.size() == 4);
  CHECK_FALSE(m.results["k2"].contains("chi2_per_bin"));
}

TEST_CASE("reruns are checksum identical") {
  for (auto mode : {RunMode::density, RunMode::ldos, RunMode::survival}) {
    auto c = small(mode, "rerun_a");
    const auto a = run_experiment(c);
    c.out_dir = scratch("rerun_b");
    c.workers = 2;
    const auto b = run_experiment(c);
    REQUIRE(a.files.size() == b.files.size());
    for (std::size_t i = 0; i < a.files.size(); ++i) CHECK(a.files[i].sha256 == b.files[i].sha256);
  }
}

TEST_CASE("survival run records qualifying states and starts at one") {
  auto c = small(RunMode::survival, "survival");
  c.format = OutputFormat::json;
  const auto m = run_experiment(c);
  const auto counts = m.results["k2"]["qualifying_states"];
  CHECK(counts.size() == 3);
  const auto doc = nlohmann::json::parse(slurp(c.out_dir / "survival_k2.json"));
  CHECK(doc["F"][0] == 1.0);
  CHECK(doc["metadata"]["members"] == 3);
}

TEST_CASE("empty survival window is a numerical error") {
  auto c = small(RunMode::survival, "empty");
  c.delta1 = 1e-9;
  CHECK_THROWS_AS(run_experiment(c), EmptyWindowError);
}

TEST_CASE("command-line exit codes") {
  const auto out = scratch("cli").string();
  CHECK(run_cli("qtable --out " + out) == 0);
  CHECK(fs::exists(fs::path(out) / "qtable.csv"));
  CHECK(fs::exists(fs::path(out) / "manifest.json"));
  CHECK(run_cli("density --kind FEGOE -N 4 -m 6 --out " + out) == 2);
  CHECK(run_cli("density --lambda -1 --out " + out) == 2);
  CHECK(run_cli("density --format xml --out " + out) == 2);
  CHECK(run_cli("--members 2") == 2);
  CHECK(run_cli("survival -N 6 -m 3 -k 2 --members 2 --delta1 1e-9 --out " + out) == 3);

  const auto cfg = scratch("cfg");
  fs::create_directories(cfg);
  std::ofstream(cfg / "run.ini") << "kind = FEGUE\norbitals = 6\nparticles = 3\nrank = 2\nmembers = 2\nout = " << out
                                 << "\n";
  CHECK(run_cli("density --config " + (cfg / "run.ini").string() + " --members 3") == 0);
  const auto manifest = nlohmann::json::parse(slurp(fs::path(out) / "manifest.json"));
  CHECK(manifest["config"]["kind"] == "FEGUE");
  CHECK(manifest["config"]["members"] == 3);
}
