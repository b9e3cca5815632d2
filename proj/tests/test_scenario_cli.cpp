#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kgflow/errors.hpp"
#include "kgflow/runner.hpp"
#include "kgflow/scenario.hpp"

using namespace kgflow;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_root(const std::string& tag) {
  auto dir = fs::temp_directory_path() / ("kgflow_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("bundled registry ships the documented scenarios") {
  const auto& reg = bundled_scenarios();
  CHECK(reg.size() >= 6);
  CHECK(reg.count("plane_wave") == 1);
  CHECK(reg.count("lowspeed_compare") == 1);
  for (const auto& [name, text] : reg) {
    INFO(name);
    CHECK_NOTHROW((void)parse_scenario(text));
  }
}

TEST_CASE("parser: malformed input names the offending line or field") {
  CHECK_THROWS_WITH_AS((void)parse_scenario("key = 1\n"), doctest::Contains("section"),
                       ScenarioError);

  // missing [grid] for a solver pipeline
  const std::string no_grid = R"([scenario]
name = broken
[pipeline]
stages = kg, madelung
[initial]
type = plane_wave
k = 1
)";
  CHECK_THROWS_WITH_AS((void)parse_scenario(no_grid), doctest::Contains("grid"), ScenarioError);

  const std::string bad_number = R"([scenario]
name = broken
[grid]
nx = banana
nt = 8
dx = 0.1
dt = 0.1
[pipeline]
stages = kg
[initial]
type = plane_wave
k = 1
)";
  CHECK_THROWS_WITH_AS((void)parse_scenario(bad_number), doctest::Contains("nx"), ScenarioError);

  const std::string unknown_key = R"([scenario]
name = broken
typo_field = 3
[pipeline]
stages = kinematics-suite
)";
  CHECK_THROWS_WITH_AS((void)parse_scenario(unknown_key), doctest::Contains("typo_field"),
                       ScenarioError);
}

TEST_CASE("parser: pipeline dependencies are enforced") {
  const std::string hp_without_kg = R"([scenario]
name = broken
[grid]
nx = 16
nt = 8
dx = 0.1
dt = 0.05
[initial]
type = plane_wave
k = 1
[pipeline]
stages = madelung
)";
  CHECK_THROWS_WITH_AS((void)parse_scenario(hp_without_kg), doctest::Contains("madelung"),
                       ScenarioError);
}

TEST_CASE("run_target maps failure classes to exit codes") {
  RunOptions opt;
  opt.out_root = temp_root("exit_codes");

  SUBCASE("unknown target: 2") {
    auto rep = run_target("definitely_not_a_scenario", opt);
    CHECK(rep.exit_code == 2);
  }

  SUBCASE("CFL violation: 3") {
    const auto path = opt.out_root / "unstable.scn";
    std::ofstream(path) << R"([scenario]
name = unstable
[grid]
nx = 64
nt = 16
dx = 0.05
dt = 0.2
[initial]
type = plane_wave
k = 1
[pipeline]
stages = kg
)";
    auto rep = run_target(path.string(), opt);
    CHECK(rep.exit_code == 3);
    CHECK(rep.message.find("CFL") != std::string::npos);
  }

  SUBCASE("divergent evolution: 4") {
    const auto path = opt.out_root / "divergent.scn";
    std::ofstream(path) << R"([scenario]
name = divergent
[physics]
mass = 120
[grid]
nx = 64
nt = 400
dx = 0.1
dt = 0.05
[initial]
type = plane_wave
k = 0
[pipeline]
stages = kg
)";
    auto rep = run_target(path.string(), opt);
    CHECK(rep.exit_code == 4);
    CHECK(rep.message.find("step") != std::string::npos);
  }
}

TEST_CASE("plane_wave scenario meets its manifest guarantees") {
  RunOptions opt;
  opt.out_root = temp_root("plane_wave");
  auto rep = run_target("plane_wave", opt);
  REQUIRE(rep.exit_code == 0);
  CHECK(std::stod(rep.manifest.at("kg.charge_drift_rel")) <= 1e-6);
  CHECK(std::stod(rep.manifest.at("hidden.mass_shell_max")) <= 1e-10);
  CHECK(fs::exists(rep.out_dir / "manifest.txt"));
  CHECK(fs::exists(rep.out_dir / "rho.csv"));
  CHECK(fs::exists(rep.out_dir / "phi.csv"));
}

TEST_CASE("identical runs produce byte-identical manifests and artifacts") {
  RunOptions opt1, opt2;
  opt1.out_root = temp_root("repro_a");
  opt2.out_root = temp_root("repro_b");
  for (const char* name : {"superposition", "gaussian_schrodinger"}) {
    auto r1 = run_target(name, opt1);
    auto r2 = run_target(name, opt2);
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    CHECK(slurp(r1.out_dir / "manifest.txt") == slurp(r2.out_dir / "manifest.txt"));
    CHECK(!slurp(r1.out_dir / "manifest.txt").empty());
  }
}

TEST_CASE("field artifacts round-trip through the documented format") {
  RunOptions opt;
  opt.out_root = temp_root("roundtrip");
  auto rep = run_target("superposition", opt);
  REQUIRE(rep.exit_code == 0);
  std::ifstream in(rep.out_dir / "rho.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,x,rho");
  // parse every row back and confirm 17-significant-digit values survive
  std::string line;
  int rows = 0;
  double first_rho = -1.0;
  while (std::getline(in, line)) {
    double t, x, rho;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x, &rho) == 3);
    if (rows == 0) first_rho = rho;
    ++rows;
  }
  CHECK(rows == 256 * 256);
  // re-format the first parsed value and compare with the file text
  std::ifstream in2(rep.out_dir / "rho.csv");
  std::getline(in2, header);
  std::getline(in2, line);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", first_rho);
  CHECK(line.substr(line.rfind(',') + 1) == buf);
}

TEST_CASE("file-sourced initial data round-trips through the runner") {
  RunOptions opt;
  opt.out_root = temp_root("file_init");
  const auto data = opt.out_root / "init.dat";
  {
    std::ofstream out(data);
    for (int j = 0; j < 64; ++j) {
      const double x = j * 0.1;
      out << std::cos(0.5 * x) << ' ' << std::sin(0.5 * x) << ' ' << std::sin(0.5 * x) << ' '
          << -std::cos(0.5 * x) << "\n";
    }
  }
  const auto path = opt.out_root / "file_init.scn";
  std::ofstream(path) << R"([scenario]
name = file_init
[grid]
nx = 64
nt = 32
dx = 0.1
dt = 0.05
[initial]
type = file
path = )" << data.string() << R"(
[pipeline]
stages = kg, madelung
[outputs]
fields = rho
)";
  auto rep = run_target(path.string(), opt);
  CHECK(rep.exit_code == 0);
  CHECK(fs::exists(rep.out_dir / "rho.csv"));
}

TEST_CASE("the thread hint never changes artifacts") {
  RunOptions serial_opt, hinted_opt;
  serial_opt.out_root = temp_root("threads_a");
  hinted_opt.out_root = temp_root("threads_b");
  hinted_opt.threads_hint = 3;
  auto r1 = run_target("superposition", serial_opt);
  auto r2 = run_target("superposition", hinted_opt);
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(r1.out_dir / "manifest.txt") == slurp(r2.out_dir / "manifest.txt"));
}

TEST_CASE("every bundled scenario runs to completion") {
  RunOptions opt;
  opt.out_root = temp_root("all_bundled");
  for (const auto& [name, text] : bundled_scenarios()) {
    INFO(name);
    auto rep = run_target(name, opt);
    CHECK(rep.exit_code == 0);
    CHECK(fs::exists(rep.out_dir / "manifest.txt"));
  }
  // the comparison scenario's report columns grow away from t = 0
  std::ifstream in(opt.out_root / "lowspeed_compare" / "lowspeed_report.csv");
  REQUIRE(in.good());
  std::string header, first, line, last;
  std::getline(in, header);
  std::getline(in, first);
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  auto col = [](const std::string& row, int field) {
    std::istringstream ss(row);
    std::string item;
    for (int i = 0; i <= field; ++i) std::getline(ss, item, ',');
    return std::stod(item);
  };
  CHECK(col(last, 2) > col(first, 2));  // density discrepancy accumulates
}
