#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "kgflow/scenario.hpp"

// Scenario execution: run the pipeline, write field/trajectory artifacts
// and a manifest of sorted key = value lines. Identical scenario text and
// rng seed produce byte-identical artifacts.

namespace kgflow {

struct RunOptions {
  std::filesystem::path out_root = "out";
  std::string tolerance_profile = "default";  // default | strict
  int threads_hint = 0;                       // 0: leave the runtime alone
};

struct RunReport {
  int exit_code = 0;  // 0 ok, 2 parse, 3 stability, 4 divergence
  std::string message;
  std::filesystem::path out_dir;
  std::map<std::string, std::string> manifest;
};

/// Bundled scenario registry (name -> scenario text).
const std::map<std::string, std::string>& bundled_scenarios();

/// Run a parsed scenario into out_root/<name>/.
RunReport run_scenario(const Scenario& sc, const std::string& scenario_text,
                       const RunOptions& opt);

/// Resolve target as a file path first, then as a bundled name; map
/// ScenarioError/StabilityError/DivergenceError to exit codes 2/3/4.
RunReport run_target(const std::string& target, const RunOptions& opt);

/// 64-bit FNV-1a, the hash used for scenario inputs and artifacts.
unsigned long long fnv1a64(const std::string& bytes);

} // namespace kgflow
