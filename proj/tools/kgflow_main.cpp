// kgflow scenario runner.
//
//   kgflow run <file-or-name> [--out-dir DIR] [--tolerance-profile P] [--threads N]
//   kgflow list
//   kgflow describe <name>
//
// Exit codes: 0 ok, 2 parse/validation error, 3 stability precondition,
// 4 numeric divergence. KGFLOW_OUT_DIR sets the default output directory.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "kgflow/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"kgflow: a numerical laboratory for hidden-phase Klein-Gordon flows"};
  app.require_subcommand(1);

  std::string target;
  std::string out_dir;
  std::string profile = "default";
  int threads = 0;
  if (const char* env = std::getenv("KGFLOW_OUT_DIR")) out_dir = env;
  if (out_dir.empty()) out_dir = "out";

  auto* run = app.add_subcommand("run", "run a scenario file or bundled scenario");
  run->add_option("target", target, "scenario file path or bundled name")->required();
  run->add_option("--out-dir", out_dir, "output directory root");
  run->add_option("--tolerance-profile", profile, "default | strict");
  run->add_option("--threads", threads, "OpenMP thread hint (output is unaffected)");

  auto* list = app.add_subcommand("list", "list bundled scenarios");

  std::string describe_name;
  auto* describe = app.add_subcommand("describe", "echo a bundled scenario's parameters");
  describe->add_option("name", describe_name, "bundled scenario name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (list->parsed()) {
    for (const auto& [name, text] : kgflow::bundled_scenarios()) {
      // first comment line doubles as the description
      std::string first = text.substr(0, text.find('\n'));
      if (!first.empty() && first[0] == '#') first = first.substr(1);
      while (!first.empty() && first.front() == ' ') first = first.substr(1);
      std::printf("%-22s %s\n", name.c_str(), first.c_str());
    }
    return 0;
  }

  if (describe->parsed()) {
    const auto& reg = kgflow::bundled_scenarios();
    auto it = reg.find(describe_name);
    if (it == reg.end()) {
      std::fprintf(stderr, "describe: unknown scenario '%s'\n", describe_name.c_str());
      return 2;
    }
    std::fputs(it->second.c_str(), stdout);
    return 0;
  }

  kgflow::RunOptions opt;
  opt.out_root = out_dir;
  opt.tolerance_profile = profile;
  opt.threads_hint = threads;
  auto rep = kgflow::run_target(target, opt);
  if (rep.exit_code != 0) {
    std::fprintf(stderr, "kgflow run: %s\n", rep.message.c_str());
    return rep.exit_code;
  }
  std::printf("wrote %s\n", (rep.out_dir / "manifest.txt").string().c_str());
  for (const auto& [k, v] : rep.manifest)
    if (k.rfind("residual.", 0) == 0 || k.rfind("compare.", 0) == 0 ||
        k.rfind("kg.", 0) == 0 || k.rfind("hidden.", 0) == 0)
      std::printf("  %s = %s\n", k.c_str(), v.c_str());
  return 0;
}
