#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kgflow/grid.hpp"
#include "kgflow/params.hpp"

// Scenario files: flat key-value text with [section] headers, parsed into a
// validated description of one experiment pipeline. The format is
// deliberately plain so runs are diffable and golden-testable.

namespace kgflow {

enum class Stage {
  kg,
  schrodinger,
  madelung,
  hidden_phase,
  trajectories,
  residual_suite,
  low_speed_compare,
  kinematics_suite,
};

std::string stage_name(Stage s);

struct Scenario {
  std::string name;
  PhysParams physics;
  SpacetimeGrid grid;

  struct Initial {
    enum class Type { plane_wave, gaussian, superposition, file };
    Type type = Type::plane_wave;
    double k = 0.0;
    double x0 = 0.0;
    double sigma = 1.0;
    std::vector<std::pair<double, double>> modes;  // (k, amplitude)
    std::string path;
  } initial;

  struct PotentialSpec {
    enum class Type { zero, uniform_e, table };
    Type type = Type::zero;
    double E0 = 0.0;
    std::string path;
  } potential;

  std::vector<Stage> pipeline;

  struct Outputs {
    std::vector<std::string> fields;  // rho, phase, phi, vx, psi_re, psi_im
    bool trajectories = false;
  } outputs;

  unsigned long long rng_seed = 1;
  int n_seeds = 1000;
  int bins = 40;
  double node_eps_rel = 1e-8;

  /// Grid needs no solver? kinematics_suite alone runs gridless.
  bool needs_grid() const;
};

/// Parse and validate scenario text. Throws ScenarioError naming the line
/// or field on malformed input, including pipeline stages whose inputs are
/// not produced earlier.
Scenario parse_scenario(const std::string& text);

} // namespace kgflow
