#pragma once

#include <functional>
#include <vector>

#include "kgflow/fields.hpp"
#include "kgflow/hidden_phase.hpp"
#include "kgflow/schrodinger.hpp"

// World-line integration along a velocity field with classical 4th-order
// stepping and bilinear space-time interpolation, plus the ensemble-level
// diagnostics: density histograms against |psi|^2 and the circulation
// identity around the periodic circle.

namespace kgflow {

struct TrajectoryEnsemble {
  std::vector<double> seeds;
  // row per seed, one sample per grid time step
  std::vector<std::vector<double>> paths;
  std::vector<std::vector<double>> velocities;
  // first step at which the integration entered a masked cell; nt when the
  // path is complete. Truncated paths are frozen at their last position.
  std::vector<int> truncated_at;
  SpacetimeGrid grid;

  bool complete(int seed) const { return truncated_at[seed] >= grid.nt; }
};

/// Coordinate velocity dx/dt = c^2 P_x / K of a relativistic kinetic state.
ScalarField coordinate_velocity(const KineticState& ks, const PhysParams& p);

/// Integrate seeds through a grid-sampled velocity field (bilinear in t and
/// x, periodic wrap). Entering a cell with a masked corner truncates the
/// path and flags it.
TrajectoryEnsemble integrate(const ScalarField& velocity, const Mask* mask,
                             const std::vector<double>& seeds);

/// Same stepping against an analytic velocity function; used by the
/// integrator-order tests and synthetic flows.
TrajectoryEnsemble integrate(const std::function<double(double, double)>& velocity,
                             const SpacetimeGrid& grid, const std::vector<double>& seeds);

/// Inverse-CDF draw of n seeds from the density on one time slice.
/// Deterministic for a fixed rng_seed. stratified = true replaces the
/// uniform randoms by centered quantiles (i+1/2)/n, removing sampling noise
/// while keeping the same transform.
std::vector<double> sample_from_density(const ScalarField& rho, int slice, int n,
                                        unsigned long long rng_seed, bool stratified = false);

struct EnsembleHistogram {
  double x_min = 0.0;
  double bin_width = 0.0;
  int bins = 0;
  // normalized density per slice: sum(density[n]) * bin_width = live fraction
  std::vector<std::vector<double>> density;
  std::vector<int> live;  // paths not yet truncated at each slice
};

EnsembleHistogram ensemble_density(const TrajectoryEnsemble& te, int bins);

/// Probability carried by bin b of slice n under a grid density field
/// (trapezoid within the bin), for histogram comparisons.
double bin_probability(const ScalarField& rho, int slice, const EnsembleHistogram& h, int b);

/// Closed loop on one time slice. In one periodic dimension the only closed
/// spatial paths wind around the circle; winds = 0 (an open path) is
/// rejected.
struct Loop {
  int slice = 0;
  int winds = 1;
};

struct CirculationReport {
  double lhs = 0.0;       // loop integral of the spatial kinetic momentum
  double rhs = 0.0;       // -(q/c) times the loop integral of Ax
  long turns = 0;         // nearest integer of (lhs - rhs) / (2 pi hbar)
  double residual = 0.0;  // lhs - rhs - 2 pi hbar turns
};

/// Check the circulation identity for a covariant momentum field m v_mu.
CirculationReport circulation_check(const FourVectorField& momentum, const Potentials& a,
                                    const Loop& loop, const PhysParams& p);

} // namespace kgflow
