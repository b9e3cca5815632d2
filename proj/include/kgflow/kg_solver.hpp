#pragma once

#include <string>
#include <vector>

#include "kgflow/fd_ops.hpp"
#include "kgflow/fields.hpp"
#include "kgflow/params.hpp"

// Explicit leapfrog evolution of the gauged Klein-Gordon equation
//   -hbar^2 d^mu d_mu Psi - (2i hbar q / c) A^mu d_mu Psi
//     + (q/c)^2 A^mu A_mu Psi = m^2 c^2 Psi
// together with its conserved current. The scheme is second order in
// space and time, time-reversible, and deterministic: identical inputs
// produce bit-identical solutions.

namespace kgflow {

enum class Boundary { periodic, clamped };

struct KGInitialData {
  std::vector<cdouble> psi0;      // wave function on the first slice
  std::vector<cdouble> psi0_dot;  // its time derivative on the same slice

  void validate(int nx) const;
};

/// Plane wave A e^{ikx} with the exact on-shell frequency
/// w = sqrt(k^2 c^2 + m^2 c^4 / hbar^2), psi0_dot = -i w psi0.
KGInitialData plane_wave_initial(const SpacetimeGrid& g, const PhysParams& p, double k,
                                 double amplitude = 1.0);

/// Sum of on-shell plane waves.
KGInitialData superposition_initial(const SpacetimeGrid& g, const PhysParams& p,
                                    const std::vector<std::pair<double, double>>& k_amp);

/// Gaussian packet sqrt(rho) = (2 pi sigma^2)^{-1/4} exp(-(x-x0)^2/(4 sigma^2))
/// times e^{ik(x-x0)}, with the quasi-rest time derivative
/// psi0_dot = -(i/hbar)(m c^2 + q V) psi0.
KGInitialData gaussian_initial(const SpacetimeGrid& g, const PhysParams& p, double x0,
                               double sigma, double k, const Potentials& a);

/// On-shell frequency of spatial wavenumber k.
double kg_omega(const PhysParams& p, double k);

struct KGSchemeMetadata {
  double cfl = 0.0;              // c dt / dx at which the run was made
  Boundary boundary = Boundary::periodic;
  double lorentz_max = 0.0;      // max |d^mu A_mu| of the supplied potentials
  bool lorentz_warning = false;  // lorentz_max exceeded the configured tolerance
  double phase_resolution = 0.0; // dt m c^2 / hbar
  bool stiffness_warning = false;  // phase_resolution above 0.2
};

struct KGSolution {
  ComplexField psi;
  PhysParams params;
  Potentials potentials;
  KGSchemeMetadata scheme;
};

struct KGOptions {
  Boundary boundary = Boundary::periodic;
  double cfl_limit = 0.9;
  double lorentz_tolerance = 1e-6;
  bool warn_to_stderr = true;
};

/// March Eq. (15) across the grid. Throws StabilityError when c dt/dx
/// exceeds the CFL ceiling and DivergenceError (with the step index) when
/// the field stops being finite.
KGSolution evolve_kg(const KGInitialData& init, const Potentials& a, const PhysParams& p,
                     const SpacetimeGrid& grid, const KGOptions& opt = {});

/// Pointwise magnitude of the Klein-Gordon operator applied to the stored
/// solution; O(h^2) on interior points for second-order data.
ScalarField kg_residual(const KGSolution& sol);

/// Conserved current J_mu = (i hbar/2)(Psi* d_mu Psi - Psi d_mu Psi*)
///                        - (q/c) A_mu |Psi|^2, covariant.
FourVectorField noether_current(const KGSolution& sol);

/// Trapezoidal spatial integral of J^0 per time slice. On a periodic grid
/// the closing point coincides with the first one, so the rule reduces to
/// the plain Riemann sum.
std::vector<double> total_charge(const FourVectorField& j, const PhysParams& p,
                                 bool periodic = true);

} // namespace kgflow
