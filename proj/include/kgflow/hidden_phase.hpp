#pragma once

#include <utility>
#include <vector>

#include "kgflow/madelung.hpp"

// Reconstruction of the hidden phase Phi: the correction to the wave
// function's phase that puts the guidance momentum exactly on the mass
// shell. With P_x = d_x(S + Phi) - (q/c) Ax and K = branch * c *
// sqrt(m^2 c^2 + P_x^2), Phi is marched in time through
//   d_t Phi = -K - q V - d_t S,
// which is the kinetic-energy definition solved for d_t Phi with K pinned
// to the shell. The solver records its own d_t Phi per slice; the velocity
// field built from that record sits on the mass shell to rounding, while
// the independent condition residual (quadratic in d Phi against the
// quantum term) measures the march's actual accuracy.

namespace kgflow {

struct HiddenPhaseReport {
  double mass_shell_max = 0.0;     // max |v^mu v_mu - c^2| on unmasked interior
  double phi_condition_max = 0.0;  // max of the independent condition residual
};

struct HiddenPhase {
  ScalarField phi;       // action units
  ScalarField dphi_dt;   // the march's right-hand side, recorded per slice
  int branch = +1;       // energy-branch sign of K
  std::vector<double> phi0;
  HiddenPhaseReport report;
  int max_region_count = 1;  // connected unmasked runs integrated separately
};

struct KineticState {
  FourVectorField v;   // corrected four-velocity, covariant components
  ScalarField K;       // kinetic energy, positive for branch +1
  Mask halo_mask;      // inherited from the decomposition

  const SpacetimeGrid& grid() const { return K.grid(); }
};

struct PhiOptions {
  int branch = +1;
  double mass_shell_tolerance = 1e-8;
  bool warn_to_stderr = true;
};

/// March Phi across the grid from the initial slice phi0 (default zero).
/// Masked gaps split the domain; each connected run is integrated on its
/// own and the split is reported, never repaired.
HiddenPhase solve_phi(const MadelungData& md, const Potentials& a, const PhysParams& p,
                      const std::vector<double>& phi0 = {}, const PhiOptions& opt = {});

/// Corrected velocity and kinetic energy:
/// m v_mu = -d_mu(S + Phi) - (q/c) A_mu with the time part taken from the
/// solver's recorded d_t Phi, K = -d_t(S + Phi) - q V.
KineticState velocity_field(const MadelungData& md, const HiddenPhase& hp, const Potentials& a,
                            const PhysParams& p);

/// v^mu v_mu - c^2, pointwise; zero on masked points.
ScalarField mass_shell_residual(const KineticState& ks, const PhysParams& p);

/// Independent check of the defining condition:
/// 2 m v^mu d_mu Phi + d^mu Phi d_mu Phi - hbar^2 box(sqrt rho)/sqrt rho,
/// with Phi differentiated by plain finite differences.
ScalarField phi_condition_residual(const MadelungData& md, const HiddenPhase& hp,
                                   const KineticState& ks, const PhysParams& p);

/// Both sides of the sourced continuity statement:
/// lhs = d^mu(rho v_mu), rhs = -d^mu(rho d_mu Phi)/m.
std::pair<ScalarField, ScalarField> creation_rate(const MadelungData& md, const HiddenPhase& hp,
                                                  const KineticState& ks, const PhysParams& p);

/// Symmetric energy tensor T_munu = m rho v_mu v_nu (covariant components).
struct SymTensorField {
  ScalarField tt, tx, xx;
};

SymTensorField stress_tensor(const MadelungData& md, const KineticState& ks, const PhysParams& p);

/// K_mu = -v_mu d^nu(rho d_nu Phi), the force tied to local
/// creation/annihilation.
FourVectorField quantum_force(const MadelungData& md, const HiddenPhase& hp,
                              const KineticState& ks, const PhysParams& p);

/// d^nu T_munu - (q/c) rho v^nu F_munu + v_mu d^nu(rho d_nu Phi); vanishes
/// under refinement for consistent inputs.
FourVectorField euler_residual(const MadelungData& md, const KineticState& ks,
                               const Potentials& a, const HiddenPhase& hp, const PhysParams& p);

} // namespace kgflow
