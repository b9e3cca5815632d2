#pragma once

#include <vector>

#include "kgflow/fd_ops.hpp"
#include "kgflow/fields.hpp"
#include "kgflow/kg_solver.hpp"
#include "kgflow/params.hpp"

// Polar decomposition Psi = sqrt(rho) e^{iS/hbar} and the fields built
// from it. The phase is unwrapped along space within each time slice and
// then along time through an anchor column, so S is continuous wherever
// rho stays above the node threshold. Finite-difference phase quantities
// blow up at wave-function nodes; points below the threshold are masked
// and a two-point halo around them is excluded from residual norms.

namespace kgflow {

/// A re-anchoring event: spatial unwrapping crossed a masked gap, so the
/// phase to the right of the gap is only defined up to the recorded whole
/// number of turns.
struct PhaseRegion {
  int slice = 0;
  int start = 0;        // first column of the re-anchored run
  long turns = 0;       // 2 pi hbar multiple applied relative to raw arg
};

struct MadelungData {
  ScalarField rho;      // Psi* Psi, >= 0
  ScalarField phase;    // S in action units, hbar * unwrapped arg Psi
  Mask node_mask;       // rho < eps_abs, exactly
  Mask halo_mask;       // node_mask dilated by two points in each axis;
                        // residual norms use this one
  double eps_abs = 0.0; // absolute node threshold used
  std::vector<PhaseRegion> regions;  // re-anchoring events, if any

  const SpacetimeGrid& grid() const { return rho.grid(); }
  bool masked(int n, int j) const { return node_mask[static_cast<size_t>(n) * rho.nx() + j] != 0; }
};

/// Mask grown by a Chebyshev radius in (time, space); used to keep stencil
/// footprints away from excluded points.
Mask dilate_mask(const Mask& m, int nt, int nx, int radius);

/// Decompose a wave function block. eps_rel scales the node threshold:
/// eps_abs = eps_rel * max(rho). Throws when a whole slice sits below the
/// threshold (an all-node slice has no usable phase).
MadelungData decompose(const ComplexField& psi, const PhysParams& p, double eps_rel = 1e-8);

inline MadelungData decompose(const KGSolution& sol, double eps_rel = 1e-8) {
  return decompose(sol.psi, sol.params, eps_rel);
}

/// Inverse of decompose on every point: sqrt(rho) e^{iS/hbar}.
ComplexField reconstruct(const MadelungData& md, const PhysParams& p);

/// hbar^2 (d^mu d_mu sqrt(rho)) / sqrt(rho); zero on masked points.
ScalarField quantum_term_rel(const MadelungData& md, const PhysParams& p);

/// Q = -(hbar^2/2m) (d_xx sqrt(rho)) / sqrt(rho), slice by slice.
ScalarField quantum_potential(const MadelungData& md, const PhysParams& p);

/// Naive guidance field w_mu = -d_mu S / m - (q/mc) A_mu, covariant.
FourVectorField w_field(const MadelungData& md, const Potentials& a, const PhysParams& p);

/// Pointwise residual of the quantum-corrected mass shell:
/// (-d^mu S - (q/c)A^mu)(-d_mu S - (q/c)A_mu) - m^2 c^2
///   - hbar^2 (d^mu d_mu sqrt(rho))/sqrt(rho).
/// Vanishes under refinement for any solution of the wave equation.
ScalarField hj_quantum_residual(const MadelungData& md, const Potentials& a, const PhysParams& p);

/// Residual of the sourceless continuity identity d^mu(rho m w_mu) = 0.
ScalarField continuity_residual(const MadelungData& md, const Potentials& a, const PhysParams& p);

} // namespace kgflow
