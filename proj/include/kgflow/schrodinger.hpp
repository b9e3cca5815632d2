#pragma once

#include <vector>

#include "kgflow/fd_ops.hpp"
#include "kgflow/kg_solver.hpp"
#include "kgflow/madelung.hpp"

// Norm-preserving Schrodinger reference solver (Crank-Nicolson with the
// minimally-coupled Hamiltonian) and the low-speed Madelung-fluid suite:
// the naive flow u, the quantum potential, the corrected flow
// m v = m u + grad Phi with Phi marched from the low-speed condition, and
// the residuals that show the corrected flow obeys the classical
// Newton-Lorentz equation with a continuity source.

namespace kgflow {

struct SchrodingerSolution {
  ComplexField psi;
  Potentials potentials;
  PhysParams params;
  Boundary boundary = Boundary::periodic;
  double norm_drift = 0.0;  // max relative L2 drift across slices
};

struct SchrodingerOptions {
  Boundary boundary = Boundary::periodic;
  bool warn_to_stderr = true;
};

/// Trapezoidal (Crank-Nicolson) evolution of
///   i hbar d_t psi = [ (-i hbar d_x - (q/c)Ax)^2 / 2m + q V ] psi.
/// Unitary for the Hermitian discrete Hamiltonian; time-dependent
/// potentials are sampled at the half step.
SchrodingerSolution evolve_schrodinger(const std::vector<cdouble>& psi0, const Potentials& a,
                                       const PhysParams& p, const SpacetimeGrid& grid,
                                       const SchrodingerOptions& opt = {});

/// Gaussian packet (2 pi sigma^2)^{-1/4} e^{-(x-x0)^2/4 sigma^2} e^{ik(x-x0)}.
std::vector<cdouble> gaussian_packet(const SpacetimeGrid& g, double x0, double sigma, double k);

// Tridiagonal-with-corners system, the shape of the discrete Hamiltonian
// and of the Crank-Nicolson step matrix on a periodic grid.
struct CyclicTridiag {
  std::vector<cdouble> diag, upper, lower;  // upper[j]: (j, j+1); lower[j]: (j, j-1)
  cdouble corner_ur{};                      // (0, nx-1)
  cdouble corner_ll{};                      // (nx-1, 0)
  bool periodic = true;
};

/// Discrete Hamiltonian on one potential slice (V, Ax sampled per column).
CyclicTridiag build_hamiltonian(const std::vector<double>& V, const std::vector<double>& Ax,
                                const PhysParams& p, double dx, bool periodic);

std::vector<cdouble> apply_matrix(const CyclicTridiag& H, const std::vector<cdouble>& x);

/// Thomas algorithm with a Sherman-Morrison corner correction. Throws on a
/// vanishing pivot.
std::vector<cdouble> solve_cyclic(const CyclicTridiag& A, const std::vector<cdouble>& rhs);

/// Klein-Gordon initial data embedding a Schrodinger state:
/// Psi(0) = psi0, d_t Psi(0) = -(i/hbar)(m c^2 psi0 + H psi0).
KGInitialData kg_initial_from_schrodinger(const std::vector<cdouble>& psi0, const Potentials& a,
                                          const PhysParams& p, const SpacetimeGrid& grid);

/// Low-speed flow fields. v equals u until corrected_flow supplies the
/// hidden-phase gradient; m v = m u + grad Phi holds exactly by
/// construction afterwards.
struct FluidState {
  ScalarField u;   // (d_x S - (q/c) Ax) / m
  ScalarField v;   // corrected flow
  ScalarField Q;   // quantum potential
  ScalarField E;   // -d_x V - (1/c) d_t Ax
  ScalarField H;   // magnetic component; identically zero in one dimension
};

ScalarField u_field(const MadelungData& md, const Potentials& a, const PhysParams& p);

FluidState fluid_state(const SchrodingerSolution& sol, const MadelungData& md);

/// Momentum and continuity residuals of the naive flow (expected -> 0 for
/// evolved solutions): m(d_t u + u d_x u) - qE - (q/c)(u x H) + d_x Q and
/// d_t rho + d_x(rho u).
struct FluidResiduals {
  ScalarField momentum;
  ScalarField continuity;
};

FluidResiduals fluid_residuals(const SchrodingerSolution& sol, const MadelungData& md);

/// Low-speed hidden phase and the region where it is trustworthy. Unlike
/// the relativistic march, the characteristic speed u + d_x Phi / m is
/// unbounded, so where the node mask truncates the domain the solution
/// near the cut depends on data the mask removed. The march extrapolates
/// smoothly there to stay stable and reports a mask that additionally
/// excludes the domain-of-influence cone of those edges; residual norms
/// use that mask.
struct LowSpeedPhi {
  ScalarField phi;
  Mask mask;               // halo mask widened by the edge-influence cone
  double max_edge_speed = 0.0;
};

/// March the low-speed hidden-phase condition
///   d_t Phi = Q - u d_x Phi - (d_x Phi)^2 / 2m
/// with the same two-stage policy and zero default initial slice as the
/// relativistic solver.
LowSpeedPhi solve_phi_lowspeed(const MadelungData& md, const Potentials& a, const PhysParams& p,
                               const std::vector<double>& phi0 = {});

/// v = u + d_x Phi / m; everything else is carried over.
FluidState corrected_flow(const FluidState& fluid, const LowSpeedPhi& phi_lowspeed,
                          const MadelungData& md, const PhysParams& p);

/// Residual of m(d_t v + v d_x v) = qE + (q/c) v x H for the corrected flow.
ScalarField newton_lorentz_residual(const FluidState& fluid, const MadelungData& md,
                                    const LowSpeedPhi& phi_lowspeed, const PhysParams& p);

/// Residual of the sourced continuity statement for the corrected flow:
/// d_t rho + d_x(rho v) - d_x(rho d_x Phi)/m = 0 (the sign follows from
/// m v = m u + grad Phi and the source-free continuity of u).
ScalarField sourced_continuity_residual(const FluidState& fluid, const MadelungData& md,
                                        const LowSpeedPhi& phi_lowspeed, const PhysParams& p);

/// Slice-by-slice comparison of a Klein-Gordon run against a Schrodinger
/// run from the same initial packet. The KG side carries the rest-energy
/// phase e^{-i m c^2 t / hbar}; the comparison strips it.
struct LowSpeedReport {
  std::vector<double> density_rel_l2;  // per slice
  std::vector<double> phase_rms;       // per slice, after removing the 2 pi hbar offset
  double density_max = 0.0;
  double eq33_max = 0.0;               // low-speed Hamilton-Jacobi residual of the KG side
  double dropped_phi_t_max = 0.0;      // (1/c^2)(d_t Phi)^2, the term the reduction drops
  double dropped_rho_tt_max = 0.0;     // (hbar^2/c^2 sqrt rho) d_tt sqrt rho, likewise
  double quantum_potential_max = 0.0;  // max |Q|, the scale the dropped terms compare against
};

LowSpeedReport low_speed_compare(const KGSolution& kg, const SchrodingerSolution& s,
                                 const PhysParams& p);

} // namespace kgflow
