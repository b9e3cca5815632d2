#pragma once

#include "kgflow/fields.hpp"
#include "kgflow/params.hpp"

// Finite-difference calculus on sampled fields under the (+,-) signature
// with x^0 = ct: d_0 = (1/c) d_t, d_1 = d_x, and raising flips the sign of
// the space component. All residual operations return full fields; norms
// are the caller's business.

namespace kgflow {

ScalarField ddx(const ScalarField& f);
ScalarField ddt(const ScalarField& f);
ComplexField ddx(const ComplexField& f);
ComplexField ddt(const ComplexField& f);
ScalarField d2dx(const ScalarField& f);
ScalarField d2dt(const ScalarField& f);

/// Covariant four-gradient (d_0 f, d_1 f) = ((1/c) d_t f, d_x f).
FourVectorField four_gradient(const ScalarField& f, const PhysParams& p);

/// (1/c^2) d_tt f - d_xx f, i.e. the contraction d^mu d_mu f.
ScalarField dalembertian(const ScalarField& f, const PhysParams& p);
ComplexField dalembertian(const ComplexField& f, const PhysParams& p);

/// d^mu j_mu for a covariant field: (1/c) d_t j_t - d_x j_x.
/// Throws on a contravariant argument; lower it explicitly first.
ScalarField four_divergence(const FourVectorField& j, const PhysParams& p);

/// Antisymmetric field-strength tensor of the potentials; only the
/// independent component F_01 = d_0 A_1 - d_1 A_0 is stored. F_10 = -F_01
/// by construction. In lab components F_01 equals the electric field
/// E_x = -d_x V - (1/c) d_t Ax.
struct FaradayTensor {
  ScalarField f01;
  ScalarField component(int mu, int nu) const;
};

FaradayTensor faraday(const Potentials& a, const PhysParams& p);

/// d^mu A_mu; zero when the potentials meet the Lorentz condition.
ScalarField lorentz_residual(const Potentials& a, const PhysParams& p);

/// Run-aware derivatives for fields that are only defined on unmasked
/// points: each maximal unmasked run along the axis is differentiated on
/// its own (centered inside, one-sided at the run ends). Runs shorter than
/// three points produce zeros and stay unusable. With an empty mask these
/// reduce to ddx/ddt with identical arithmetic.
ScalarField ddx_masked(const ScalarField& f, const Mask& mask);
ScalarField ddt_masked(const ScalarField& f, const Mask& mask);

// Pointwise field algebra helpers (grids must match).
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);

} // namespace kgflow
