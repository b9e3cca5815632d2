#pragma once

#include <cmath>
#include <cstdlib>

#include "kgflow/fields.hpp"

// Norm helpers used by residual reporting. Reductions run serially so that
// reported numbers are independent of the thread count.

namespace kgflow {

/// Max-norm over the whole block.
double max_abs(const ScalarField& f);

/// Max-norm restricted to interior points and, when a mask is given, to
/// unmasked points. Residual norms in this project are always reported this
/// way. The margin of two rings covers the footprint of chained one-sided
/// stencils at the block edges (a second derivative of a first derivative
/// touches two rings).
double max_abs_interior(const ScalarField& f, const Mask* mask = nullptr, int margin = 2);

/// Relative L2 distance ||a-b||_2 / ||b||_2 over one time slice.
double rel_l2_slice(const ScalarField& a, const ScalarField& b, int n);

/// L2 norm over unmasked interior points of one slice.
double l2_slice(const ScalarField& f, int n, const Mask* mask = nullptr);

/// log2(coarse/fine): the measured convergence order between two errors
/// produced by halving the grid spacing.
inline double measured_order(double err_coarse, double err_fine) {
  return std::log2(err_coarse / err_fine);
}

} // namespace kgflow
