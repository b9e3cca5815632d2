#pragma once

#include <complex>
#include <cstddef>

#include "kgflow/params.hpp"

// Low-level lattice kernels. Every kernel here is data-parallel across
// lattice points and comes in two builds: the OpenMP version used by the
// library (kgflow::kernels) and a plain serial reference (kgflow::kernels::serial)
// kept for parity tests and the kernel benchmark. Both share the exact same
// per-element arithmetic, so outputs must match bit for bit.
//
// Stencils are second order: centered in the interior, one-sided at the
// ends of the differentiated axis (3-point for first derivatives, 4-point
// for second derivatives; a 3-point axis falls back to the centered value
// at its single interior point, still exact on quadratics).

namespace kgflow::kernels {

using cdouble = std::complex<double>;

// First derivative along the contiguous (space) axis, row-major nt x nx.
void ddx(const double* f, double* out, int nt, int nx, double dx);
void ddx(const cdouble* f, cdouble* out, int nt, int nx, double dx);

// First derivative along the strided (time) axis.
void ddt(const double* f, double* out, int nt, int nx, double dt);
void ddt(const cdouble* f, cdouble* out, int nt, int nx, double dt);

// Second derivatives.
void d2dx(const double* f, double* out, int nt, int nx, double dx);
void d2dx(const cdouble* f, cdouble* out, int nt, int nx, double dx);
void d2dt(const double* f, double* out, int nt, int nx, double dt);
void d2dt(const cdouble* f, cdouble* out, int nt, int nx, double dt);

// One gauged Klein-Gordon leapfrog step: given slices n-1 and n plus the
// potential rows at slice n, fill slice n+1. Periodic wrap when periodic
// is true, otherwise the end points are held fixed (clamped).
void kg_step(const cdouble* prev, const cdouble* cur, cdouble* next,
             const double* V, const double* Ax, int nx, double dx, double dt,
             const PhysParams& p, bool periodic);

namespace serial {

void ddx(const double* f, double* out, int nt, int nx, double dx);
void ddx(const cdouble* f, cdouble* out, int nt, int nx, double dx);
void ddt(const double* f, double* out, int nt, int nx, double dt);
void ddt(const cdouble* f, cdouble* out, int nt, int nx, double dt);
void d2dx(const double* f, double* out, int nt, int nx, double dx);
void d2dx(const cdouble* f, cdouble* out, int nt, int nx, double dx);
void d2dt(const double* f, double* out, int nt, int nx, double dt);
void d2dt(const cdouble* f, cdouble* out, int nt, int nx, double dt);
void kg_step(const cdouble* prev, const cdouble* cur, cdouble* next,
             const double* V, const double* Ax, int nx, double dx, double dt,
             const PhysParams& p, bool periodic);

} // namespace serial

} // namespace kgflow::kernels
