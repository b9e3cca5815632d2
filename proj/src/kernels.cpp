#include "kgflow/kernels.hpp"

#include <stdexcept>

namespace kgflow::kernels {

namespace {

// Per-point stencil bodies, shared verbatim by the OpenMP and serial builds.

template <typename T>
inline T d1_at(const T* f, int i, int m, int stride, double inv2h) {
  if (i == 0) return (-3.0 * f[0] + 4.0 * f[stride] - f[2 * stride]) * inv2h;
  if (i == m - 1)
    return (3.0 * f[i * stride] - 4.0 * f[(i - 1) * stride] + f[(i - 2) * stride]) * inv2h;
  return (f[(i + 1) * stride] - f[(i - 1) * stride]) * inv2h;
}

template <typename T>
inline T d2_at(const T* f, int i, int m, int stride, double invh2) {
  if (i > 0 && i < m - 1)
    return (f[(i + 1) * stride] - 2.0 * f[i * stride] + f[(i - 1) * stride]) * invh2;
  if (m == 3)  // no room for the 4-point end stencil; use the interior value
    return (f[2 * stride] - 2.0 * f[stride] + f[0]) * invh2;
  if (i == 0)
    return (2.0 * f[0] - 5.0 * f[stride] + 4.0 * f[2 * stride] - f[3 * stride]) * invh2;
  return (2.0 * f[i * stride] - 5.0 * f[(i - 1) * stride] + 4.0 * f[(i - 2) * stride] -
          f[(i - 3) * stride]) * invh2;
}

template <typename T>
inline void check_axis(int m, const char* what) {
  if (m < 3) throw std::invalid_argument(std::string("kernels: degenerate grid, ") + what);
}

template <typename T>
inline void kg_point(const T* prev, const T* cur, T* next, const double* V,
                     const double* Ax, int j, int nx, double dx, double dt,
                     const PhysParams& p, bool periodic) {
  const int jm = (j == 0) ? (periodic ? nx - 1 : 0) : j - 1;
  const int jp = (j == nx - 1) ? (periodic ? 0 : nx - 1) : j + 1;
  const double inv_dx2 = 1.0 / (dx * dx);
  const double inv_2dx = 0.5 / dx;

  const T lap = (cur[jp] - 2.0 * cur[j] + cur[jm]) * inv_dx2;
  const T grad = (cur[jp] - cur[jm]) * inv_2dx;

  const double c2 = p.c * p.c;
  const double w2 = p.m * p.m * c2 * c2 / (p.hbar * p.hbar);  // (m c^2 / hbar)^2
  const double qh = p.q / p.hbar;
  const double pot2 = qh * qh * (V[j] * V[j] - Ax[j] * Ax[j]);

  // d_tt Psi = c^2 Psi_xx - (2iq/hbar) V Psi_t - (2iqc/hbar) Ax Psi_x
  //            + (q/hbar)^2 (V^2 - Ax^2) Psi - (m c^2/hbar)^2 Psi,
  // discretized with centered time differences; the Psi_t term makes the
  // update a pointwise complex division.
  const T accel = c2 * lap - T(0.0, 2.0 * qh * p.c) * Ax[j] * grad + (pot2 - w2) * cur[j];

  const double alpha_dt = qh * V[j] * dt;
  const T rhs = 2.0 * cur[j] - (T(1.0, 0.0) - T(0.0, alpha_dt)) * prev[j] + dt * dt * accel;
  next[j] = rhs / (T(1.0, 0.0) + T(0.0, alpha_dt));
}

// Generic drivers. OMP parallelizes across independent output elements, so
// results are identical to the serial loops for any thread count.

template <typename T>
void ddx_omp(const T* f, T* out, int nt, int nx, double dx) {
  check_axis<T>(nx, "nx < 3 for ddx");
  const double inv2h = 0.5 / dx;
#pragma omp parallel for schedule(static)
  for (int n = 0; n < nt; ++n) {
    const T* row = f + static_cast<size_t>(n) * nx;
    T* orow = out + static_cast<size_t>(n) * nx;
    for (int j = 0; j < nx; ++j) orow[j] = d1_at(row, j, nx, 1, inv2h);
  }
}

template <typename T>
void ddx_ser(const T* f, T* out, int nt, int nx, double dx) {
  check_axis<T>(nx, "nx < 3 for ddx");
  const double inv2h = 0.5 / dx;
  for (int n = 0; n < nt; ++n) {
    const T* row = f + static_cast<size_t>(n) * nx;
    T* orow = out + static_cast<size_t>(n) * nx;
    for (int j = 0; j < nx; ++j) orow[j] = d1_at(row, j, nx, 1, inv2h);
  }
}

template <typename T>
void ddt_omp(const T* f, T* out, int nt, int nx, double dt) {
  check_axis<T>(nt, "nt < 3 for ddt");
  const double inv2h = 0.5 / dt;
#pragma omp parallel for schedule(static)
  for (int n = 0; n < nt; ++n) {
    T* orow = out + static_cast<size_t>(n) * nx;
    for (int j = 0; j < nx; ++j) orow[j] = d1_at(f + j, n, nt, nx, inv2h);
  }
}

template <typename T>
void ddt_ser(const T* f, T* out, int nt, int nx, double dt) {
  check_axis<T>(nt, "nt < 3 for ddt");
  const double inv2h = 0.5 / dt;
  for (int n = 0; n < nt; ++n) {
    T* orow = out + static_cast<size_t>(n) * nx;
    for (int j = 0; j < nx; ++j) orow[j] = d1_at(f + j, n, nt, nx, inv2h);
  }
}

template <typename T>
void d2dx_omp(const T* f, T* out, int nt, int nx, double dx) {
  check_axis<T>(nx, "nx < 3 for d2dx");
  const double invh2 = 1.0 / (dx * dx);
#pragma omp parallel for schedule(static)
  for (int n = 0; n < nt; ++n) {
    const T* row = f + static_cast<size_t>(n) * nx;
    T* orow = out + static_cast<size_t>(n) * nx;
    for (int j = 0; j < nx; ++j) orow[j] = d2_at(row, j, nx, 1, invh2);
  }
}

template <typename T>
void d2dx_ser(const T* f, T* out, int nt, int nx, double dx) {
  check_axis<T>(nx, "nx < 3 for d2dx");
  const double invh2 = 1.0 / (dx * dx);
  for (int n = 0; n < nt; ++n) {
    const T* row = f + static_cast<size_t>(n) * nx;
    T* orow = out + static_cast<size_t>(n) * nx;
    for (int j = 0; j < nx; ++j) orow[j] = d2_at(row, j, nx, 1, invh2);
  }
}

template <typename T>
void d2dt_omp(const T* f, T* out, int nt, int nx, double dt) {
  check_axis<T>(nt, "nt < 3 for d2dt");
  const double invh2 = 1.0 / (dt * dt);
#pragma omp parallel for schedule(static)
  for (int n = 0; n < nt; ++n) {
    T* orow = out + static_cast<size_t>(n) * nx;
    for (int j = 0; j < nx; ++j) orow[j] = d2_at(f + j, n, nt, nx, invh2);
  }
}

template <typename T>
void d2dt_ser(const T* f, T* out, int nt, int nx, double dt) {
  check_axis<T>(nt, "nt < 3 for d2dt");
  const double invh2 = 1.0 / (dt * dt);
  for (int n = 0; n < nt; ++n) {
    T* orow = out + static_cast<size_t>(n) * nx;
    for (int j = 0; j < nx; ++j) orow[j] = d2_at(f + j, n, nt, nx, invh2);
  }
}

} // namespace

void ddx(const double* f, double* out, int nt, int nx, double dx) { ddx_omp(f, out, nt, nx, dx); }
void ddx(const cdouble* f, cdouble* out, int nt, int nx, double dx) { ddx_omp(f, out, nt, nx, dx); }
void ddt(const double* f, double* out, int nt, int nx, double dt) { ddt_omp(f, out, nt, nx, dt); }
void ddt(const cdouble* f, cdouble* out, int nt, int nx, double dt) { ddt_omp(f, out, nt, nx, dt); }
void d2dx(const double* f, double* out, int nt, int nx, double dx) { d2dx_omp(f, out, nt, nx, dx); }
void d2dx(const cdouble* f, cdouble* out, int nt, int nx, double dx) { d2dx_omp(f, out, nt, nx, dx); }
void d2dt(const double* f, double* out, int nt, int nx, double dt) { d2dt_omp(f, out, nt, nx, dt); }
void d2dt(const cdouble* f, cdouble* out, int nt, int nx, double dt) { d2dt_omp(f, out, nt, nx, dt); }

void kg_step(const cdouble* prev, const cdouble* cur, cdouble* next,
             const double* V, const double* Ax, int nx, double dx, double dt,
             const PhysParams& p, bool periodic) {
#pragma omp parallel for schedule(static)
  for (int j = 0; j < nx; ++j) kg_point(prev, cur, next, V, Ax, j, nx, dx, dt, p, periodic);
  if (!periodic) {
    next[0] = cur[0];
    next[nx - 1] = cur[nx - 1];
  }
}

namespace serial {

void ddx(const double* f, double* out, int nt, int nx, double dx) { ddx_ser(f, out, nt, nx, dx); }
void ddx(const cdouble* f, cdouble* out, int nt, int nx, double dx) { ddx_ser(f, out, nt, nx, dx); }
void ddt(const double* f, double* out, int nt, int nx, double dt) { ddt_ser(f, out, nt, nx, dt); }
void ddt(const cdouble* f, cdouble* out, int nt, int nx, double dt) { ddt_ser(f, out, nt, nx, dt); }
void d2dx(const double* f, double* out, int nt, int nx, double dx) { d2dx_ser(f, out, nt, nx, dx); }
void d2dx(const cdouble* f, cdouble* out, int nt, int nx, double dx) { d2dx_ser(f, out, nt, nx, dx); }
void d2dt(const double* f, double* out, int nt, int nx, double dt) { d2dt_ser(f, out, nt, nx, dt); }
void d2dt(const cdouble* f, cdouble* out, int nt, int nx, double dt) { d2dt_ser(f, out, nt, nx, dt); }

void kg_step(const cdouble* prev, const cdouble* cur, cdouble* next,
             const double* V, const double* Ax, int nx, double dx, double dt,
             const PhysParams& p, bool periodic) {
  for (int j = 0; j < nx; ++j) kg_point(prev, cur, next, V, Ax, j, nx, dx, dt, p, periodic);
  if (!periodic) {
    next[0] = cur[0];
    next[nx - 1] = cur[nx - 1];
  }
}

} // namespace serial

} // namespace kgflow::kernels
