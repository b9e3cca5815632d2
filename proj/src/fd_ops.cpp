#include "kgflow/fd_ops.hpp"

#include <stdexcept>

#include "kgflow/kernels.hpp"
#include "kgflow/norms.hpp"

namespace kgflow {

namespace {

template <typename Field>
Field like(const Field& f) { return Field(f.grid(), {}); }

} // namespace

ScalarField ddx(const ScalarField& f) {
  ScalarField out(f.grid(), 0.0);
  kernels::ddx(f.data().data(), out.data().data(), f.nt(), f.nx(), f.grid().dx);
  return out;
}

ComplexField ddx(const ComplexField& f) {
  ComplexField out(f.grid(), {});
  kernels::ddx(f.data().data(), out.data().data(), f.nt(), f.nx(), f.grid().dx);
  return out;
}

ScalarField ddt(const ScalarField& f) {
  ScalarField out(f.grid(), 0.0);
  kernels::ddt(f.data().data(), out.data().data(), f.nt(), f.nx(), f.grid().dt);
  return out;
}

ComplexField ddt(const ComplexField& f) {
  ComplexField out(f.grid(), {});
  kernels::ddt(f.data().data(), out.data().data(), f.nt(), f.nx(), f.grid().dt);
  return out;
}

ScalarField d2dx(const ScalarField& f) {
  ScalarField out(f.grid(), 0.0);
  kernels::d2dx(f.data().data(), out.data().data(), f.nt(), f.nx(), f.grid().dx);
  return out;
}

ScalarField d2dt(const ScalarField& f) {
  ScalarField out(f.grid(), 0.0);
  kernels::d2dt(f.data().data(), out.data().data(), f.nt(), f.nx(), f.grid().dt);
  return out;
}

FourVectorField four_gradient(const ScalarField& f, const PhysParams& p) {
  FourVectorField g{ddt(f), ddx(f), Variance::covariant};
  auto t = g.time_component.data();
  const double inv_c = 1.0 / p.c;
  for (auto& v : t) v *= inv_c;
  return g;
}

ScalarField dalembertian(const ScalarField& f, const PhysParams& p) {
  ScalarField tt = d2dt(f);
  ScalarField xx = d2dx(f);
  ScalarField out(f.grid(), 0.0);
  const double inv_c2 = 1.0 / (p.c * p.c);
  auto o = out.data(); auto a = tt.data(); auto b = xx.data();
  for (size_t i = 0; i < o.size(); ++i) o[i] = inv_c2 * a[i] - b[i];
  return out;
}

ComplexField dalembertian(const ComplexField& f, const PhysParams& p) {
  ComplexField tt(f.grid(), {}), xx(f.grid(), {});
  kernels::d2dt(f.data().data(), tt.data().data(), f.nt(), f.nx(), f.grid().dt);
  kernels::d2dx(f.data().data(), xx.data().data(), f.nt(), f.nx(), f.grid().dx);
  ComplexField out(f.grid(), {});
  const double inv_c2 = 1.0 / (p.c * p.c);
  auto o = out.data(); auto a = tt.data(); auto b = xx.data();
  for (size_t i = 0; i < o.size(); ++i) o[i] = inv_c2 * a[i] - b[i];
  return out;
}

ScalarField four_divergence(const FourVectorField& j, const PhysParams& p) {
  j.check();
  if (j.variance != Variance::covariant)
    throw std::invalid_argument("four_divergence: expected a covariant field; lower the index first");
  ScalarField dt_t = ddt(j.time_component);
  ScalarField dx_x = ddx(j.space_component);
  ScalarField out(j.grid(), 0.0);
  const double inv_c = 1.0 / p.c;
  auto o = out.data(); auto a = dt_t.data(); auto b = dx_x.data();
  for (size_t i = 0; i < o.size(); ++i) o[i] = inv_c * a[i] - b[i];
  return out;
}

FourVectorField raise_index(const FourVectorField& f) {
  if (f.variance == Variance::contravariant)
    throw std::invalid_argument("raise_index: field is already contravariant");
  FourVectorField out{f.time_component, f.space_component, Variance::contravariant};
  for (auto& v : out.space_component.data()) v = -v;
  return out;
}

FourVectorField lower_index(const FourVectorField& f) {
  if (f.variance == Variance::covariant)
    throw std::invalid_argument("lower_index: field is already covariant");
  FourVectorField out{f.time_component, f.space_component, Variance::covariant};
  for (auto& v : out.space_component.data()) v = -v;
  return out;
}

ScalarField contract(const FourVectorField& a, const FourVectorField& b) {
  a.check(); b.check();
  detail::require_same_grid(a.grid(), b.grid(), "contract");
  // Same variance: insert the metric. Opposite variance: plain sum would be
  // t*t + x*x with one component already negated, so both cases reduce to
  // t*t - x*x on the stored components when variances match, and to
  // t*t + x*x when they differ.
  const double sign = (a.variance == b.variance) ? -1.0 : 1.0;
  ScalarField out(a.grid(), 0.0);
  auto o = out.data();
  auto at = a.time_component.data(); auto ax = a.space_component.data();
  auto bt = b.time_component.data(); auto bx = b.space_component.data();
  for (size_t i = 0; i < o.size(); ++i) o[i] = at[i] * bt[i] + sign * ax[i] * bx[i];
  return out;
}

FourVectorField Potentials::covariant() const {
  detail::require_same_grid(V.grid(), Ax.grid(), "Potentials");
  FourVectorField out{V, Ax, Variance::covariant};
  for (auto& v : out.space_component.data()) v = -v;
  return out;
}

ScalarField FaradayTensor::component(int mu, int nu) const {
  if (mu == nu) return ScalarField(f01.grid(), 0.0);
  if (mu == 0 && nu == 1) return f01;
  ScalarField out = f01;
  for (auto& v : out.data()) v = -v;
  return out;
}

FaradayTensor faraday(const Potentials& a, const PhysParams& p) {
  FourVectorField cov = a.covariant();
  ScalarField d0_a1 = ddt(cov.space_component);
  ScalarField d1_a0 = ddx(cov.time_component);
  ScalarField f01(a.grid(), 0.0);
  const double inv_c = 1.0 / p.c;
  auto o = f01.data(); auto u = d0_a1.data(); auto v = d1_a0.data();
  for (size_t i = 0; i < o.size(); ++i) o[i] = inv_c * u[i] - v[i];
  return FaradayTensor{std::move(f01)};
}

ScalarField lorentz_residual(const Potentials& a, const PhysParams& p) {
  return four_divergence(a.covariant(), p);
}

namespace {

inline double run_d1(const double* f, int i, int m, int stride, double inv2h) {
  if (i == 0) return (-3.0 * f[0] + 4.0 * f[stride] - f[2 * stride]) * inv2h;
  if (i == m - 1)
    return (3.0 * f[i * stride] - 4.0 * f[(i - 1) * stride] + f[(i - 2) * stride]) * inv2h;
  return (f[(i + 1) * stride] - f[(i - 1) * stride]) * inv2h;
}

void masked_axis_deriv(const ScalarField& f, const Mask& mask, ScalarField& out, bool time_axis,
                       double h) {
  const int nt = f.nt(), nx = f.nx();
  const int lanes = time_axis ? nx : nt;
  const int m_axis = time_axis ? nt : nx;
  const int stride = time_axis ? nx : 1;
  const double inv2h = 0.5 / h;
  for (int lane = 0; lane < lanes; ++lane) {
    const size_t base = time_axis ? static_cast<size_t>(lane)
                                  : static_cast<size_t>(lane) * nx;
    const double* fp = f.data().data() + base;
    double* op = out.data().data() + base;
    int i = 0;
    while (i < m_axis) {
      if (mask[base + static_cast<size_t>(i) * stride]) { ++i; continue; }
      int end = i;
      while (end + 1 < m_axis && !mask[base + static_cast<size_t>(end + 1) * stride]) ++end;
      const int len = end - i + 1;
      if (len >= 3)
        for (int k2 = 0; k2 < len; ++k2)
          op[static_cast<size_t>(i + k2) * stride] =
              run_d1(fp + static_cast<size_t>(i) * stride, k2, len, stride, inv2h);
      i = end + 1;
    }
  }
}

} // namespace

ScalarField ddx_masked(const ScalarField& f, const Mask& mask) {
  ScalarField out(f.grid(), 0.0);
  masked_axis_deriv(f, mask, out, false, f.grid().dx);
  return out;
}

ScalarField ddt_masked(const ScalarField& f, const Mask& mask) {
  ScalarField out(f.grid(), 0.0);
  masked_axis_deriv(f, mask, out, true, f.grid().dt);
  return out;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  detail::require_same_grid(a.grid(), b.grid(), "field +");
  ScalarField out = a;
  auto o = out.data(); auto v = b.data();
  for (size_t i = 0; i < o.size(); ++i) o[i] += v[i];
  return out;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  detail::require_same_grid(a.grid(), b.grid(), "field -");
  ScalarField out = a;
  auto o = out.data(); auto v = b.data();
  for (size_t i = 0; i < o.size(); ++i) o[i] -= v[i];
  return out;
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  detail::require_same_grid(a.grid(), b.grid(), "field *");
  ScalarField out = a;
  auto o = out.data(); auto v = b.data();
  for (size_t i = 0; i < o.size(); ++i) o[i] *= v[i];
  return out;
}

ScalarField operator*(double s, const ScalarField& a) {
  ScalarField out = a;
  for (auto& v : out.data()) v *= s;
  return out;
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_interior(const ScalarField& f, const Mask* mask, int margin) {
  double m = 0.0;
  for (int n = margin; n < f.nt() - margin; ++n)
    for (int j = margin; j < f.nx() - margin; ++j) {
      if (mask && (*mask)[static_cast<size_t>(n) * f.nx() + j]) continue;
      m = std::max(m, std::abs(f(n, j)));
    }
  return m;
}

double rel_l2_slice(const ScalarField& a, const ScalarField& b, int n) {
  detail::require_same_grid(a.grid(), b.grid(), "rel_l2_slice");
  double num = 0.0, den = 0.0;
  for (int j = 0; j < a.nx(); ++j) {
    const double d = a(n, j) - b(n, j);
    num += d * d;
    den += b(n, j) * b(n, j);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double l2_slice(const ScalarField& f, int n, const Mask* mask) {
  double s = 0.0;
  int count = 0;
  for (int j = 1; j < f.nx() - 1; ++j) {
    if (mask && (*mask)[static_cast<size_t>(n) * f.nx() + j]) continue;
    s += f(n, j) * f(n, j);
    ++count;
  }
  return count ? std::sqrt(s / count) : 0.0;
}

} // namespace kgflow
