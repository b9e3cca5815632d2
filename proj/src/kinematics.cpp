#include "kgflow/kinematics.hpp"

#include <cmath>

namespace kgflow::kinematics {

namespace {

Vec3 curl_of(const Mat3& J) {
  return {J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1)};
}

} // namespace

AnalogFields analog_fields(const AnalyticFlow& flow, const Probe& probe, const PhysParams& p) {
  AnalogFields out;
  const Vec3 v = flow.v(probe.r, probe.t);
  const Mat3 J = flow.jacobian(probe.r, probe.t);
  out.a0 = -p.c * p.c - 0.5 * v.norm2();
  out.a = v * (-p.c);
  // e = -(1/c) d_t a - grad a0 = d_t v + grad(v^2/2), grad(v^2/2) = J^T v
  out.e = flow.dv_dt(probe.r, probe.t) + J.tdot(v);
  out.h = curl_of(J) * (-p.c);
  return out;
}

MaxwellResiduals maxwell_analog_residuals(const AnalyticFlow& flow, const Probe& probe,
                                          const PhysParams& p) {
  MaxwellResiduals out;
  const Vec3 v = flow.v(probe.r, probe.t);
  const Mat3 J = flow.jacobian(probe.r, probe.t);
  const Mat3 Jt = flow.jacobian_dt(probe.r, probe.t);
  const auto H = flow.hessian(probe.r, probe.t);

  // div h = -c div curl v; expand through the second derivatives
  // (curl v)_x = dv_z/dy - dv_y/dz, d/dx of it = H[2](0,1) - H[1](0,2), etc.
  const double div_curl = (H[2](0, 1) - H[1](0, 2)) + (H[0](1, 2) - H[2](1, 0)) +
                          (H[1](2, 0) - H[0](2, 1));
  out.div_h = -p.c * div_curl;

  // curl e + (1/c) d_t h with e = d_t v + grad(v^2/2) and h = -c curl v:
  // curl(d_t v) cancels (1/c) d_t h through the shared jacobian_dt, and
  // curl(grad(v^2/2)) reduces to v . (H - H^T) per component (the J^T J
  // part is symmetric and drops out of the antisymmetrization).
  (void)J;
  auto curl_grad_half_v2 = [&](int i, int j) {
    return v.x * (H[0](i, j) - H[0](j, i)) + v.y * (H[1](i, j) - H[1](j, i)) +
           v.z * (H[2](i, j) - H[2](j, i));
  };
  const Vec3 curl_dtv = curl_of(Jt);
  const Vec3 dth_over_c = curl_of(Jt) * (-1.0);
  out.faraday_law = {curl_dtv.x + curl_grad_half_v2(2, 1) + dth_over_c.x,
                     curl_dtv.y + curl_grad_half_v2(0, 2) + dth_over_c.y,
                     curl_dtv.z + curl_grad_half_v2(1, 0) + dth_over_c.z};
  return out;
}

double rel_hj_residual(const ActionField& act, const Probe& probe, const PhysParams& p) {
  const double V = act.V ? act.V(probe.r, probe.t) : 0.0;
  const Vec3 a = act.A ? act.A(probe.r, probe.t) : Vec3{};
  const double t0 = act.dphi_dt(probe.r, probe.t) / p.c + (p.q / p.c) * V;
  const Vec3 grad = act.grad(probe.r, probe.t);
  const Vec3 ti = grad - a * (p.q / p.c);  // spatial part of d phi + (q/c) A, lowered
  return t0 * t0 - ti.norm2() - p.mc() * p.mc();
}

double nonrel_hj_residual(const ActionField& act, const Probe& probe, const PhysParams& p) {
  const double V = act.V ? act.V(probe.r, probe.t) : 0.0;
  const Vec3 a = act.A ? act.A(probe.r, probe.t) : Vec3{};
  const Vec3 kinetic = act.grad(probe.r, probe.t) - a * (p.q / p.c);
  return act.dphi_dt(probe.r, probe.t) + kinetic.norm2() / (2.0 * p.m) + p.q * V +
         p.rest_energy();
}

Vec3 force_balance_residual(const AnalyticFlow& flow, const Probe& probe, const PhysParams& p) {
  const AnalogFields f = analog_fields(flow, probe, p);
  const Vec3 v = flow.v(probe.r, probe.t);
  const Mat3 J = flow.jacobian(probe.r, probe.t);
  const Vec3 force = (f.e + v.cross(f.h) * (1.0 / p.c)) * p.m;
  const Vec3 accel = (flow.dv_dt(probe.r, probe.t) + J.dot(v)) * p.m;
  return force - accel;
}

double derivative_self_check(const AnalyticFlow& flow, double step) {
  double worst = 0.0;
  for (const auto& probe : flow.probes) {
    const Vec3 r = probe.r;
    const double t = probe.t;
    const Mat3 J = flow.jacobian(r, t);
    for (int j = 0; j < 3; ++j) {
      Vec3 rp = r, rm = r;
      (j == 0 ? rp.x : j == 1 ? rp.y : rp.z) += step;
      (j == 0 ? rm.x : j == 1 ? rm.y : rm.z) -= step;
      const Vec3 d = (flow.v(rp, t) - flow.v(rm, t)) * (0.5 / step);
      worst = std::max({worst, std::abs(d.x - J(0, j)), std::abs(d.y - J(1, j)),
                        std::abs(d.z - J(2, j))});
    }
    const Vec3 dt = (flow.v(r, t + step) - flow.v(r, t - step)) * (0.5 / step);
    const Vec3 want = flow.dv_dt(r, t);
    worst = std::max({worst, std::abs(dt.x - want.x), std::abs(dt.y - want.y),
                      std::abs(dt.z - want.z)});
  }
  return worst;
}

namespace {

std::vector<Probe> default_probes() {
  std::vector<Probe> ps;
  for (double t : {0.3, 1.1})
    for (double x : {-0.8, 0.5})
      for (double y : {-0.4, 0.9})
        for (double z : {-0.6, 0.7}) ps.push_back({{x, y, z}, t});
  return ps;
}

Mat3 zero3() { return Mat3{}; }
std::array<Mat3, 3> zero_hess() { return {Mat3{}, Mat3{}, Mat3{}}; }

} // namespace

std::vector<AnalyticFlow> flow_catalog() {
  std::vector<AnalyticFlow> flows;
  auto probes = default_probes();

  flows.push_back({"uniform",
                   [](const Vec3&, double) { return Vec3{0.4, -0.2, 0.1}; },
                   [](const Vec3&, double) { return Vec3{}; },
                   [](const Vec3&, double) { return zero3(); },
                   [](const Vec3&, double) { return zero3(); },
                   [](const Vec3&, double) { return zero_hess(); },
                   probes});

  const Vec3 omega{0.0, 0.0, 0.7};
  flows.push_back({"rigid rotation",
                   [omega](const Vec3& r, double) { return omega.cross(r); },
                   [](const Vec3&, double) { return Vec3{}; },
                   [omega](const Vec3&, double) {
                     Mat3 J;
                     J(0, 1) = -omega.z; J(1, 0) = omega.z;
                     return J;
                   },
                   [](const Vec3&, double) { return zero3(); },
                   [](const Vec3&, double) { return zero_hess(); },
                   probes});

  // rotation rate ramping linearly in time
  const double w0 = 0.5, alpha = 0.3;
  flows.push_back({"ramped rotation",
                   [=](const Vec3& r, double t) {
                     return Vec3{0.0, 0.0, w0 * (1.0 + alpha * t)}.cross(r);
                   },
                   [=](const Vec3& r, double) {
                     return Vec3{0.0, 0.0, w0 * alpha}.cross(r);
                   },
                   [=](const Vec3&, double t) {
                     Mat3 J;
                     const double w = w0 * (1.0 + alpha * t);
                     J(0, 1) = -w; J(1, 0) = w;
                     return J;
                   },
                   [=](const Vec3&, double) {
                     Mat3 J;
                     J(0, 1) = -w0 * alpha; J(1, 0) = w0 * alpha;
                     return J;
                   },
                   [](const Vec3&, double) { return zero_hess(); },
                   probes});

  const double shear_k = 0.9;
  flows.push_back({"shear",
                   [=](const Vec3& r, double) { return Vec3{shear_k * r.y, 0.0, 0.0}; },
                   [](const Vec3&, double) { return Vec3{}; },
                   [=](const Vec3&, double) {
                     Mat3 J;
                     J(0, 1) = shear_k;
                     return J;
                   },
                   [](const Vec3&, double) { return zero3(); },
                   [](const Vec3&, double) { return zero_hess(); },
                   probes});

  // irrotational potential flow v = grad chi, chi = a(x^2 - y^2)
  const double pa = 0.35;
  flows.push_back({"potential flow",
                   [=](const Vec3& r, double) { return Vec3{2.0 * pa * r.x, -2.0 * pa * r.y, 0.0}; },
                   [](const Vec3&, double) { return Vec3{}; },
                   [=](const Vec3&, double) {
                     Mat3 J;
                     J(0, 0) = 2.0 * pa; J(1, 1) = -2.0 * pa;
                     return J;
                   },
                   [](const Vec3&, double) { return zero3(); },
                   [](const Vec3&, double) { return zero_hess(); },
                   probes});

  // circulating trigonometric field, nonzero curl and hessians
  const double eps = 0.25;
  flows.push_back({"trig circulation",
                   [=](const Vec3& r, double) {
                     return Vec3{eps * std::sin(r.y), eps * std::sin(r.z), eps * std::sin(r.x)};
                   },
                   [](const Vec3&, double) { return Vec3{}; },
                   [=](const Vec3& r, double) {
                     Mat3 J;
                     J(0, 1) = eps * std::cos(r.y);
                     J(1, 2) = eps * std::cos(r.z);
                     J(2, 0) = eps * std::cos(r.x);
                     return J;
                   },
                   [](const Vec3&, double) { return zero3(); },
                   [=](const Vec3& r, double) {
                     std::array<Mat3, 3> H{};
                     H[0](1, 1) = -eps * std::sin(r.y);
                     H[1](2, 2) = -eps * std::sin(r.z);
                     H[2](0, 0) = -eps * std::sin(r.x);
                     return H;
                   },
                   probes});

  return flows;
}

std::vector<ActionField> action_catalog(const PhysParams& p) {
  std::vector<ActionField> actions;
  auto probes = default_probes();
  const double mc2 = p.rest_energy();

  actions.push_back({"free rest particle",
                     [=](const Vec3&, double) { return -mc2; },
                     [](const Vec3&, double) { return Vec3{}; },
                     {}, {}, probes, true});

  const Vec3 mom{0.6, -0.3, 0.2};
  const double energy = std::sqrt(mom.norm2() * p.c * p.c + mc2 * mc2);
  actions.push_back({"boosted on-shell",
                     [=](const Vec3&, double) { return -energy; },
                     [=](const Vec3&, double) { return mom; },
                     {}, {}, probes, true});

  const double wrong_energy = 1.25 * energy;
  actions.push_back({"off-shell",
                     [=](const Vec3&, double) { return -wrong_energy; },
                     [=](const Vec3&, double) { return mom; },
                     {}, {}, probes, false});

  // expanding spherical action -mc sqrt(c^2 t^2 - r^2); flow map r/t
  std::vector<Probe> interior;
  for (double t : {1.5, 2.2})
    for (double x : {-0.5, 0.4})
      for (double y : {0.3, -0.2}) interior.push_back({{x, y, 0.25}, t});
  actions.push_back({"expanding spherical",
                     [=](const Vec3& r, double t) {
                       const double s = std::sqrt(p.c * p.c * t * t - r.norm2());
                       return -p.m * p.c * p.c * p.c * t / s;
                     },
                     [=](const Vec3& r, double t) {
                       const double s = std::sqrt(p.c * p.c * t * t - r.norm2());
                       return r * (p.mc() / s);
                     },
                     {}, {}, interior, true});

  return actions;
}

} // namespace kgflow::kinematics
