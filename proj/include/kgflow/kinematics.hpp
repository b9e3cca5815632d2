#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "kgflow/params.hpp"

// Pointwise verification of the classical-kinematics layer: the analog
// electromagnetic fields of a smooth flow, their Maxwell-pair identities,
// and the relativistic / non-relativistic Hamilton-Jacobi residuals. All
// quantities are evaluated at probe points from analytic derivatives; no
// lattice is involved.

namespace kgflow::kinematics {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm2() const { return dot(*this); }
};

/// Row-major 3x3; for a flow jacobian, (i, j) holds d v_i / d x_j.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  double operator()(int i, int j) const { return m[i][j]; }
  double& operator()(int i, int j) { return m[i][j]; }
  // transpose times a vector: (M^T v)_i = sum_k v_k M(k, i)
  Vec3 tdot(const Vec3& v) const {
    return {v.x * m[0][0] + v.y * m[1][0] + v.z * m[2][0],
            v.x * m[0][1] + v.y * m[1][1] + v.z * m[2][1],
            v.x * m[0][2] + v.y * m[1][2] + v.z * m[2][2]};
  }
  Vec3 dot(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }
};

struct Probe {
  Vec3 r;
  double t = 0.0;
};

/// Velocity field with analytic first derivatives and symmetric second
/// derivatives (hess[k](i, j) = d^2 v_k / d x_i d x_j).
struct AnalyticFlow {
  std::string name;
  std::function<Vec3(const Vec3&, double)> v;
  std::function<Vec3(const Vec3&, double)> dv_dt;
  std::function<Mat3(const Vec3&, double)> jacobian;
  std::function<Mat3(const Vec3&, double)> jacobian_dt;
  std::function<std::array<Mat3, 3>(const Vec3&, double)> hessian;
  std::vector<Probe> probes;
};

/// Action with analytic first derivatives, plus the electromagnetic
/// potentials it lives in.
struct ActionField {
  std::string name;
  std::function<double(const Vec3&, double)> dphi_dt;
  std::function<Vec3(const Vec3&, double)> grad;
  std::function<double(const Vec3&, double)> V = [](const Vec3&, double) { return 0.0; };
  std::function<Vec3(const Vec3&, double)> A = [](const Vec3&, double) { return Vec3{}; };
  std::vector<Probe> probes;
  bool on_shell = true;  // whether the fixture is supposed to satisfy the HJ equation
};

struct AnalogFields {
  Vec3 e, h, a;
  double a0 = 0.0;
};

/// a0 = -c^2 - v^2/2, a = -c v, e = -(1/c) d_t a - grad a0, h = curl a.
AnalogFields analog_fields(const AnalyticFlow& flow, const Probe& probe, const PhysParams& p);

struct MaxwellResiduals {
  double div_h = 0.0;
  Vec3 faraday_law;  // curl e + (1/c) d_t h
};

MaxwellResiduals maxwell_analog_residuals(const AnalyticFlow& flow, const Probe& probe,
                                          const PhysParams& p);

/// (d^mu phi + (q/c) A^mu)(d_mu phi + (q/c) A_mu) - m^2 c^2.
double rel_hj_residual(const ActionField& act, const Probe& probe, const PhysParams& p);

/// d_t phi + |grad phi - (q/c) A|^2 / 2m + q V + m c^2.
double nonrel_hj_residual(const ActionField& act, const Probe& probe, const PhysParams& p);

/// m (e + v x h / c) - m (d_t v + (v . grad) v), the force-balance chain;
/// zero for any smooth flow.
Vec3 force_balance_residual(const AnalyticFlow& flow, const Probe& probe, const PhysParams& p);

/// Largest discrepancy between the supplied derivatives and central
/// differences of v over the flow's probes; the catalog self-check.
double derivative_self_check(const AnalyticFlow& flow, double step = 1e-4);

/// Built-in flows: uniform, rigid rotation, time-ramped rotation, shear,
/// irrotational potential flow, and a circulating trigonometric field.
std::vector<AnalyticFlow> flow_catalog();

/// Built-in actions: free rest particle, boosted on-shell, deliberately
/// off-shell, the expanding spherical (Hubble-flow) action, and the
/// harmonic-oscillator action.
std::vector<ActionField> action_catalog(const PhysParams& p);

} // namespace kgflow::kinematics
