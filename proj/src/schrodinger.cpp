#include "kgflow/schrodinger.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "kgflow/errors.hpp"
#include "kgflow/hidden_phase.hpp"
#include "kgflow/norms.hpp"

namespace kgflow {

std::vector<cdouble> gaussian_packet(const SpacetimeGrid& g, double x0, double sigma, double k) {
  std::vector<cdouble> psi(g.nx);
  const double norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25);
  for (int j = 0; j < g.nx; ++j) {
    const double u = g.x(j) - x0;
    psi[j] = norm * std::exp(cdouble(-u * u / (4.0 * sigma * sigma), k * u));
  }
  return psi;
}

CyclicTridiag build_hamiltonian(const std::vector<double>& V, const std::vector<double>& Ax,
                                const PhysParams& p, double dx, bool periodic) {
  const int nx = static_cast<int>(V.size());
  CyclicTridiag H;
  H.periodic = periodic;
  H.diag.resize(nx);
  H.upper.assign(nx, {});
  H.lower.assign(nx, {});
  const double kin = p.hbar * p.hbar / (2.0 * p.m * dx * dx);
  const double gauge = p.hbar * p.q / (4.0 * p.m * p.c * dx);
  for (int j = 0; j < nx; ++j) {
    const double a = (p.q / p.c) * Ax[j];
    H.diag[j] = 2.0 * kin + a * a / (2.0 * p.m) + p.q * V[j];
  }
  for (int j = 0; j + 1 < nx; ++j) {
    H.upper[j] = cdouble(-kin, gauge * (Ax[j] + Ax[j + 1]));
    H.lower[j + 1] = cdouble(-kin, -gauge * (Ax[j + 1] + Ax[j]));
  }
  if (periodic) {
    H.corner_ur = cdouble(-kin, -gauge * (Ax[0] + Ax[nx - 1]));  // (0, nx-1) acts as j-1
    H.corner_ll = cdouble(-kin, gauge * (Ax[nx - 1] + Ax[0]));   // (nx-1, 0) acts as j+1
  }
  return H;
}

std::vector<cdouble> apply_matrix(const CyclicTridiag& H, const std::vector<cdouble>& x) {
  const int nx = static_cast<int>(x.size());
  std::vector<cdouble> y(nx);
  for (int j = 0; j < nx; ++j) {
    cdouble s = H.diag[j] * x[j];
    if (j + 1 < nx) s += H.upper[j] * x[j + 1];
    if (j > 0) s += H.lower[j] * x[j - 1];
    y[j] = s;
  }
  if (H.periodic && nx > 2) {
    y[0] += H.corner_ur * x[nx - 1];
    y[nx - 1] += H.corner_ll * x[0];
  }
  return y;
}

namespace {

std::vector<cdouble> solve_tridiag(std::vector<cdouble> diag, const std::vector<cdouble>& upper,
                                   const std::vector<cdouble>& lower, std::vector<cdouble> rhs) {
  const int n = static_cast<int>(diag.size());
  for (int i = 1; i < n; ++i) {
    if (std::abs(diag[i - 1]) == 0.0)
      throw std::runtime_error("solve_cyclic: zero pivot in tridiagonal elimination at row " +
                               std::to_string(i - 1));
    const cdouble w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  if (std::abs(diag[n - 1]) == 0.0)
    throw std::runtime_error("solve_cyclic: zero pivot at final row");
  std::vector<cdouble> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (int i = n - 2; i >= 0; --i) x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
  return x;
}

} // namespace

std::vector<cdouble> solve_cyclic(const CyclicTridiag& A, const std::vector<cdouble>& rhs) {
  const int n = static_cast<int>(rhs.size());
  if (!A.periodic || (A.corner_ur == cdouble{} && A.corner_ll == cdouble{}))
    return solve_tridiag(A.diag, A.upper, A.lower, rhs);

  // Sherman-Morrison: A = T + u v^T with u = (gamma, 0, .., corner_ll),
  // v = (1, 0, .., corner_ur / gamma).
  const cdouble gamma = -A.diag[0];
  std::vector<cdouble> diag = A.diag;
  diag[0] -= gamma;
  diag[n - 1] -= A.corner_ur * A.corner_ll / gamma;

  std::vector<cdouble> u(n, cdouble{});
  u[0] = gamma;
  u[n - 1] = A.corner_ll;

  std::vector<cdouble> y = solve_tridiag(diag, A.upper, A.lower, rhs);
  std::vector<cdouble> z = solve_tridiag(diag, A.upper, A.lower, u);

  const cdouble vy = y[0] + (A.corner_ur / gamma) * y[n - 1];
  const cdouble vz = z[0] + (A.corner_ur / gamma) * z[n - 1];
  const cdouble denom = 1.0 + vz;
  if (std::abs(denom) < 1e-300)
    throw std::runtime_error("solve_cyclic: singular Sherman-Morrison correction");
  const cdouble f = vy / denom;
  for (int i = 0; i < n; ++i) y[i] -= f * z[i];
  return y;
}

SchrodingerSolution evolve_schrodinger(const std::vector<cdouble>& psi0, const Potentials& a,
                                       const PhysParams& p, const SpacetimeGrid& grid,
                                       const SchrodingerOptions& opt) {
  grid.validate();
  p.validate();
  detail::require_same_grid(a.grid(), grid, "evolve_schrodinger potentials");
  if (static_cast<int>(psi0.size()) != grid.nx)
    throw std::invalid_argument("evolve_schrodinger: psi0 length does not match nx");

  const double kinetic_ratio = grid.dt * p.hbar / (p.m * grid.dx * grid.dx);
  if (opt.warn_to_stderr && kinetic_ratio > 0.5)
    std::fprintf(stderr,
                 "evolve_schrodinger: warning: dt hbar/(m dx^2) = %.3f > 0.5, kinetic scale "
                 "underresolved\n",
                 kinetic_ratio);

  const bool periodic = opt.boundary == Boundary::periodic;
  const int nx = grid.nx;
  SchrodingerSolution sol{ComplexField(grid, {}), a, p, opt.boundary, 0.0};
  for (int j = 0; j < nx; ++j) sol.psi(0, j) = psi0[j];

  const cdouble ilam(0.0, grid.dt / (2.0 * p.hbar));
  std::vector<double> Vh(nx), Axh(nx);
  std::vector<cdouble> cur(psi0), rhs(nx);

  double norm0 = 0.0;
  for (int j = 0; j < nx; ++j) norm0 += std::norm(cur[j]);

  for (int n = 0; n + 1 < grid.nt; ++n) {
    for (int j = 0; j < nx; ++j) {
      Vh[j] = 0.5 * (a.V(n, j) + a.V(n + 1, j));
      Axh[j] = 0.5 * (a.Ax(n, j) + a.Ax(n + 1, j));
    }
    CyclicTridiag H = build_hamiltonian(Vh, Axh, p, grid.dx, periodic);

    // rhs = (I - i lambda H) psi
    std::vector<cdouble> Hpsi = apply_matrix(H, cur);
    for (int j = 0; j < nx; ++j) rhs[j] = cur[j] - ilam * Hpsi[j];

    CyclicTridiag A = H;
    for (int j = 0; j < nx; ++j) A.diag[j] = 1.0 + ilam * H.diag[j];
    for (int j = 0; j < nx; ++j) { A.upper[j] *= ilam; A.lower[j] *= ilam; }
    A.corner_ur *= ilam;
    A.corner_ll *= ilam;

    if (!periodic) {
      // Clamped ends: hold the boundary values.
      A.upper[0] = 0.0; A.lower[0] = 0.0; A.diag[0] = 1.0; rhs[0] = cur[0];
      A.diag[nx - 1] = 1.0; A.upper[nx - 1] = 0.0; A.lower[nx - 1] = 0.0; rhs[nx - 1] = cur[nx - 1];
    }

    cur = solve_cyclic(A, rhs);
    double norm = 0.0;
    for (int j = 0; j < nx; ++j) {
      if (!std::isfinite(cur[j].real()) || !std::isfinite(cur[j].imag()))
        throw DivergenceError("evolve_schrodinger: non-finite field at step " + std::to_string(n + 1),
                              n + 1);
      norm += std::norm(cur[j]);
      sol.psi(n + 1, j) = cur[j];
    }
    sol.norm_drift = std::max(sol.norm_drift, std::abs(std::sqrt(norm / norm0) - 1.0));
  }
  return sol;
}

KGInitialData kg_initial_from_schrodinger(const std::vector<cdouble>& psi0, const Potentials& a,
                                          const PhysParams& p, const SpacetimeGrid& grid) {
  std::vector<double> V0(grid.nx), Ax0(grid.nx);
  for (int j = 0; j < grid.nx; ++j) { V0[j] = a.V(0, j); Ax0[j] = a.Ax(0, j); }
  CyclicTridiag H = build_hamiltonian(V0, Ax0, p, grid.dx, true);
  std::vector<cdouble> Hpsi = apply_matrix(H, psi0);
  KGInitialData init;
  init.psi0 = psi0;
  init.psi0_dot.resize(grid.nx);
  const double mc2 = p.rest_energy();
  for (int j = 0; j < grid.nx; ++j)
    init.psi0_dot[j] = cdouble(0.0, -1.0 / p.hbar) * (mc2 * psi0[j] + Hpsi[j]);
  return init;
}

ScalarField u_field(const MadelungData& md, const Potentials& a, const PhysParams& p) {
  ScalarField ds = ddx_masked(md.phase, md.node_mask);
  ScalarField out(md.grid(), 0.0);
  const auto& g = md.grid();
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j)
      out(n, j) = (ds(n, j) - (p.q / p.c) * a.Ax(n, j)) / p.m;
  return out;
}

FluidState fluid_state(const SchrodingerSolution& sol, const MadelungData& md) {
  const auto& g = md.grid();
  const PhysParams& p = sol.params;
  FluidState f{u_field(md, sol.potentials, p), ScalarField(g, 0.0),
               quantum_potential(md, p), ScalarField(g, 0.0), ScalarField(g, 0.0)};
  f.v = f.u;
  ScalarField dV = ddx(sol.potentials.V);
  ScalarField dAx_dt = ddt(sol.potentials.Ax);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j)
      f.E(n, j) = -dV(n, j) - dAx_dt(n, j) / p.c;
  return f;
}

FluidResiduals fluid_residuals(const SchrodingerSolution& sol, const MadelungData& md) {
  const auto& g = md.grid();
  const PhysParams& p = sol.params;
  FluidState f = fluid_state(sol, md);

  ScalarField du_dt = ddt_masked(f.u, md.halo_mask);
  ScalarField du_dx = ddx_masked(f.u, md.halo_mask);
  ScalarField dQ_dx = ddx_masked(f.Q, md.halo_mask);
  ScalarField drho_dt = ddt(md.rho);
  ScalarField rho_u = md.rho * f.u;
  ScalarField flux_dx = ddx_masked(rho_u, md.halo_mask);

  // Report two points further in than the halo, so the chained stencils
  // (derivatives of fields that are themselves run-edge one-sided
  // derivatives) never straddle threshold-level density values.
  Mask report = dilate_mask(md.halo_mask, g.nt, g.nx, 2);

  FluidResiduals r{ScalarField(g, 0.0), ScalarField(g, 0.0)};
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      if (report[static_cast<size_t>(n) * g.nx + j]) continue;
      // u x H vanishes identically in one dimension; the term stays for shape
      const double cross = f.u(n, j) * f.H(n, j);
      r.momentum(n, j) = p.m * (du_dt(n, j) + f.u(n, j) * du_dx(n, j)) - p.q * f.E(n, j) -
                         (p.q / p.c) * cross + dQ_dx(n, j);
      r.continuity(n, j) = drho_dt(n, j) + flux_dx(n, j);
    }
  return r;
}

LowSpeedPhi solve_phi_lowspeed(const MadelungData& md, const Potentials& a, const PhysParams& p,
                               const std::vector<double>& phi0) {
  const auto& g = md.grid();
  if (!phi0.empty() && static_cast<int>(phi0.size()) != g.nx)
    throw std::invalid_argument("solve_phi_lowspeed: phi0 length does not match nx");

  ScalarField u = u_field(md, a, p);
  ScalarField Q = quantum_potential(md, p);
  LowSpeedPhi out{ScalarField(g, 0.0), md.halo_mask, 0.0};

  std::vector<double> cur(g.nx, 0.0), stage(g.nx), dphi(g.nx), F1(g.nx), F2(g.nx);
  for (int j = 0; j < g.nx; ++j)
    cur[j] = (md.halo_mask[j] || phi0.empty()) ? 0.0 : phi0[j];

  // The characteristic speed u + d_x Phi / m is unbounded (unlike the
  // relativistic march, whose speed saturates at c), so run edges created
  // by the mask can have inward-running characteristics that carry data the
  // mask removed. The two outermost points of each run are therefore not
  // self-updated: they follow the interior by linear extrapolation, a
  // stable numerical boundary. Everything inside the influence cone of
  // those edges is excluded from out.mask afterwards.
  auto rhs = [&](int n, const std::vector<double>& row, std::vector<double>& F) {
    const std::uint8_t* hmask = md.halo_mask.data() + static_cast<size_t>(n) * g.nx;
    const double inv2h = 0.5 / g.dx;
    int i = 0;
    while (i < g.nx) {
      if (hmask[i]) { dphi[i] = 0.0; ++i; continue; }
      int end = i;
      while (end + 1 < g.nx && !hmask[end + 1]) ++end;
      const int len = end - i + 1;
      if (len >= 3)
        for (int k = 0; k < len; ++k) {
          const int j = i + k;
          if (k == 0) dphi[j] = (-3.0 * row[j] + 4.0 * row[j + 1] - row[j + 2]) * inv2h;
          else if (k == len - 1) dphi[j] = (3.0 * row[j] - 4.0 * row[j - 1] + row[j - 2]) * inv2h;
          else dphi[j] = (row[j + 1] - row[j - 1]) * inv2h;
        }
      else
        for (int k = 0; k < len; ++k) dphi[i + k] = 0.0;
      i = end + 1;
    }
    for (int j = 0; j < g.nx; ++j) {
      if (hmask[j]) { F[j] = 0.0; continue; }
      F[j] = Q(n, j) - u(n, j) * dphi[j] - dphi[j] * dphi[j] / (2.0 * p.m);
      // characteristic speed, measured away from the extrapolated edge pair
      const bool edge = (j < 2 || hmask[j - 1] || hmask[j - 2] || j > g.nx - 3 ||
                         hmask[j + 1] || hmask[j + 2]);
      if (!edge) {
        const double speed = std::abs(u(n, j) + dphi[j] / p.m);
        if (speed > out.max_edge_speed) out.max_edge_speed = speed;
      }
    }
  };

  auto extrapolate_edges = [&](int n_next) {
    const std::uint8_t* hmask = md.halo_mask.data() + static_cast<size_t>(n_next) * g.nx;
    int i = 0;
    while (i < g.nx) {
      if (hmask[i]) { ++i; continue; }
      int end = i;
      while (end + 1 < g.nx && !hmask[end + 1]) ++end;
      if (end - i + 1 >= 6) {
        cur[i + 1] = 2.0 * cur[i + 2] - cur[i + 3];
        cur[i] = 2.0 * cur[i + 1] - cur[i + 2];
        cur[end - 1] = 2.0 * cur[end - 2] - cur[end - 3];
        cur[end] = 2.0 * cur[end - 1] - cur[end - 2];
      }
      i = end + 1;
    }
  };

  for (int n = 0; n < g.nt; ++n) {
    for (int j = 0; j < g.nx; ++j) out.phi(n, j) = cur[j];
    if (n + 1 == g.nt) break;
    rhs(n, cur, F1);
    for (int j = 0; j < g.nx; ++j) stage[j] = cur[j] + g.dt * F1[j];
    rhs(n + 1, stage, F2);
    const std::uint8_t* next_mask = md.halo_mask.data() + static_cast<size_t>(n + 1) * g.nx;
    for (int j = 0; j < g.nx; ++j) {
      if (next_mask[j]) { cur[j] = 0.0; continue; }
      cur[j] += 0.5 * g.dt * (F1[j] + F2[j]);
      if (!std::isfinite(cur[j]))
        throw DivergenceError("solve_phi_lowspeed: non-finite Phi at step " + std::to_string(n + 1),
                              n + 1);
    }
    extrapolate_edges(n + 1);
  }

  // Widen the mask by the influence cone of the extrapolated edges: at
  // slice n, anything within speed * t + a stencil margin of a run edge is
  // not determined by the initial data.
  const double speed = out.max_edge_speed;
  for (int n = 0; n < g.nt; ++n) {
    const int pad = static_cast<int>(std::ceil(speed * (g.t(n) - g.t0) / g.dx)) + 4;
    const std::uint8_t* hmask = md.halo_mask.data() + static_cast<size_t>(n) * g.nx;
    std::uint8_t* omask = out.mask.data() + static_cast<size_t>(n) * g.nx;
    int i = 0;
    while (i < g.nx) {
      if (hmask[i]) { ++i; continue; }
      int end = i;
      while (end + 1 < g.nx && !hmask[end + 1]) ++end;
      // pad only edges that border masked points (not the block boundary,
      // where the one-sided calculus is fine and nothing was removed)
      if (i > 0)
        for (int k = 0; k < pad && i + k <= end; ++k) omask[i + k] = 1;
      if (end < g.nx - 1)
        for (int k = 0; k < pad && end - k >= i; ++k) omask[end - k] = 1;
      i = end + 1;
    }
  }
  return out;
}

FluidState corrected_flow(const FluidState& fluid, const LowSpeedPhi& phi_lowspeed,
                          const MadelungData& md, const PhysParams& p) {
  FluidState out = fluid;
  ScalarField dphi = ddx_masked(phi_lowspeed.phi, md.halo_mask);
  const auto& g = md.grid();
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) out.v(n, j) = fluid.u(n, j) + dphi(n, j) / p.m;
  return out;
}

ScalarField newton_lorentz_residual(const FluidState& fluid, const MadelungData& md,
                                    const LowSpeedPhi& phi_lowspeed, const PhysParams& p) {
  const auto& g = md.grid();
  // differentiate over the region where the fields exist, report only where
  // the low-speed phase is trusted
  ScalarField dv_dt = ddt_masked(fluid.v, md.halo_mask);
  ScalarField dv_dx = ddx_masked(fluid.v, md.halo_mask);
  const Mask& report = phi_lowspeed.mask;
  ScalarField out(g, 0.0);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      if (report[static_cast<size_t>(n) * g.nx + j]) continue;
      const double cross = fluid.v(n, j) * fluid.H(n, j);
      out(n, j) = p.m * (dv_dt(n, j) + fluid.v(n, j) * dv_dx(n, j)) - p.q * fluid.E(n, j) -
                  (p.q / p.c) * cross;
    }
  return out;
}

ScalarField sourced_continuity_residual(const FluidState& fluid, const MadelungData& md,
                                        const LowSpeedPhi& phi_lowspeed, const PhysParams& p) {
  const auto& g = md.grid();
  ScalarField drho_dt = ddt(md.rho);
  ScalarField rho_v = md.rho * fluid.v;
  ScalarField dflux = ddx_masked(rho_v, md.halo_mask);
  ScalarField dphi = ddx_masked(phi_lowspeed.phi, md.halo_mask);
  ScalarField rho_dphi = md.rho * dphi;
  ScalarField dsource = ddx_masked(rho_dphi, md.halo_mask);
  const Mask& report = phi_lowspeed.mask;
  ScalarField out(g, 0.0);
  // The source enters with the sign fixed by m v = m u + grad Phi together
  // with the source-free continuity of u: d_t rho + d_x(rho v) equals
  // +d_x(rho d_x Phi)/m, the low-speed limit of the covariant statement.
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      if (report[static_cast<size_t>(n) * g.nx + j]) continue;
      out(n, j) = drho_dt(n, j) + dflux(n, j) - dsource(n, j) / p.m;
    }
  return out;
}

LowSpeedReport low_speed_compare(const KGSolution& kg, const SchrodingerSolution& s,
                                 const PhysParams& p) {
  const auto& g = kg.psi.grid();
  if (!(g == s.psi.grid()))
    throw std::invalid_argument("low_speed_compare: solutions live on different grids");

  MadelungData md_kg = decompose(kg.psi, p);
  MadelungData md_s = decompose(s.psi, p);

  LowSpeedReport rep;
  rep.density_rel_l2.resize(g.nt);
  rep.phase_rms.resize(g.nt);

  for (int n = 0; n < g.nt; ++n) {
    rep.density_rel_l2[n] = rel_l2_slice(md_kg.rho, md_s.rho, n);
    rep.density_max = std::max(rep.density_max, rep.density_rel_l2[n]);
  }

  // Phase comparison: d = (S_kg + m c^2 t) - S_s, up to one global 2 pi hbar
  // offset anchored at t = 0 where both runs start from the same packet.
  const double mc2 = p.rest_energy();
  const double turn = 2.0 * std::numbers::pi * p.hbar;
  int ja = 0;
  while (ja < g.nx && (md_kg.masked(0, ja) || md_s.masked(0, ja))) ++ja;
  const double d0 = md_kg.phase(0, ja) + mc2 * g.t(0) - md_s.phase(0, ja);
  const double offset = turn * std::round(d0 / turn);
  for (int n = 0; n < g.nt; ++n) {
    double sum = 0.0;
    int count = 0;
    for (int j = 0; j < g.nx; ++j) {
      const size_t idx = static_cast<size_t>(n) * g.nx + j;
      if (md_kg.halo_mask[idx] || md_s.halo_mask[idx]) continue;
      const double d = md_kg.phase(n, j) + mc2 * g.t(n) - md_s.phase(n, j) - offset;
      sum += d * d;
      ++count;
    }
    rep.phase_rms[n] = count ? std::sqrt(sum / count) : 0.0;
  }

  // Low-speed Hamilton-Jacobi residual of the KG-side Madelung variables:
  // d_t S + m c^2 + (d_x S - (q/c)Ax)^2 / 2m + Q + q V.
  {
    ScalarField dS_dt = ddt(md_kg.phase);
    ScalarField dS_dx = ddx_masked(md_kg.phase, md_kg.node_mask);
    ScalarField Q = quantum_potential(md_kg, p);
    for (int n = 2; n < g.nt - 2; ++n)
      for (int j = 2; j < g.nx - 2; ++j) {
        const size_t idx = static_cast<size_t>(n) * g.nx + j;
        if (md_kg.halo_mask[idx]) continue;
        const double px = dS_dx(n, j) - (p.q / p.c) * kg.potentials.Ax(n, j);
        const double r = dS_dt(n, j) + mc2 + px * px / (2.0 * p.m) + Q(n, j) +
                         p.q * kg.potentials.V(n, j);
        rep.eq33_max = std::max(rep.eq33_max, std::abs(r));
      }
    rep.quantum_potential_max = max_abs_interior(Q, &md_kg.halo_mask);
  }

  // Size of the two terms the paper's low-speed reduction sets to zero.
  {
    PhiOptions opt;
    opt.warn_to_stderr = false;
    HiddenPhase hp = solve_phi(md_kg, kg.potentials, p, {}, opt);
    ScalarField sqrt_rho(g, 0.0);
    for (int n = 0; n < g.nt; ++n)
      for (int j = 0; j < g.nx; ++j) sqrt_rho(n, j) = std::sqrt(md_kg.rho(n, j));
    ScalarField rho_tt = d2dt(sqrt_rho);
    const double c2 = p.c * p.c;
    for (int n = 2; n < g.nt - 2; ++n)
      for (int j = 2; j < g.nx - 2; ++j) {
        const size_t idx = static_cast<size_t>(n) * g.nx + j;
        if (md_kg.halo_mask[idx]) continue;
        const double dphi_t = hp.dphi_dt(n, j);
        rep.dropped_phi_t_max = std::max(rep.dropped_phi_t_max, dphi_t * dphi_t / c2);
        rep.dropped_rho_tt_max =
            std::max(rep.dropped_rho_tt_max,
                     std::abs(p.hbar * p.hbar * rho_tt(n, j) / (c2 * sqrt_rho(n, j))));
      }
  }
  return rep;
}

} // namespace kgflow
