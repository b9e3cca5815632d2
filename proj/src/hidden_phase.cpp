#include "kgflow/hidden_phase.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "kgflow/errors.hpp"
#include "kgflow/norms.hpp"

namespace kgflow {

namespace {

// Spatial derivative of one slice over its unmasked runs (same stencils as
// ddx_masked, kept local so the march can work row by row).
void row_ddx_masked(const double* f, const std::uint8_t* mask, int nx, double dx, double* out) {
  const double inv2h = 0.5 / dx;
  int i = 0;
  while (i < nx) {
    if (mask[i]) { out[i] = 0.0; ++i; continue; }
    int end = i;
    while (end + 1 < nx && !mask[end + 1]) ++end;
    const int len = end - i + 1;
    if (len >= 3) {
      for (int k = 0; k < len; ++k) {
        const int j = i + k;
        if (k == 0)
          out[j] = (-3.0 * f[j] + 4.0 * f[j + 1] - f[j + 2]) * inv2h;
        else if (k == len - 1)
          out[j] = (3.0 * f[j] - 4.0 * f[j - 1] + f[j - 2]) * inv2h;
        else
          out[j] = (f[j + 1] - f[j - 1]) * inv2h;
      }
    } else {
      for (int k = 0; k < len; ++k) out[i + k] = 0.0;
    }
    i = end + 1;
  }
}

int count_runs(const std::uint8_t* mask, int nx) {
  int runs = 0;
  bool in_run = false;
  for (int j = 0; j < nx; ++j) {
    if (!mask[j] && !in_run) { ++runs; in_run = true; }
    if (mask[j]) in_run = false;
  }
  return runs;
}

struct MarchContext {
  const MadelungData* md;
  const Potentials* a;
  PhysParams p;
  ScalarField dS_dt;
  int branch;
};

// rhs of the march at slice n given the current Phi row: fills F and the
// spatial momentum px for reuse.
void march_rhs(const MarchContext& ctx, int n, const std::vector<double>& phi_row,
               std::vector<double>& scratch, std::vector<double>& px, std::vector<double>& F) {
  const auto& g = ctx.md->grid();
  const int nx = g.nx;
  const std::uint8_t* hmask = ctx.md->halo_mask.data() + static_cast<size_t>(n) * nx;
  for (int j = 0; j < nx; ++j) scratch[j] = ctx.md->phase(n, j) + phi_row[j];
  row_ddx_masked(scratch.data(), hmask, nx, g.dx, px.data());
  const double m2c2 = ctx.p.mc() * ctx.p.mc();
  for (int j = 0; j < nx; ++j) {
    if (hmask[j]) { F[j] = 0.0; px[j] = 0.0; continue; }
    px[j] -= (ctx.p.q / ctx.p.c) * ctx.a->Ax(n, j);
    const double K = ctx.branch * ctx.p.c * std::sqrt(m2c2 + px[j] * px[j]);
    F[j] = -K - ctx.p.q * ctx.a->V(n, j) - ctx.dS_dt(n, j);
  }
}

} // namespace

HiddenPhase solve_phi(const MadelungData& md, const Potentials& a, const PhysParams& p,
                      const std::vector<double>& phi0, const PhiOptions& opt) {
  const auto& g = md.grid();
  detail::require_same_grid(g, a.grid(), "solve_phi");
  if (opt.branch != 1 && opt.branch != -1)
    throw std::invalid_argument("solve_phi: branch must be +1 or -1");
  if (!phi0.empty() && static_cast<int>(phi0.size()) != g.nx)
    throw std::invalid_argument("solve_phi: phi0 length does not match nx");

  HiddenPhase hp;
  hp.branch = opt.branch;
  hp.phi0 = phi0.empty() ? std::vector<double>(g.nx, 0.0) : phi0;
  hp.phi = ScalarField(g, 0.0);
  hp.dphi_dt = ScalarField(g, 0.0);

  MarchContext ctx{&md, &a, p, ddt(md.phase), opt.branch};

  std::vector<double> cur(g.nx, 0.0), stage(g.nx, 0.0), scratch(g.nx), px(g.nx);
  std::vector<double> F1(g.nx), F2(g.nx);

  for (int j = 0; j < g.nx; ++j)
    cur[j] = md.halo_mask[j] ? 0.0 : hp.phi0[j];

  hp.max_region_count = 1;
  for (int n = 0; n < g.nt; ++n)
    hp.max_region_count =
        std::max(hp.max_region_count,
                 count_runs(md.halo_mask.data() + static_cast<size_t>(n) * g.nx, g.nx));

  // Where the node mask cuts the domain, characteristics can run inward
  // from the removed region; self-updating those edge points through
  // one-sided stencils is unstable over long horizons. The outer two
  // points of a run bordering masked points follow the interior by linear
  // extrapolation instead (block boundaries keep the one-sided update:
  // nothing was removed there).
  auto extrapolate_gap_edges = [&](int n_next) {
    const std::uint8_t* hmask = md.halo_mask.data() + static_cast<size_t>(n_next) * g.nx;
    int i = 0;
    while (i < g.nx) {
      if (hmask[i]) { ++i; continue; }
      int end = i;
      while (end + 1 < g.nx && !hmask[end + 1]) ++end;
      if (end - i + 1 >= 6) {
        if (i > 0) {
          cur[i + 1] = 2.0 * cur[i + 2] - cur[i + 3];
          cur[i] = 2.0 * cur[i + 1] - cur[i + 2];
        }
        if (end < g.nx - 1) {
          cur[end - 1] = 2.0 * cur[end - 2] - cur[end - 3];
          cur[end] = 2.0 * cur[end - 1] - cur[end - 2];
        }
      }
      i = end + 1;
    }
  };

  for (int n = 0; n < g.nt; ++n) {
    march_rhs(ctx, n, cur, scratch, px, F1);
    for (int j = 0; j < g.nx; ++j) {
      hp.phi(n, j) = cur[j];
      hp.dphi_dt(n, j) = F1[j];
    }
    if (n + 1 == g.nt) break;

    // Heun step: predictor at n+1, trapezoidal corrector.
    const std::uint8_t* next_mask = md.halo_mask.data() + static_cast<size_t>(n + 1) * g.nx;
    for (int j = 0; j < g.nx; ++j) stage[j] = cur[j] + g.dt * F1[j];
    march_rhs(ctx, n + 1, stage, scratch, px, F2);
    for (int j = 0; j < g.nx; ++j) {
      if (next_mask[j]) { cur[j] = 0.0; continue; }
      cur[j] = cur[j] + 0.5 * g.dt * (F1[j] + F2[j]);
      if (!std::isfinite(cur[j]))
        throw DivergenceError("solve_phi: non-finite Phi at step " + std::to_string(n + 1), n + 1);
    }
    extrapolate_gap_edges(n + 1);
  }

  KineticState ks = velocity_field(md, hp, a, p);
  hp.report.mass_shell_max = max_abs_interior(mass_shell_residual(ks, p), &md.halo_mask);
  hp.report.phi_condition_max =
      max_abs_interior(phi_condition_residual(md, hp, ks, p), &md.halo_mask);
  if (opt.warn_to_stderr && hp.report.mass_shell_max > opt.mass_shell_tolerance)
    std::fprintf(stderr, "solve_phi: warning: mass-shell residual %.3e above tolerance %.1e\n",
                 hp.report.mass_shell_max, opt.mass_shell_tolerance);
  return hp;
}

KineticState velocity_field(const MadelungData& md, const HiddenPhase& hp, const Potentials& a,
                            const PhysParams& p) {
  const auto& g = md.grid();
  KineticState ks{FourVectorField{ScalarField(g, 0.0), ScalarField(g, 0.0), Variance::covariant},
                  ScalarField(g, 0.0), md.halo_mask};

  ScalarField dS_dt = ddt(md.phase);
  std::vector<double> scratch(g.nx), px(g.nx);
  for (int n = 0; n < g.nt; ++n) {
    const std::uint8_t* hmask = md.halo_mask.data() + static_cast<size_t>(n) * g.nx;
    for (int j = 0; j < g.nx; ++j) scratch[j] = md.phase(n, j) + hp.phi(n, j);
    row_ddx_masked(scratch.data(), hmask, g.nx, g.dx, px.data());
    for (int j = 0; j < g.nx; ++j) {
      if (hmask[j]) continue;
      const double Px = px[j] - (p.q / p.c) * a.Ax(n, j);  // contravariant m v^1
      const double K = -(hp.dphi_dt(n, j) + dS_dt(n, j)) - p.q * a.V(n, j);
      ks.K(n, j) = K;
      ks.v.time_component(n, j) = K / (p.m * p.c);  // v_0 = v^0
      ks.v.space_component(n, j) = -Px / p.m;       // v_1 = -v^1
    }
  }
  return ks;
}

ScalarField mass_shell_residual(const KineticState& ks, const PhysParams& p) {
  ScalarField out(ks.grid(), 0.0);
  const auto& g = ks.grid();
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      if (ks.halo_mask[static_cast<size_t>(n) * g.nx + j]) continue;
      const double vt = ks.v.time_component(n, j), vx = ks.v.space_component(n, j);
      out(n, j) = vt * vt - vx * vx - p.c * p.c;
    }
  return out;
}

ScalarField phi_condition_residual(const MadelungData& md, const HiddenPhase& hp,
                                   const KineticState& ks, const PhysParams& p) {
  const auto& g = md.grid();
  ScalarField dphi_t = ddt_masked(hp.phi, md.halo_mask);
  ScalarField dphi_x = ddx_masked(hp.phi, md.halo_mask);
  ScalarField qt = quantum_term_rel(md, p);
  ScalarField out(g, 0.0);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      if (md.halo_mask[static_cast<size_t>(n) * g.nx + j]) continue;
      const double d0 = dphi_t(n, j) / p.c;   // covariant d_0 Phi
      const double d1 = dphi_x(n, j);
      const double vt = ks.v.time_component(n, j), vx = ks.v.space_component(n, j);
      // v^mu d_mu Phi with v stored covariant: v^0 = v_0, v^1 = -v_1
      const double v_dot_grad = vt * d0 - vx * d1;
      out(n, j) = 2.0 * p.m * v_dot_grad + (d0 * d0 - d1 * d1) - qt(n, j);
    }
  return out;
}

std::pair<ScalarField, ScalarField> creation_rate(const MadelungData& md, const HiddenPhase& hp,
                                                  const KineticState& ks, const PhysParams& p) {
  const auto& g = md.grid();

  ScalarField flux_t = md.rho * ks.v.time_component;
  ScalarField flux_x = md.rho * ks.v.space_component;
  ScalarField lhs(g, 0.0);
  {
    ScalarField dt_part = ddt_masked(flux_t, md.halo_mask);
    ScalarField dx_part = ddx_masked(flux_x, md.halo_mask);
    for (int n = 0; n < g.nt; ++n)
      for (int j = 0; j < g.nx; ++j) {
        if (md.halo_mask[static_cast<size_t>(n) * g.nx + j]) continue;
        lhs(n, j) = dt_part(n, j) / p.c - dx_part(n, j);
      }
  }

  ScalarField dphi_t = ddt_masked(hp.phi, md.halo_mask);
  ScalarField dphi_x = ddx_masked(hp.phi, md.halo_mask);
  ScalarField rho_dphi_t(g, 0.0), rho_dphi_x(g, 0.0);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      rho_dphi_t(n, j) = md.rho(n, j) * dphi_t(n, j) / p.c;  // covariant d_0
      rho_dphi_x(n, j) = md.rho(n, j) * dphi_x(n, j);
    }
  ScalarField rhs(g, 0.0);
  {
    ScalarField dt_part = ddt_masked(rho_dphi_t, md.halo_mask);
    ScalarField dx_part = ddx_masked(rho_dphi_x, md.halo_mask);
    for (int n = 0; n < g.nt; ++n)
      for (int j = 0; j < g.nx; ++j) {
        if (md.halo_mask[static_cast<size_t>(n) * g.nx + j]) continue;
        rhs(n, j) = -(dt_part(n, j) / p.c - dx_part(n, j)) / p.m;
      }
  }
  return {std::move(lhs), std::move(rhs)};
}

SymTensorField stress_tensor(const MadelungData& md, const KineticState& ks,
                             const PhysParams& p) {
  const auto& g = md.grid();
  SymTensorField T{ScalarField(g, 0.0), ScalarField(g, 0.0), ScalarField(g, 0.0)};
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      const double mrho = p.m * md.rho(n, j);
      const double vt = ks.v.time_component(n, j), vx = ks.v.space_component(n, j);
      T.tt(n, j) = mrho * vt * vt;
      T.tx(n, j) = mrho * vt * vx;
      T.xx(n, j) = mrho * vx * vx;
    }
  return T;
}

namespace {

// d^nu (rho d_nu Phi), the creation/annihilation divergence.
ScalarField phi_flux_divergence(const MadelungData& md, const HiddenPhase& hp,
                                const PhysParams& p) {
  const auto& g = md.grid();
  ScalarField dphi_t = ddt_masked(hp.phi, md.halo_mask);
  ScalarField dphi_x = ddx_masked(hp.phi, md.halo_mask);
  ScalarField ft(g, 0.0), fx(g, 0.0);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      ft(n, j) = md.rho(n, j) * dphi_t(n, j) / p.c;
      fx(n, j) = md.rho(n, j) * dphi_x(n, j);
    }
  ScalarField dt_part = ddt_masked(ft, md.halo_mask);
  ScalarField dx_part = ddx_masked(fx, md.halo_mask);
  ScalarField out(g, 0.0);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      if (md.halo_mask[static_cast<size_t>(n) * g.nx + j]) continue;
      out(n, j) = dt_part(n, j) / p.c - dx_part(n, j);
    }
  return out;
}

} // namespace

FourVectorField quantum_force(const MadelungData& md, const HiddenPhase& hp,
                              const KineticState& ks, const PhysParams& p) {
  const auto& g = md.grid();
  ScalarField D = phi_flux_divergence(md, hp, p);
  FourVectorField K{ScalarField(g, 0.0), ScalarField(g, 0.0), Variance::covariant};
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      K.time_component(n, j) = -ks.v.time_component(n, j) * D(n, j);
      K.space_component(n, j) = -ks.v.space_component(n, j) * D(n, j);
    }
  return K;
}

FourVectorField euler_residual(const MadelungData& md, const KineticState& ks,
                               const Potentials& a, const HiddenPhase& hp, const PhysParams& p) {
  const auto& g = md.grid();
  SymTensorField T = stress_tensor(md, ks, p);
  ScalarField D = phi_flux_divergence(md, hp, p);
  ScalarField F01 = faraday(a, p).f01;

  ScalarField dt_tt = ddt_masked(T.tt, md.halo_mask), dx_tx = ddx_masked(T.tx, md.halo_mask);
  ScalarField dt_tx = ddt_masked(T.tx, md.halo_mask), dx_xx = ddx_masked(T.xx, md.halo_mask);

  FourVectorField r{ScalarField(g, 0.0), ScalarField(g, 0.0), Variance::covariant};
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      if (md.halo_mask[static_cast<size_t>(n) * g.nx + j]) continue;
      const double rho = md.rho(n, j);
      const double vt = ks.v.time_component(n, j), vx = ks.v.space_component(n, j);
      // v^nu F_{mu nu}: for mu=0 only F_01 enters through v^1 = -v_1;
      // for mu=1 only F_10 = -F_01 through v^0 = v_0.
      const double lorentz_t = (p.q / p.c) * rho * (-vx) * F01(n, j);
      const double lorentz_x = (p.q / p.c) * rho * (-vt) * F01(n, j);
      r.time_component(n, j) = dt_tt(n, j) / p.c - dx_tx(n, j) - lorentz_t + vt * D(n, j);
      r.space_component(n, j) = dt_tx(n, j) / p.c - dx_xx(n, j) - lorentz_x + vx * D(n, j);
    }
  return r;
}

} // namespace kgflow
