#include "kgflow/madelung.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kgflow/norms.hpp"

namespace kgflow {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_to_pi(double d) {
  while (d > std::numbers::pi) d -= two_pi;
  while (d < -std::numbers::pi) d += two_pi;
  return d;
}

} // namespace

Mask dilate_mask(const Mask& m, int nt, int nx, int radius) {
  Mask out = m;
  for (int n = 0; n < nt; ++n)
    for (int j = 0; j < nx; ++j) {
      if (!m[static_cast<size_t>(n) * nx + j]) continue;
      for (int dn = -radius; dn <= radius; ++dn)
        for (int dj = -radius; dj <= radius; ++dj) {
          const int nn = n + dn, jj = j + dj;
          if (nn < 0 || nn >= nt || jj < 0 || jj >= nx) continue;
          out[static_cast<size_t>(nn) * nx + jj] = 1;
        }
    }
  return out;
}

MadelungData decompose(const ComplexField& psi, const PhysParams& p, double eps_rel) {
  if (!(eps_rel > 0.0)) throw std::invalid_argument("decompose: eps_rel must be > 0");
  const auto& g = psi.grid();
  MadelungData md{ScalarField(g, 0.0), ScalarField(g, 0.0), Mask(g.points(), 0),
                  Mask(g.points(), 0), 0.0, {}};

  double rho_max = 0.0;
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      md.rho(n, j) = std::norm(psi(n, j));
      rho_max = std::max(rho_max, md.rho(n, j));
    }
  md.eps_abs = eps_rel * rho_max;

  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j)
      md.node_mask[static_cast<size_t>(n) * g.nx + j] = md.rho(n, j) < md.eps_abs ? 1 : 0;

  // Unwrap along space within each slice, re-anchoring across masked gaps.
  std::vector<double> theta(static_cast<size_t>(g.points()), 0.0);
  std::vector<int> anchor(g.nt, -1);
  for (int n = 0; n < g.nt; ++n) {
    int prev = -1;
    for (int j = 0; j < g.nx; ++j) {
      const size_t idx = static_cast<size_t>(n) * g.nx + j;
      const double raw = std::arg(psi(n, j));
      if (md.node_mask[idx]) {
        theta[idx] = raw;  // masked points keep the principal value
        continue;
      }
      if (prev < 0) {
        theta[idx] = raw;
        anchor[n] = j;
      } else {
        const double prev_raw = std::arg(psi(n, prev));
        theta[idx] = theta[static_cast<size_t>(n) * g.nx + prev] + wrap_to_pi(raw - prev_raw);
        if (j - prev > 1) {
          const long turns = std::lround((theta[idx] - raw) / two_pi);
          md.regions.push_back({n, j, turns});
        }
      }
      prev = j;
    }
    if (anchor[n] < 0)
      throw std::runtime_error("decompose: all points of slice " + std::to_string(n) +
                               " sit below the node threshold");
  }

  // Anchor each slice to the previous one through a shared unmasked column,
  // shifting the whole slice by a whole number of turns.
  for (int n = 1; n < g.nt; ++n) {
    int ja = -1;
    for (int j = 0; j < g.nx; ++j) {
      const size_t here = static_cast<size_t>(n) * g.nx + j;
      const size_t above = static_cast<size_t>(n - 1) * g.nx + j;
      if (!md.node_mask[here] && !md.node_mask[above]) { ja = j; break; }
    }
    if (ja < 0) ja = anchor[n];  // no shared column; keep raw anchoring
    const double d = theta[static_cast<size_t>(n) * g.nx + ja] -
                     theta[static_cast<size_t>(n - 1) * g.nx + ja];
    const double shift = -two_pi * std::round(d / two_pi);
    if (shift != 0.0)
      for (int j = 0; j < g.nx; ++j) {
        const size_t idx = static_cast<size_t>(n) * g.nx + j;
        if (!md.node_mask[idx]) theta[idx] += shift;
      }
  }

  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j)
      md.phase(n, j) = p.hbar * theta[static_cast<size_t>(n) * g.nx + j];

  md.halo_mask = dilate_mask(md.node_mask, g.nt, g.nx, 2);
  return md;
}

ComplexField reconstruct(const MadelungData& md, const PhysParams& p) {
  const auto& g = md.grid();
  ComplexField psi(g, {});
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j)
      psi(n, j) = std::sqrt(md.rho(n, j)) *
                  std::exp(cdouble(0.0, md.phase(n, j) / p.hbar));
  return psi;
}

ScalarField quantum_term_rel(const MadelungData& md, const PhysParams& p) {
  const auto& g = md.grid();
  ScalarField sqrt_rho(g, 0.0);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) sqrt_rho(n, j) = std::sqrt(md.rho(n, j));
  ScalarField box = dalembertian(sqrt_rho, p);
  ScalarField out(g, 0.0);
  const double h2 = p.hbar * p.hbar;
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j)
      out(n, j) = md.masked(n, j) ? 0.0 : h2 * box(n, j) / sqrt_rho(n, j);
  return out;
}

ScalarField quantum_potential(const MadelungData& md, const PhysParams& p) {
  const auto& g = md.grid();
  ScalarField sqrt_rho(g, 0.0);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) sqrt_rho(n, j) = std::sqrt(md.rho(n, j));
  ScalarField sxx = d2dx(sqrt_rho);
  ScalarField out(g, 0.0);
  const double coef = -p.hbar * p.hbar / (2.0 * p.m);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j)
      out(n, j) = md.masked(n, j) ? 0.0 : coef * sxx(n, j) / sqrt_rho(n, j);
  return out;
}

FourVectorField w_field(const MadelungData& md, const Potentials& a, const PhysParams& p) {
  detail::require_same_grid(md.grid(), a.grid(), "w_field");
  FourVectorField grad_s = four_gradient(md.phase, p);
  FourVectorField a_cov = a.covariant();
  FourVectorField w{ScalarField(md.grid(), 0.0), ScalarField(md.grid(), 0.0),
                    Variance::covariant};
  const double inv_m = 1.0 / p.m;
  const double qmc = p.q / (p.m * p.c);
  auto wt = w.time_component.data(); auto wx = w.space_component.data();
  auto st = grad_s.time_component.data(); auto sx = grad_s.space_component.data();
  auto at = a_cov.time_component.data(); auto ax = a_cov.space_component.data();
  for (size_t i = 0; i < wt.size(); ++i) {
    wt[i] = -st[i] * inv_m - qmc * at[i];
    wx[i] = -sx[i] * inv_m - qmc * ax[i];
  }
  return w;
}

ScalarField hj_quantum_residual(const MadelungData& md, const Potentials& a,
                                const PhysParams& p) {
  FourVectorField w = w_field(md, a, p);  // m w_mu is the naive momentum
  ScalarField p2 = contract(w, w);        // w^mu w_mu
  ScalarField qt = quantum_term_rel(md, p);
  ScalarField out(md.grid(), 0.0);
  const double m2 = p.m * p.m;
  const double m2c2 = p.mc() * p.mc();
  const auto& g = md.grid();
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      const size_t idx = static_cast<size_t>(n) * g.nx + j;
      if (md.halo_mask[idx]) continue;
      out(n, j) = m2 * p2(n, j) - m2c2 - qt(n, j);
    }
  return out;
}

ScalarField continuity_residual(const MadelungData& md, const Potentials& a,
                                const PhysParams& p) {
  FourVectorField w = w_field(md, a, p);
  FourVectorField flux{md.rho * w.time_component, md.rho * w.space_component,
                       Variance::covariant};
  ScalarField div = four_divergence(flux, p);
  ScalarField out(md.grid(), 0.0);
  const auto& g = md.grid();
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      const size_t idx = static_cast<size_t>(n) * g.nx + j;
      if (md.halo_mask[idx]) continue;
      out(n, j) = p.m * div(n, j);
    }
  return out;
}

} // namespace kgflow
