#include "kgflow/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace kgflow {

ScalarField coordinate_velocity(const KineticState& ks, const PhysParams& p) {
  const auto& g = ks.grid();
  ScalarField out(g, 0.0);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      if (ks.halo_mask[static_cast<size_t>(n) * g.nx + j]) continue;
      // dx/dt = c v^1 / v^0 = -c v_1 / v_0 = c^2 P_x / K
      out(n, j) = -p.c * ks.v.space_component(n, j) / ks.v.time_component(n, j);
    }
  return out;
}

namespace {

// Bilinear sample of a grid velocity field; reports whether the cell
// touches a masked corner.
struct GridSampler {
  const ScalarField* v;
  const Mask* mask;

  double operator()(double t, double x, bool* hit_mask) const {
    const auto& g = v->grid();
    double s = (t - g.t0) / g.dt;
    int n = static_cast<int>(std::floor(s));
    n = std::clamp(n, 0, g.nt - 2);
    const double ft = s - n;

    const double L = g.length();
    double xr = std::fmod(x - g.x_min, L);
    if (xr < 0.0) xr += L;
    const double sx = xr / g.dx;
    int j = static_cast<int>(std::floor(sx));
    j = std::clamp(j, 0, g.nx - 1);
    const double fx = sx - j;
    const int jp = (j + 1) % g.nx;

    if (mask && hit_mask) {
      const auto& m = *mask;
      const size_t r0 = static_cast<size_t>(n) * g.nx, r1 = r0 + g.nx;
      if (m[r0 + j] || m[r0 + jp] || m[r1 + j] || m[r1 + jp]) *hit_mask = true;
    }
    const double v00 = (*v)(n, j), v01 = (*v)(n, jp);
    const double v10 = (*v)(n + 1, j), v11 = (*v)(n + 1, jp);
    return (1.0 - ft) * ((1.0 - fx) * v00 + fx * v01) + ft * ((1.0 - fx) * v10 + fx * v11);
  }
};

template <typename Sampler>
TrajectoryEnsemble run_integration(Sampler&& sample, const SpacetimeGrid& grid,
                                   const std::vector<double>& seeds) {
  const int ns = static_cast<int>(seeds.size());
  TrajectoryEnsemble te;
  te.seeds = seeds;
  te.grid = grid;
  te.paths.assign(ns, std::vector<double>(grid.nt, 0.0));
  te.velocities.assign(ns, std::vector<double>(grid.nt, 0.0));
  te.truncated_at.assign(ns, grid.nt);

#pragma omp parallel for schedule(static)
  for (int s = 0; s < ns; ++s) {
    double x = seeds[s];
    bool dead = false;
    for (int n = 0; n < grid.nt; ++n) {
      const double t = grid.t(n);
      bool hit = false;
      const double v_here = sample(t, x, &hit);
      te.paths[s][n] = x;
      te.velocities[s][n] = v_here;
      if (dead) continue;
      if (hit) {
        te.truncated_at[s] = std::min(te.truncated_at[s], n);
        dead = true;
        continue;
      }
      if (n + 1 == grid.nt) break;
      const double h = grid.dt;
      bool h1 = false, h2 = false, h3 = false;
      const double k1 = v_here;
      const double k2 = sample(t + 0.5 * h, x + 0.5 * h * k1, &h1);
      const double k3 = sample(t + 0.5 * h, x + 0.5 * h * k2, &h2);
      const double k4 = sample(t + h, x + h * k3, &h3);
      if (h1 || h2 || h3) {
        te.truncated_at[s] = std::min(te.truncated_at[s], n + 1);
        dead = true;
        continue;
      }
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!std::isfinite(x)) {
        te.truncated_at[s] = std::min(te.truncated_at[s], n + 1);
        x = te.paths[s][n];
        dead = true;
      }
    }
    // freeze the tail of a truncated path at its last live position
    if (te.truncated_at[s] < grid.nt) {
      const double last = te.paths[s][std::max(te.truncated_at[s] - 1, 0)];
      for (int n = te.truncated_at[s]; n < grid.nt; ++n) te.paths[s][n] = last;
    }
  }
  return te;
}

} // namespace

TrajectoryEnsemble integrate(const ScalarField& velocity, const Mask* mask,
                             const std::vector<double>& seeds) {
  GridSampler sampler{&velocity, mask};
  return run_integration(
      [&](double t, double x, bool* hit) { return sampler(t, x, hit); }, velocity.grid(), seeds);
}

TrajectoryEnsemble integrate(const std::function<double(double, double)>& velocity,
                             const SpacetimeGrid& grid, const std::vector<double>& seeds) {
  return run_integration(
      [&](double t, double x, bool*) { return velocity(t, x); }, grid, seeds);
}

std::vector<double> sample_from_density(const ScalarField& rho, int slice, int n,
                                        unsigned long long rng_seed, bool stratified) {
  const auto& g = rho.grid();
  if (slice < 0 || slice >= g.nt) throw std::invalid_argument("sample_from_density: bad slice");
  if (n <= 0) throw std::invalid_argument("sample_from_density: need n > 0");

  // cumulative trapezoid over cells
  std::vector<double> cdf(g.nx, 0.0);
  for (int j = 1; j < g.nx; ++j)
    cdf[j] = cdf[j - 1] + 0.5 * (rho(slice, j - 1) + rho(slice, j)) * g.dx;
  const double total = cdf[g.nx - 1];
  if (!(total > 0.0)) throw std::invalid_argument("sample_from_density: zero density slice");

  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> seeds(n);
  for (int i = 0; i < n; ++i) {
    const double u = (stratified ? (i + 0.5) / n : uni(rng)) * total;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    int j = static_cast<int>(it - cdf.begin());
    j = std::clamp(j, 1, g.nx - 1);
    const double lo = cdf[j - 1], segment = cdf[j] - cdf[j - 1];
    const double f = segment > 0.0 ? (u - lo) / segment : 0.5;
    seeds[i] = g.x(j - 1) + f * g.dx;
  }
  return seeds;
}

EnsembleHistogram ensemble_density(const TrajectoryEnsemble& te, int bins) {
  if (bins < 2) throw std::invalid_argument("ensemble_density: need at least 2 bins");
  const auto& g = te.grid;
  EnsembleHistogram h;
  h.x_min = g.x_min;
  h.bins = bins;
  h.bin_width = g.length() / bins;
  h.density.assign(g.nt, std::vector<double>(bins, 0.0));
  h.live.assign(g.nt, 0);

  const int ns = static_cast<int>(te.seeds.size());
  const double L = g.length();
  for (int n = 0; n < g.nt; ++n) {
    int live = 0;
    for (int s = 0; s < ns; ++s) {
      if (n >= te.truncated_at[s]) continue;
      double xr = std::fmod(te.paths[s][n] - g.x_min, L);
      if (xr < 0.0) xr += L;
      int b = static_cast<int>(xr / h.bin_width);
      b = std::clamp(b, 0, bins - 1);
      h.density[n][b] += 1.0;
      ++live;
    }
    h.live[n] = live;
    const double norm = ns * h.bin_width;  // normalized against all seeds
    for (int b = 0; b < bins; ++b) h.density[n][b] /= norm;
  }
  return h;
}

double bin_probability(const ScalarField& rho, int slice, const EnsembleHistogram& h, int b) {
  const auto& g = rho.grid();
  const double lo = h.x_min + b * h.bin_width;
  const double hi = lo + h.bin_width;
  // integrate the trapezoid density over [lo, hi), then normalize by the
  // slice total
  double total = 0.0, inside = 0.0;
  for (int j = 0; j + 1 < g.nx; ++j) {
    const double xl = g.x(j), xr = g.x(j + 1);
    const double cell = 0.5 * (rho(slice, j) + rho(slice, j + 1)) * g.dx;
    total += cell;
    const double ol = std::max(lo, xl), orr = std::min(hi, xr);
    if (orr > ol) inside += cell * (orr - ol) / (xr - xl);
  }
  return total > 0.0 ? inside / total : 0.0;
}

CirculationReport circulation_check(const FourVectorField& momentum, const Potentials& a,
                                    const Loop& loop, const PhysParams& p) {
  momentum.check();
  if (momentum.variance != Variance::covariant)
    throw std::invalid_argument("circulation_check: expected covariant momentum");
  const auto& g = momentum.grid();
  if (loop.winds == 0)
    throw std::invalid_argument("circulation_check: open path (winds = 0) rejected");
  if (loop.slice < 0 || loop.slice >= g.nt)
    throw std::invalid_argument("circulation_check: slice out of range");

  CirculationReport rep;
  double px_sum = 0.0, ax_sum = 0.0;
  for (int j = 0; j < g.nx; ++j) {
    px_sum += -momentum.space_component(loop.slice, j);  // physical p_x = -p_1
    ax_sum += a.Ax(loop.slice, j);
  }
  rep.lhs = px_sum * g.dx * loop.winds;
  rep.rhs = -(p.q / p.c) * ax_sum * g.dx * loop.winds;
  const double turn = 2.0 * std::numbers::pi * p.hbar;
  rep.turns = std::lround((rep.lhs - rep.rhs) / turn);
  rep.residual = rep.lhs - rep.rhs - turn * rep.turns;
  return rep;
}

} // namespace kgflow
