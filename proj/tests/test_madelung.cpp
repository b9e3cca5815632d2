#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "kgflow/madelung.hpp"
#include "test_helpers.hpp"

using namespace kgflow;
using namespace kgflow::test;

namespace {

KGSolution two_wave_solution(int n, double T = 1.0) {
  PhysParams p;
  const double L = 2.0 * std::numbers::pi;
  auto g = make_grid(n, n, T / (n - 1), L / n);
  return evolve_kg(superposition_initial(g, p, {{1.0, 1.0}, {2.0, 0.5}}),
                   Potentials::zero(g), p, g);
}

} // namespace

TEST_CASE("decompose: plane wave gives rho = 1 and linear phase") {
  PhysParams p;
  const double k = 2.0, w = kg_omega(p, k);
  auto g = make_grid(64, 128, 0.01, 2.0 * std::numbers::pi / 128);
  auto psi = sample_c(g, [&](double t, double x) {
    return std::exp(cdouble(0.0, k * x - w * t));
  });
  auto md = decompose(psi, p);
  for (int n = 0; n < g.nt; n += 13)
    for (int j = 0; j < g.nx; j += 17) {
      CHECK(md.rho(n, j) == doctest::Approx(1.0).epsilon(1e-12));
      // defined up to one global 2 pi hbar n offset: compare differences
      const double want = p.hbar * (k * (g.x(j) - g.x(0)) - w * (g.t(n) - g.t(0)));
      CHECK(md.phase(n, j) - md.phase(0, 0) == doctest::Approx(want).epsilon(1e-10));
    }
  CHECK(md.regions.empty());
}

TEST_CASE("decompose: real positive field has zero phase") {
  PhysParams p;
  auto g = make_grid(16, 64, 0.01, 0.2, 0.0, -6.4);
  auto psi = sample_c(g, [](double, double x) { return cdouble(1.0 + 0.5 * std::cos(x), 0.0); });
  auto md = decompose(psi, p);
  CHECK(max_abs(md.phase) == 0.0);
}

TEST_CASE("decompose then reconstruct is the identity to 1e-12") {
  PhysParams p;
  auto g = make_grid(32, 256, 0.01, 24.0 / 256, 0.0, -12.0);
  const double sigma = 1.0, k = 0.7;
  auto psi = sample_c(g, [&](double t, double x) {
    const double amp = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25) *
                       std::exp(-x * x / (4.0 * sigma * sigma));
    return amp * std::exp(cdouble(0.0, k * x - 0.3 * t));
  });
  auto md = decompose(psi, p);
  auto back = reconstruct(md, p);
  double worst = 0.0;
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) {
      if (md.masked(n, j)) continue;
      worst = std::max(worst, std::abs(back(n, j) - psi(n, j)));
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("unwrapped phase jumps stay below pi hbar between unmasked neighbors") {
  auto sol = two_wave_solution(96);
  auto md = decompose(sol);
  const auto& g = md.grid();
  for (int n = 0; n < g.nt; ++n)
    for (int j = 1; j < g.nx; ++j) {
      if (md.masked(n, j) || md.masked(n, j - 1)) continue;
      CHECK(std::abs(md.phase(n, j) - md.phase(n, j - 1)) < std::numbers::pi * sol.params.hbar);
    }
}

TEST_CASE("all-node slice raises") {
  PhysParams p;
  auto g = make_grid(8, 16, 0.1, 0.1);
  ComplexField psi(g, cdouble(1.0, 0.0));
  for (int j = 0; j < g.nx; ++j) psi(3, j) = 0.0;
  CHECK_THROWS_WITH_AS((void)decompose(psi, p), doctest::Contains("slice 3"), std::runtime_error);
}

TEST_CASE("quantum_term_rel: constant density vanishes; static Gaussian matches closed form") {
  PhysParams p;
  auto g = make_grid(16, 64, 0.01, 0.05);
  auto flat = sample_c(g, [](double, double x) { return std::exp(cdouble(0.0, 0.3 * x)); });
  CHECK(max_abs(quantum_term_rel(decompose(flat, p), p)) < 1e-9);

  const double sigma = 1.0;
  auto g2 = make_grid(16, 512, 0.01, 12.0 / 512, 0.0, -6.0);
  auto packet = sample_c(g2, [&](double, double x) {
    return cdouble(std::exp(-x * x / (4.0 * sigma * sigma)), 0.0);
  });
  auto md = decompose(packet, p);
  auto qt = quantum_term_rel(md, p);
  // hbar^2 box sqrt(rho)/sqrt(rho) = -hbar^2 (x^2/4 sigma^4 - 1/2 sigma^2) for
  // the static Gaussian (the d'Alembertian contributes -d_xx).
  for (int j = 8; j < g2.nx - 8; j += 31) {
    if (md.halo_mask[static_cast<size_t>(5) * g2.nx + j]) continue;
    const double x = g2.x(j);
    const double want = -p.hbar * p.hbar *
                        (x * x / (4.0 * std::pow(sigma, 4)) - 1.0 / (2.0 * sigma * sigma));
    CHECK(qt(5, j) == doctest::Approx(want).epsilon(5e-4));
  }
}

TEST_CASE("quantum_potential: Gaussian closed form and scale invariance") {
  PhysParams p;
  p.m = 1.7;
  const double sigma = 0.8;
  auto g = make_grid(12, 512, 0.01, 10.0 / 512, 0.0, -5.0);
  auto packet = sample_c(g, [&](double, double x) {
    return cdouble(std::exp(-x * x / (4.0 * sigma * sigma)), 0.0);
  });
  auto md = decompose(packet, p);
  auto q = quantum_potential(md, p);
  for (int j = 16; j < g.nx - 16; j += 29) {
    if (md.halo_mask[static_cast<size_t>(3) * g.nx + j]) continue;
    const double x = g.x(j);
    const double want = (p.hbar * p.hbar / (2.0 * p.m)) *
                        (1.0 / (2.0 * sigma * sigma) - x * x / (4.0 * std::pow(sigma, 4)));
    CHECK(q(3, j) == doctest::Approx(want).epsilon(5e-4));
  }

  // rho -> lambda rho leaves Q unchanged
  auto scaled = packet;
  for (auto& v : scaled.data()) v *= std::sqrt(3.7);
  auto q2 = quantum_potential(decompose(scaled, p), p);
  for (int j = 16; j < g.nx - 16; ++j)
    CHECK(q2(3, j) == doctest::Approx(q(3, j)).epsilon(1e-12));

  auto uniform = sample_c(g, [](double, double) { return cdouble(2.0, 0.0); });
  CHECK(max_abs(quantum_potential(decompose(uniform, p), p)) < 1e-10);
}

TEST_CASE("w_field: plane wave sits on the mass shell; trivial phase gives w = 0") {
  PhysParams p;
  const double k = 1.0, w = kg_omega(p, k);
  auto g = make_grid(64, 256, 0.005, 2.0 * std::numbers::pi / 256);
  auto psi = sample_c(g, [&](double t, double x) {
    return std::exp(cdouble(0.0, k * x - w * t));
  });
  auto md = decompose(psi, p);
  auto wf = w_field(md, Potentials::zero(g), p);
  auto w2 = contract(wf, wf);
  CHECK(max_abs_interior(w2 - ScalarField(g, p.c * p.c)) < 1e-6);

  auto real_psi = sample_c(g, [](double, double) { return cdouble(1.0, 0.0); });
  auto wf0 = w_field(decompose(real_psi, p), Potentials::zero(g), p);
  CHECK(max_abs(wf0.time_component) == 0.0);
  CHECK(max_abs(wf0.space_component) == 0.0);
}

TEST_CASE("w_field: symmetric superposition has zero space component at the center") {
  PhysParams p;
  const double k = 1.0, w = kg_omega(p, k);
  auto g = make_grid(32, 257, 0.005, std::numbers::pi / 128, 0.0,
                     -std::numbers::pi);  // x(128) = 0, a lattice point clear of nodes
  auto psi = sample_c(g, [&](double t, double x) {
    return std::exp(cdouble(0.0, k * x - w * t)) + std::exp(cdouble(0.0, -k * x - w * t));
  });
  auto md = decompose(psi, p, 1e-4);
  const int j0 = 128;  // x = 0 by construction
  REQUIRE(g.x(j0) == doctest::Approx(0.0).epsilon(1e-12));
  REQUIRE(!md.masked(8, j0));
  auto wf = w_field(md, Potentials::zero(g), p);
  CHECK(std::abs(wf.space_component(8, j0)) < 1e-10);
}

TEST_CASE("hj_quantum_residual: zero for the exact plane wave") {
  PhysParams p;
  const double k = 1.5, w = kg_omega(p, k);
  auto g = make_grid(64, 256, 0.005, 4.0 * std::numbers::pi / 256);
  auto psi = sample_c(g, [&](double t, double x) {
    return std::exp(cdouble(0.0, k * x - w * t));
  });
  auto md = decompose(psi, p);
  CHECK(max_abs_interior(hj_quantum_residual(md, Potentials::zero(g), p), &md.halo_mask) < 1e-6);
}

TEST_CASE("hj_quantum_residual converges at order 2 on the evolved superposition") {
  double err[3];
  for (int lvl = 0; lvl < 3; ++lvl) {
    auto sol = two_wave_solution(96 << lvl);
    auto md = decompose(sol);
    err[lvl] = max_abs_interior(hj_quantum_residual(md, sol.potentials, sol.params), &md.halo_mask);
  }
  CHECK(measured_order(err[0], err[1]) == doctest::Approx(2.0).epsilon(0.3));
  CHECK(measured_order(err[1], err[2]) == doctest::Approx(2.0).epsilon(0.3));
}

TEST_CASE("sourceless continuity residual converges at order 2") {
  double err[3];
  for (int lvl = 0; lvl < 3; ++lvl) {
    auto sol = two_wave_solution(96 << lvl);
    auto md = decompose(sol);
    err[lvl] = max_abs_interior(continuity_residual(md, sol.potentials, sol.params), &md.halo_mask);
  }
  CHECK(measured_order(err[0], err[1]) == doctest::Approx(2.0).epsilon(0.3));
  CHECK(measured_order(err[1], err[2]) == doctest::Approx(2.0).epsilon(0.3));
}

TEST_CASE("w is not implicitly timelike: the evolved packet shows both signs of w^2 - c^2") {
  PhysParams p;
  auto g = make_grid(64, 512, 0.005, 20.0 / 512, 0.0, -10.0);
  auto sol = evolve_kg(gaussian_initial(g, p, 0.0, 1.0, 0.0, Potentials::zero(g)),
                       Potentials::zero(g), p, g);
  auto md = decompose(sol);
  auto wf = w_field(md, sol.potentials, p);
  auto w2 = contract(wf, wf);
  double lo = 1e300, hi = -1e300;
  for (int n = 1; n < g.nt - 1; ++n)
    for (int j = 1; j < g.nx - 1; ++j) {
      if (md.halo_mask[static_cast<size_t>(n) * g.nx + j]) continue;
      lo = std::min(lo, w2(n, j) - p.c * p.c);
      hi = std::max(hi, w2(n, j) - p.c * p.c);
    }
  CHECK(lo < 0.0);  // spacelike in the far tail, where the quantum term dominates
  CHECK(hi > 0.0);
}
