#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"

using namespace kgflow;
using namespace kgflow::test;

TEST_CASE("ddx: constant and linear fields are exact") {
  auto g = make_grid(8, 32, 0.1, 0.1);
  auto c5 = sample(g, [](double, double) { return 5.0; });
  CHECK(max_abs(ddx(c5)) == 0.0);
  auto lin = sample(g, [](double, double x) { return 3.0 * x; });
  auto d = ddx(lin);
  for (int j = 0; j < g.nx; ++j) CHECK(d(0, j) == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("ddx: sin -> cos within 5e-5 at dx=0.01") {
  auto g = make_grid(4, 629, 0.1, 0.01);  // covers ~2pi
  auto f = sample(g, [](double, double x) { return std::sin(x); });
  auto want = sample(g, [](double, double x) { return std::cos(x); });
  CHECK(max_err(ddx(f), want) < 5e-5);
}

TEST_CASE("ddt mirrors ddx along the time axis") {
  auto g = make_grid(64, 8, 0.01, 0.1);
  auto f = sample(g, [](double t, double) { return std::sin(t); });
  auto want = sample(g, [](double t, double) { return std::cos(t); });
  CHECK(max_err(ddt(f), want) < 5e-4);
}

TEST_CASE("ddx/ddt: degenerate axis raises") {
  SpacetimeGrid g{8, 2, 0.1, 0.1, 0.0, 0.0};  // nt = 2
  ScalarField f(g, 1.0);
  CHECK_THROWS_AS((void)ddt(f), std::invalid_argument);
}

TEST_CASE("dalembertian: affine field vanishes, quadratic is exact") {
  PhysParams p;  // c = 1
  auto g = make_grid(16, 16, 0.05, 0.05);
  auto affine = sample(g, [](double t, double x) { return 1.0 + 2.0 * x + 3.0 * t; });
  CHECK(max_abs(dalembertian(affine, p)) < 1e-11);
  auto quad = sample(g, [](double, double x) { return x * x; });
  auto box = dalembertian(quad, p);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) CHECK(box(n, j) == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("dalembertian: travelling cosine matches (k^2-w^2) f") {
  PhysParams p;
  const double k = 2.0, w = 1.3;
  auto g = make_grid(128, 128, 0.01, 0.01);
  auto f = sample(g, [&](double t, double x) { return std::cos(k * x - w * t); });
  auto want = sample(g, [&](double t, double x) { return (k * k - w * w) * std::cos(k * x - w * t); });
  CHECK(max_err(dalembertian(f, p), want) < 2e-3);  // O(dx^2+dt^2) * scale
}

TEST_CASE("four_divergence: constants vanish; linear-in-t time component") {
  PhysParams p;
  auto g = make_grid(16, 16, 0.05, 0.05);
  FourVectorField j{sample(g, [](double, double) { return 2.0; }),
                    sample(g, [](double, double) { return -7.0; }), Variance::covariant};
  CHECK(max_abs(four_divergence(j, p)) < 1e-12);

  // j_0 = t c^2, j_1 = 0, c=1: d^mu j_mu = (1/c) d_t (t c^2) = 1 at c=1.
  FourVectorField jt{sample(g, [&](double t, double) { return t * p.c * p.c; }),
                     ScalarField(g, 0.0), Variance::covariant};
  auto div = four_divergence(jt, p);
  for (int n = 0; n < g.nt; ++n)
    for (int j2 = 0; j2 < g.nx; ++j2) CHECK(div(n, j2) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("four_divergence of a four-gradient equals the dalembertian") {
  PhysParams p;
  p.c = 2.0;  // exercise the metric factors
  auto g = make_grid(24, 24, 0.04, 0.05);
  auto chi = sample(g, [&](double t, double x) { return 0.5 * (x * x - p.c * p.c * t * t); });
  auto lhs = four_divergence(four_gradient(chi, p), p);
  auto rhs = dalembertian(chi, p);
  CHECK(max_err(lhs, rhs) < 1e-10);
}

TEST_CASE("four_divergence rejects contravariant input") {
  PhysParams p;
  auto g = make_grid(8, 8, 0.1, 0.1);
  FourVectorField j{ScalarField(g, 1.0), ScalarField(g, 1.0), Variance::contravariant};
  CHECK_THROWS_AS((void)four_divergence(j, p), std::invalid_argument);
}

TEST_CASE("faraday: zero potentials, uniform E, antisymmetry") {
  PhysParams p;
  auto g = make_grid(12, 12, 0.1, 0.1);
  auto F0 = faraday(Potentials::zero(g), p);
  CHECK(max_abs(F0.f01) == 0.0);

  const double E0 = 0.75;
  Potentials a{sample(g, [&](double, double x) { return -E0 * x; }), ScalarField(g, 0.0)};
  auto F = faraday(a, p);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) CHECK(F.f01(n, j) == doctest::Approx(E0).epsilon(1e-12));

  auto f10 = F.component(1, 0);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) CHECK(f10(n, j) == -F.f01(n, j));
  CHECK(max_abs(F.component(0, 0)) == 0.0);
}

TEST_CASE("lorentz_residual: static, travelling, and linear-in-t potentials") {
  PhysParams p;
  auto g = make_grid(64, 64, 0.02, 0.02);

  Potentials stat{sample(g, [](double, double x) { return std::exp(-x * x); }), ScalarField(g, 0.0)};
  CHECK(max_abs(lorentz_residual(stat, p)) < 1e-12);

  // V = Ax = f(x - ct) at c=1: (1/c) d_t V + d_x Ax = -f' + f' = 0
  // analytically; the discrete residual is O(h^2).
  auto pulse = [](double t, double x) { double u = x - t - 0.6; return std::exp(-8.0 * u * u); };
  double res[2];
  for (int lvl = 0; lvl < 2; ++lvl) {
    auto gr = make_grid(64 << lvl, 64 << lvl, 0.02 / (1 << lvl), 0.02 / (1 << lvl));
    Potentials trav{sample(gr, pulse), sample(gr, pulse)};
    res[lvl] = max_abs(lorentz_residual(trav, p));
  }
  CHECK(res[0] < 0.05);
  CHECK(measured_order(res[0], res[1]) == doctest::Approx(2.0).epsilon(0.2));

  Potentials ramp{sample(g, [](double t, double) { return t; }), ScalarField(g, 0.0)};
  auto r = lorentz_residual(ramp, p);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) CHECK(r(n, j) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("centered stencils are exact on degree <= 2 polynomials") {
  PhysParams p;
  auto g = make_grid(32, 32, 0.07, 0.09, -1.0, -1.5);
  auto poly = sample(g, [](double t, double x) { return 2.0 - x + 0.5 * t + 3.0 * x * x - 1.25 * t * t + 0.75 * x * t; });
  auto dpoly_dx = sample(g, [](double t, double x) { return -1.0 + 6.0 * x + 0.75 * t; });
  auto dpoly_dt = sample(g, [](double t, double x) { return 0.5 - 2.5 * t + 0.75 * x; });
  CHECK(max_err(ddx(poly), dpoly_dx) < 1e-12 * 100);
  CHECK(max_err(ddt(poly), dpoly_dt) < 1e-12 * 100);
  auto box = dalembertian(poly, p);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j) CHECK(box(n, j) == doctest::Approx(-2.5 - 6.0).epsilon(1e-10));
}

TEST_CASE("derivatives converge at order 2 under Richardson refinement") {
  PhysParams p;
  auto field_fn = [](double t, double x) { return std::sin(1.7 * x + 0.3) * std::cos(1.1 * t); };
  auto exact_dx = [](double t, double x) { return 1.7 * std::cos(1.7 * x + 0.3) * std::cos(1.1 * t); };
  auto exact_box = [](double t, double x) {
    // (1/c^2) d_tt f - d_xx f with c=1
    return (-1.21 + 1.7 * 1.7) * std::sin(1.7 * x + 0.3) * std::cos(1.1 * t);
  };
  double err_dx[3], err_box[3];
  for (int lvl = 0; lvl < 3; ++lvl) {
    int n = 32 << lvl;
    auto g = make_grid(n, n, 1.0 / n, 1.0 / n);
    auto f = sample(g, field_fn);
    err_dx[lvl] = max_err(ddx(f), sample(g, exact_dx));
    err_box[lvl] = max_err(dalembertian(f, p), sample(g, exact_box));
  }
  for (int lvl = 0; lvl < 2; ++lvl) {
    CHECK(measured_order(err_dx[lvl], err_dx[lvl + 1]) == doctest::Approx(2.0).epsilon(0.15));
    CHECK(measured_order(err_box[lvl], err_box[lvl + 1]) == doctest::Approx(2.0).epsilon(0.15));
  }
}

TEST_CASE("index raising then lowering is the identity, bit for bit") {
  auto g = make_grid(16, 16, 0.1, 0.1);
  FourVectorField j{random_field(g, 11), random_field(g, 12), Variance::covariant};
  auto back = lower_index(raise_index(j));
  for (int n = 0; n < g.nt; ++n)
    for (int k = 0; k < g.nx; ++k) {
      CHECK(back.time_component(n, k) == j.time_component(n, k));
      CHECK(back.space_component(n, k) == j.space_component(n, k));
    }
  CHECK(back.variance == Variance::covariant);
}

TEST_CASE("contract honors the signature") {
  PhysParams p;
  auto g = make_grid(8, 8, 0.1, 0.1);
  FourVectorField cov{ScalarField(g, 3.0), ScalarField(g, 2.0), Variance::covariant};
  auto cc = contract(cov, cov);          // 9 - 4
  CHECK(cc(4, 4) == doctest::Approx(5.0));
  auto mixed = contract(raise_index(cov), cov);  // same value through u^mu w_mu
  CHECK(max_err(cc, mixed) < 1e-14);
}
