#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace kgflow {

/// Uniform 1+1-dimensional lattice. Fields sampled on it hold the full
/// nt x nx spacetime block; time index n runs over slices, space index j
/// over columns.
struct SpacetimeGrid {
  int nx = 0;
  int nt = 0;
  double dx = 0.0;
  double dt = 0.0;
  double x_min = 0.0;
  double t0 = 0.0;

  bool operator==(const SpacetimeGrid&) const = default;

  double x(int j) const { return x_min + j * dx; }
  double t(int n) const { return t0 + n * dt; }
  double length() const { return nx * dx; }      // periodic circumference
  double horizon() const { return (nt - 1) * dt; }
  long long points() const { return static_cast<long long>(nx) * nt; }

  double cfl(double c) const { return c * dt / dx; }

  void validate() const {
    if (nx < 8) throw std::invalid_argument("SpacetimeGrid: nx must be >= 8, got " + std::to_string(nx));
    if (nt < 2) throw std::invalid_argument("SpacetimeGrid: nt must be >= 2, got " + std::to_string(nt));
    if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("SpacetimeGrid: dx must be > 0");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("SpacetimeGrid: dt must be > 0");
    if (!std::isfinite(x_min) || !std::isfinite(t0))
      throw std::invalid_argument("SpacetimeGrid: non-finite origin");
  }
};

} // namespace kgflow
