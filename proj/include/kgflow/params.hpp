#pragma once

#include <cmath>
#include <stdexcept>

namespace kgflow {

/// Physical constants. Defaults are natural units hbar = c = m = 1, q = 1;
/// every run carries its own copy so unit conventions stay explicit.
struct PhysParams {
  double hbar = 1.0;
  double c = 1.0;
  double m = 1.0;
  double q = 1.0;

  void validate() const {
    if (!(std::isfinite(hbar) && std::isfinite(c) && std::isfinite(m) && std::isfinite(q)))
      throw std::invalid_argument("PhysParams: non-finite constant");
    if (hbar <= 0.0 || c <= 0.0 || m <= 0.0)
      throw std::invalid_argument("PhysParams: hbar, c, m must be strictly positive");
  }

  double rest_energy() const { return m * c * c; }
  // Rest-mass momentum scale m*c, the norm the kinetic four-momentum must keep.
  double mc() const { return m * c; }
};

} // namespace kgflow
