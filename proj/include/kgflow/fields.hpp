#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "kgflow/grid.hpp"

namespace kgflow {

using cdouble = std::complex<double>;

namespace detail {

template <typename T>
class Block {
public:
  Block() = default;
  Block(const SpacetimeGrid& g, T fill) : grid_(g), v_(static_cast<size_t>(g.points()), fill) {
    g.validate();
  }

  const SpacetimeGrid& grid() const { return grid_; }
  int nt() const { return grid_.nt; }
  int nx() const { return grid_.nx; }
  bool empty() const { return v_.empty(); }

  T& operator()(int n, int j) { return v_[static_cast<size_t>(n) * grid_.nx + j]; }
  const T& operator()(int n, int j) const { return v_[static_cast<size_t>(n) * grid_.nx + j]; }

  std::span<T> data() { return v_; }
  std::span<const T> data() const { return v_; }
  T* row(int n) { return v_.data() + static_cast<size_t>(n) * grid_.nx; }
  const T* row(int n) const { return v_.data() + static_cast<size_t>(n) * grid_.nx; }

private:
  SpacetimeGrid grid_;
  std::vector<T> v_;
};

inline void require_same_grid(const SpacetimeGrid& a, const SpacetimeGrid& b, const char* op) {
  if (!(a == b)) throw std::invalid_argument(std::string(op) + ": operands live on different grids");
}

} // namespace detail

/// Real-valued sample per lattice point (rho, S, Phi, V, Ax, residuals, ...).
using ScalarField = detail::Block<double>;

/// Complex-valued sample per lattice point (the wave functions).
using ComplexField = detail::Block<cdouble>;

/// Per-point mask; nonzero marks points excluded from residual norms.
using Mask = std::vector<std::uint8_t>;

enum class Variance { covariant, contravariant };

/// Two-component field on the lattice with explicit index variance.
/// Signature (+,-): raising or lowering flips the sign of the space
/// component and leaves the time component alone.
struct FourVectorField {
  ScalarField time_component;
  ScalarField space_component;
  Variance variance = Variance::covariant;

  const SpacetimeGrid& grid() const { return time_component.grid(); }

  void check() const {
    detail::require_same_grid(time_component.grid(), space_component.grid(), "FourVectorField");
  }
};

FourVectorField raise_index(const FourVectorField& f);
FourVectorField lower_index(const FourVectorField& f);

/// u^mu w_mu for two fields of opposite variance (or the metric contraction
/// of two covariant ones): t*t - x*x under (+,-).
ScalarField contract(const FourVectorField& a, const FourVectorField& b);

/// Electromagnetic four-potential expressed through the lab components
/// V (scalar potential) and Ax (vector potential). Covariant components
/// are A_mu = (V, -Ax).
struct Potentials {
  ScalarField V;
  ScalarField Ax;

  const SpacetimeGrid& grid() const { return V.grid(); }
  FourVectorField covariant() const;

  static Potentials zero(const SpacetimeGrid& g) { return {ScalarField(g, 0.0), ScalarField(g, 0.0)}; }
};

} // namespace kgflow
