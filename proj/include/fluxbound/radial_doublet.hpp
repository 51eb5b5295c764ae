#pragma once

#include <array>
#include <functional>
#include <limits>

namespace fluxbound {

/// Radial two-component function F(r) = (f1(r), f2(r)) with its declared
/// small-r behaviour. Single-component (Schrödinger) functions keep f2 = 0
/// and a NaN second exponent.
struct RadialDoublet {
  std::function<std::array<double, 2>(double)> eval;
  /// Leading powers of r of each component as r -> 0.
  std::array<double, 2> small_r_exponents{};
  /// Exponential decay rate at large r; 0 for continuum (oscillating) states.
  double decay_rate = 0.0;
  /// Integral of f1^2 + f2^2 over (0, inf); NaN when not normalizable.
  double norm = std::numeric_limits<double>::quiet_NaN();

  std::array<double, 2> operator()(double r) const { return eval(r); }
};

}  // namespace fluxbound
