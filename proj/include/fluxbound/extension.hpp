#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "fluxbound/errors.hpp"

namespace fluxbound {

/// Self-adjoint extension parameter. Stored as the angle theta in [0, 2pi);
/// xi = tan(theta/2) with theta = pi standing for xi = infinity.
///
/// Sign convention: xi is reported in the orientation where bound states
/// exist exactly for xi < 0, in every channel of both sectors.
class Extension {
 public:
  static Extension from_xi(double xi) {
    if (std::isnan(xi)) throw DomainError("Extension: xi is NaN");
    if (std::isinf(xi)) return Extension(std::numbers::pi, xi);
    double theta = 2.0 * std::atan(xi);
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;
    return Extension(theta, xi);
  }

  static Extension from_theta(double theta) {
    if (!std::isfinite(theta)) throw DomainError("Extension: theta must be finite");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    theta = std::fmod(theta, two_pi);
    if (theta < 0.0) theta += two_pi;
    if (theta == std::numbers::pi)
      return Extension(theta, std::numeric_limits<double>::infinity());
    return Extension(theta, std::tan(0.5 * theta));
  }

  static Extension infinite() { return from_xi(std::numeric_limits<double>::infinity()); }

  double theta() const { return theta_; }
  /// +infinity for theta = pi.
  double xi() const { return xi_; }
  bool is_infinite() const { return std::isinf(xi_); }

  friend bool operator==(const Extension& a, const Extension& b) {
    return a.theta_ == b.theta_ && (a.xi_ == b.xi_ || (a.is_infinite() && b.is_infinite()));
  }

 private:
  Extension(double theta, double xi)
      : theta_(theta), xi_(std::isinf(xi) ? std::numeric_limits<double>::infinity() : xi) {}

  double theta_;
  double xi_;
};

}  // namespace fluxbound
