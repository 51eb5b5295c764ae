#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "fluxbound/ab_channel.hpp"
#include "fluxbound/ab_levels.hpp"
#include "fluxbound/errors.hpp"
#include "fluxbound/extension.hpp"
#include "fluxbound/numkernel.hpp"

namespace fluxbound::ab {

struct SpectralPoint {
  double E = 0.0;
  double density = 0.0;
};

namespace detail {

inline void require_continuum(const DiracChannel& ch, const Extension& ext, double E,
                              const char* op) {
  if (!(std::abs(E) > ch.mass)) throw DomainError(std::string(op) + ": requires |E| > m");
  if (ext.is_infinite()) throw DomainError(std::string(op) + ": requires finite xi");
}

/// lambda(E + i0) on the physical sheet: -i sign(E) sqrt(E^2 - m^2).
inline std::complex<double> continued_lambda(double m, double E) {
  const double k = std::sqrt((E - m) * (E + m));
  return {0.0, E > 0.0 ? -k : k};
}

}  // namespace detail

/// Master extension function continued to E + i0:
///   xi(E) = -Gamma(1/2+nu)/Gamma(1/2-nu) (2m)^{2nu} (m - tau E) lambda^{-1-2nu},
/// which reduces to master_xi_of_energy on the gap.
inline std::complex<double> master_xi_continued(const DiracChannel& ch, double E) {
  const auto idx = require_extended(ch, "master_xi_continued");
  const double m = ch.mass;
  if (!(std::abs(E) > m)) throw DomainError("master_xi_continued: requires |E| > m");
  const double nu = idx.nu;
  const double scale = num::gamma_ratio(0.5 + nu, 0.5 - nu) * std::pow(2.0 * m, 2.0 * nu);
  const auto lambda = detail::continued_lambda(m, E);
  return -scale * (m - idx.tau * E) * std::pow(lambda, -1.0 - 2.0 * nu);
}

/// tau (xi - xi_master(E + i0)). Its zeros on the gap are the bound states and
/// its reciprocal has a nonnegative imaginary part on both continua.
inline std::complex<double> calibrated_wronskian(const DiracChannel& ch, const Extension& ext,
                                                 double E) {
  detail::require_continuum(ch, ext, E, "calibrated_wronskian");
  const auto idx = classify_channel(ch);
  return static_cast<double>(idx.tau) * (ext.xi() - master_xi_continued(ch, E));
}

/// Printed Wronskian omega(E) + 4 s lambda xi continued to E + i0.
inline std::complex<double> paper_omega_xi_continued(const DiracChannel& ch, const Extension& ext,
                                                     double E) {
  detail::require_continuum(ch, ext, E, "paper_omega_xi_continued");
  const auto idx = require_extended(ch, "paper_omega_xi_continued");
  const double m = ch.mass;
  const auto lambda = detail::continued_lambda(m, E);
  const double c = detail::wronskian_coefficient(idx.nu, ch.s);
  return 4.0 * static_cast<double>(ch.s) * lambda *
         (c * std::pow(2.0 * lambda / m, -2.0 * idx.nu) + ext.xi());
}

/// d sigma/dE = (1/pi) Im[1 / W_xi(E + i0)] with W_xi the calibrated Wronskian.
inline SpectralPoint spectral_density(const DiracChannel& ch, const Extension& ext, double E) {
  const auto w = calibrated_wronskian(ch, ext, E);
  return {E, std::imag(1.0 / w) / std::numbers::pi};
}

}  // namespace fluxbound::ab
