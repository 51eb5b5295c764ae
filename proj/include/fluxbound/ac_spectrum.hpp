#pragma once

// Aharonov-Casher sector: a neutral fermion with anomalous magnetic moment in
// the field of a charged thread. In the nonrelativistic limit the radial
// problem is
//   -f''/(2m) + (gamma^2 - 1/4)/(2m r^2) f = E f,   gamma = |l + zeta Ma|,
// and for 0 < gamma < 1 the origin admits the boundary template
//   f / sqrt(mr) ~ A [ (mr)^gamma - xi_int (mr)^-gamma ],   xi = -xi_int.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "fluxbound/errors.hpp"
#include "fluxbound/extension.hpp"
#include "fluxbound/numkernel.hpp"
#include "fluxbound/radial_doublet.hpp"

namespace fluxbound::ac {

struct ACChannel {
  double mass = 1.0;
  /// M a: anomalous moment times thread charge.
  double coupling = 0.0;
  int l = 0;
  int zeta = 1;
};

inline bool operator==(const ACChannel& a, const ACChannel& b) {
  return a.mass == b.mass && a.coupling == b.coupling && a.l == b.l && a.zeta == b.zeta;
}

enum class ACRegime { Extended, LogCritical, Regular };

inline const char* to_string(ACRegime r) {
  switch (r) {
    case ACRegime::Extended: return "Extended";
    case ACRegime::LogCritical: return "LogCritical";
    case ACRegime::Regular: return "Regular";
  }
  return "?";
}

struct ACIndices {
  double gamma = 0.0;
  ACRegime regime = ACRegime::Regular;
};

inline constexpr double kACTolerance = 1e-9;

inline void validate(const ACChannel& ch) {
  if (!(ch.mass > 0.0) || !std::isfinite(ch.mass))
    throw DomainError("ACChannel: mass must be positive");
  if (ch.zeta != 1 && ch.zeta != -1) throw DomainError("ACChannel: zeta must be +1 or -1");
  if (!std::isfinite(ch.coupling)) throw DomainError("ACChannel: coupling must be finite");
}

inline ACIndices ac_classify(const ACChannel& ch) {
  validate(ch);
  ACIndices out;
  out.gamma = std::abs(ch.l + ch.zeta * ch.coupling);
  if (out.gamma < kACTolerance) {
    out.gamma = 0.0;
    out.regime = ACRegime::LogCritical;
  } else if (out.gamma < 1.0 - kACTolerance) {
    out.regime = ACRegime::Extended;
  } else {
    out.regime = ACRegime::Regular;
  }
  return out;
}

/// Channel realising a given index: l = 0, zeta = +1, Ma = -gamma.
inline ACChannel channel_for_gamma(double gamma, double mass = 1.0) {
  return ACChannel{mass, -gamma, 0, 1};
}

struct ACLevel {
  double E_n = 0.0;
  double kappa = 0.0;
  double xi = 0.0;
  ACChannel channel;
  double residual = 0.0;
};

namespace detail {

inline ACIndices require_ac_extended(const ACChannel& ch, const char* op) {
  const auto idx = ac_classify(ch);
  if (idx.regime != ACRegime::Extended)
    throw RegimeError(std::string(op) + ": channel regime is " + to_string(idx.regime),
                      to_string(idx.regime));
  return idx;
}

/// ln[Gamma(1+g)/Gamma(1-g)].
inline double log_ac_ratio(double g) { return num::log_gamma(1.0 + g) - num::log_gamma(1.0 - g); }

inline double kappa_of(double m, double E) { return std::sqrt(-2.0 * m * E); }

}  // namespace detail

/// omega(E) = Gamma(1+gamma)/Gamma(1-gamma) (2m/kappa)^{2 gamma}. The level
/// equation is omega(E) = -xi.
inline double ac_wronskian(const ACChannel& ch, double E) {
  const auto idx = detail::require_ac_extended(ch, "ac_wronskian");
  if (!(E < 0.0)) throw DomainError("ac_wronskian: requires E < 0");
  const double m = ch.mass;
  const double g = idx.gamma;
  return std::exp(detail::log_ac_ratio(g) + 2.0 * g * std::log(2.0 * m / detail::kappa_of(m, E)));
}

namespace detail {

inline ACLevel make_level(const ACChannel& ch, double E, double xi) {
  ACLevel level;
  level.E_n = E;
  level.kappa = kappa_of(ch.mass, E);
  level.xi = xi;
  level.channel = ch;
  return level;
}

inline double log_critical_energy(double m, double xi) {
  return -4.0 * m * std::exp(2.0 * (xi - std::numbers::egamma));
}

}  // namespace detail

/// Closed-form level. Extended: E = -2m (-xi Gamma(1-g)/Gamma(1+g))^{-1/g};
/// LogCritical: E = -4m exp(2(xi - C)). nullopt for xi >= 0 or xi infinite.
inline std::optional<ACLevel> ac_bound_energy(const ACChannel& ch, const Extension& ext) {
  const auto idx = ac_classify(ch);
  if (idx.regime == ACRegime::Regular)
    throw RegimeError("ac_bound_energy: Regular channel (gamma >= 1)", to_string(idx.regime));
  if (ext.is_infinite() || !(ext.xi() < 0.0)) return std::nullopt;
  const double m = ch.mass;
  const double xi = ext.xi();
  if (idx.regime == ACRegime::LogCritical) {
    auto level = detail::make_level(ch, detail::log_critical_energy(m, xi), xi);
    level.residual = 0.0;
    return level;
  }
  const double g = idx.gamma;
  const double E = -2.0 * m * std::exp(-(std::log(-xi) - detail::log_ac_ratio(g)) / g);
  auto level = detail::make_level(ch, E, xi);
  level.residual = std::abs(ac_wronskian(ch, E) + xi);
  return level;
}

/// Same level by bracketed root search in y = ln(-E/m).
inline ACLevel ac_solve_cross_check(const ACChannel& ch, const Extension& ext) {
  const auto idx = detail::require_ac_extended(ch, "ac_solve_cross_check");
  if (ext.is_infinite() || !(ext.xi() < 0.0))
    throw DomainError("ac_solve_cross_check: requires finite xi < 0");
  const double m = ch.mass;
  const double xi = ext.xi();
  const double g = idx.gamma;
  const double target = std::log(-xi);
  auto f = [&](double y) {
    return detail::log_ac_ratio(g) + g * (std::numbers::ln2 - y) - target;
  };
  double lo = -50.0;
  double hi = 50.0;
  while (f(lo) < 0.0) lo *= 2.0;
  while (f(hi) > 0.0) hi *= 2.0;
  const double tol_y = 64.0 * std::numeric_limits<double>::epsilon() * std::max(-lo, hi);
  const double y = num::find_root_bracketed(f, num::Bracket::make(f, lo, hi), tol_y, 0.0);
  auto level = detail::make_level(ch, -m * std::exp(y), xi);
  level.residual = std::abs(ac_wronskian(ch, level.E_n) + xi);
  return level;
}

struct SpecialLevels {
  /// l = 0 channels, gamma = c.
  double E0;
  /// l = +-1 channels, gamma = 1 - c.
  double E1;
};

/// Levels of the l = 0 and l = +-1 channels at -Ma = c in (0, 1).
inline SpecialLevels ac_special_levels(double c, const Extension& ext, double mass = 1.0) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("ac_special_levels: requires 0 < c < 1");
  if (ext.is_infinite() || !(ext.xi() < 0.0))
    throw DomainError("ac_special_levels: requires finite xi < 0");
  const double xi = ext.xi();
  const double lr0 = num::log_gamma(1.0 - c) - num::log_gamma(1.0 + c);
  const double lr1 = num::log_gamma(c) - num::log_gamma(2.0 - c);
  return {-2.0 * mass * std::exp(-(std::log(-xi) + lr0) / c),
          -2.0 * mass * std::exp((std::log(-xi) + lr1) / (c - 1.0))};
}

/// Unit-norm bound state f(r) = N sqrt(mr) K_gamma(kappa r), stored in f1.
inline RadialDoublet ac_wavefunction(const ACLevel& level) {
  const auto idx = ac_classify(level.channel);
  if (idx.regime == ACRegime::Regular)
    throw RegimeError("ac_wavefunction: Regular channel", to_string(idx.regime));
  if (!(level.E_n < 0.0)) throw DomainError("ac_wavefunction: requires E_n < 0");
  const double m = level.channel.mass;
  const double g = idx.gamma;
  const double kappa = level.kappa > 0.0 ? level.kappa : detail::kappa_of(m, level.E_n);
  // integral of r K_g(kappa r)^2 over (0, inf)
  const double moment = g == 0.0 ? 1.0 / (2.0 * kappa * kappa)
                                 : std::numbers::pi * g / (2.0 * kappa * kappa * std::sin(std::numbers::pi * g));
  const double n = 1.0 / std::sqrt(m * moment);
  RadialDoublet d;
  d.eval = [=](double r) {
    return std::array<double, 2>{n * std::sqrt(m * r) * num::bessel_k(g, kappa * r), 0.0};
  };
  d.small_r_exponents = {0.5 - g, std::numeric_limits<double>::quiet_NaN()};
  d.decay_rate = kappa;
  d.norm = 1.0;
  return d;
}

}  // namespace fluxbound::ac
