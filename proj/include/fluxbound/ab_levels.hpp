#pragma once

// Bound-state level equations of the Aharonov-Bohm Dirac sector.
//
// The master equation follows from matching the decaying MacDonald doublet
// to the extension template at the origin:
//
//   xi(E) = -sqrt((m - tau E)/(m + tau E)) * Gamma(1/2+nu)/Gamma(1/2-nu) * (2m/lambda)^{2 nu}
//
// With u = -tau E = m tanh(w) this becomes
//   ln|xi| = ln Gamma(1/2+nu) - ln Gamma(1/2-nu) + 2 nu ln 2 + w + 2 nu ln cosh(w),
// strictly increasing in w (slope 1 + 2 nu tanh w > 0), so each xi < 0 has
// exactly one level and the solver never loses precision near E = +-m.
//
// The printed Wronskian forms (paper_omega, paper_level_lhs) depend on E only
// through lambda; they are kept for comparison.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "fluxbound/ab_channel.hpp"
#include "fluxbound/errors.hpp"
#include "fluxbound/extension.hpp"
#include "fluxbound/numkernel.hpp"

namespace fluxbound::ab {

enum class Provenance { analytic, oracle, paper_equation };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::analytic: return "analytic";
    case Provenance::oracle: return "oracle";
    case Provenance::paper_equation: return "paper_equation";
  }
  return "?";
}

struct BoundLevel {
  double E = 0.0;
  double lambda = 0.0;
  double xi = 0.0;
  DiracChannel channel;
  double residual = 0.0;
  Provenance provenance = Provenance::analytic;
};

namespace detail {

inline double log_cosh(double w) {
  const double a = std::abs(w);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

/// ln of Gamma(1/2+nu)/Gamma(1/2-nu) * 2^{2 nu}: ln|xi| at E = 0.
inline double log_master_prefactor(double nu) {
  return num::log_gamma(0.5 + nu) - num::log_gamma(0.5 - nu) + 2.0 * nu * std::numbers::ln2;
}

inline double log_abs_master_xi(double nu, double w) {
  return log_master_prefactor(nu) + w + 2.0 * nu * log_cosh(w);
}

inline double gap_lambda(double m, double E) { return std::sqrt((m - E) * (m + E)); }

inline void require_gap(const DiracChannel& ch, double E, const char* op) {
  if (!(std::abs(E) < ch.mass))
    throw DomainError(std::string(op) + ": requires |E| < m");
}

}  // namespace detail

/// Extension parameter whose boundary condition the decaying solution at
/// energy E satisfies (bound states at xi < 0).
inline double master_xi_of_energy(const DiracChannel& ch, double E) {
  const auto idx = require_extended(ch, "master_xi_of_energy");
  detail::require_gap(ch, E, "master_xi_of_energy");
  const double w = std::atanh(-idx.tau * E / ch.mass);
  return -std::exp(detail::log_abs_master_xi(idx.nu, w));
}

/// Unique bound level for xi < 0; nullopt for xi >= 0, xi = infinity or a
/// Regular channel. Critical channels raise RegimeError.
inline std::optional<BoundLevel> solve_bound_energy(const DiracChannel& ch, const Extension& ext) {
  const auto idx = classify_channel(ch);
  if (idx.regime == Regime::Critical)
    throw RegimeError("solve_bound_energy: critical channel (nu = 0)", to_string(idx.regime));
  if (idx.regime == Regime::Regular) return std::nullopt;
  if (ext.is_infinite() || !(ext.xi() < 0.0)) return std::nullopt;

  const double nu = idx.nu;
  const double target = std::log(-ext.xi());
  auto h = [&](double w) { return detail::log_abs_master_xi(nu, w) - target; };

  const double w0 = target - detail::log_master_prefactor(nu);
  double lo = w0 - 1.0;
  double hi = w0 + 1.0;
  for (double step = 1.0; h(lo) > 0.0; step *= 2.0) lo -= step;
  for (double step = 1.0; h(hi) < 0.0; step *= 2.0) hi += step;

  const double tol_w = 1e-14 * std::max(1.0, std::abs(w0));
  const double w = num::find_root_bracketed(h, num::Bracket::make(h, lo, hi), tol_w, 0.0);

  BoundLevel level;
  level.E = -idx.tau * ch.mass * std::tanh(w);
  level.lambda = ch.mass / std::cosh(w);
  level.xi = ext.xi();
  level.channel = ch;
  level.residual = std::abs(-std::exp(detail::log_abs_master_xi(nu, w)) - ext.xi());
  level.provenance = Provenance::analytic;
  return level;
}

// ---------------------------------------------------------------------------
// Printed Wronskian forms

namespace detail {
/// Gamma(2nu)Gamma(-nu+(1-s)/2) / (Gamma(-2nu)Gamma(nu+(1-s)/2)).
inline double wronskian_coefficient(double nu, int s) {
  const double shift = 0.5 * (1 - s);
  return num::gamma_fn(2.0 * nu) * num::gamma_fn(-nu + shift) /
         (num::gamma_fn(-2.0 * nu) * num::gamma_fn(nu + shift));
}
}  // namespace detail

/// omega(E) = coefficient * (2 lambda/m)^{-2 nu} * 4 s lambda.
inline double paper_omega(const DiracChannel& ch, double E) {
  const auto idx = require_extended(ch, "paper_omega");
  detail::require_gap(ch, E, "paper_omega");
  const double m = ch.mass;
  const double lambda = detail::gap_lambda(m, E);
  return detail::wronskian_coefficient(idx.nu, ch.s) *
         std::pow(2.0 * lambda / m, -2.0 * idx.nu) * 4.0 * ch.s * lambda;
}

inline double paper_omega_xi(const DiracChannel& ch, const Extension& ext, double E) {
  if (ext.is_infinite()) throw DomainError("paper_omega_xi: xi must be finite");
  const double lambda = detail::gap_lambda(ch.mass, E);
  return paper_omega(ch, E) + 4.0 * ch.s * lambda * ext.xi();
}

enum class PaperEquation { wr00, levab, lev0, lev1 };

inline const char* to_string(PaperEquation v) {
  switch (v) {
    case PaperEquation::wr00: return "wr00";
    case PaperEquation::levab: return "levab";
    case PaperEquation::lev0: return "lev0";
    case PaperEquation::lev1: return "lev1";
  }
  return "?";
}

namespace detail {

/// Printed level equation written as coefficient * (lambda/m)^power = xi.
struct PowerLaw {
  double coefficient;
  double power;
};

inline PowerLaw paper_power_law(const DiracChannel& ch, PaperEquation variant) {
  const auto idx = require_extended(ch, "paper_level_lhs");
  const double nu = idx.nu;
  switch (variant) {
    case PaperEquation::wr00:
      // omega_xi(E) = 0  <=>  xi = -omega(E)/(4 s lambda)
      return {-wronskian_coefficient(nu, ch.s) * std::pow(2.0, -2.0 * nu), -2.0 * nu};
    case PaperEquation::levab:
      return {wronskian_coefficient(nu, ch.s), -2.0 * nu};
    case PaperEquation::lev0:
    case PaperEquation::lev1: {
      const long long ln = ch.l + idx.flux.n;
      const bool family = (ln == 0 && ch.s == -1) || (ln == -1 && ch.s == 1);
      if (!family)
        throw DomainError("paper_level_lhs: lev0/lev1 need l+n=0, s=-1 or l+n=-1, s=+1");
      const double b = idx.flux.beta;
      if (variant == PaperEquation::lev0) {
        if (b > 0.5) throw DomainError("paper_level_lhs: lev0 needs 0 < beta < 1/2");
        const double c = num::gamma_fn(1.0 - 2.0 * b) * num::gamma_fn(0.5 + b) /
                         (num::gamma_fn(2.0 * b - 1.0) * num::gamma_fn(1.5 - b));
        // (m/lambda)^{2 beta - 1}
        return {c, 1.0 - 2.0 * b};
      }
      if (b < 0.5) throw DomainError("paper_level_lhs: lev1 needs 1/2 < beta < 1");
      const double c = num::gamma_fn(2.0 * b - 1.0) * num::gamma_fn(1.5 - b) /
                       (num::gamma_fn(1.0 - 2.0 * b) * num::gamma_fn(0.5 + b));
      // (m/lambda)^{1 - 2 beta}
      return {c, 2.0 * b - 1.0};
    }
  }
  throw DomainError("paper_level_lhs: unknown variant");
}

}  // namespace detail

/// Left-hand side of a printed level equation (the right-hand side is xi).
inline double paper_level_lhs(const DiracChannel& ch, double E, PaperEquation variant) {
  detail::require_gap(ch, E, "paper_level_lhs");
  const auto law = detail::paper_power_law(ch, variant);
  const double lambda = detail::gap_lambda(ch.mass, E);
  return law.coefficient * std::pow(lambda / ch.mass, law.power);
}

/// Root of a printed level equation. These depend on E only through lambda,
/// so only |E| is determined; the nonnegative branch is reported.
inline std::optional<BoundLevel> solve_paper_equation(const DiracChannel& ch, const Extension& ext,
                                                      PaperEquation variant) {
  const auto law = detail::paper_power_law(ch, variant);
  if (ext.is_infinite() || ext.xi() == 0.0) return std::nullopt;
  const double xi = ext.xi();
  if (law.coefficient == 0.0 || (law.coefficient > 0.0) != (xi > 0.0)) return std::nullopt;

  // y = ln(lambda/m) in (-inf, 0]
  const double lc = std::log(std::abs(law.coefficient));
  const double lx = std::log(std::abs(xi));
  auto f = [&](double y) { return lc + law.power * y - lx; };
  constexpr double y_min = -60.0;
  if (f(y_min) * f(0.0) > 0.0) return std::nullopt;
  const double y = num::find_root_bracketed(f, num::Bracket::make(f, y_min, 0.0), 1e-15, 0.0);

  const double m = ch.mass;
  const double lambda = m * std::exp(y);
  BoundLevel level;
  level.lambda = lambda;
  level.E = m * std::sqrt(-std::expm1(2.0 * y));
  level.xi = xi;
  level.channel = ch;
  level.residual = std::abs(law.coefficient * std::pow(lambda / m, law.power) - xi);
  level.provenance = Provenance::paper_equation;
  return level;
}

}  // namespace fluxbound::ab
