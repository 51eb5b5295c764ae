#pragma once

// Radial wave functions of the Aharonov-Bohm Dirac sector.
//
// With sigma = s * nu_tilde the first-order system reads
//   f1' - sigma f1/r = -s (E + m) f2,    f2' + sigma f2/r = s (E - m) f1.
// For |E| < m it is solved by
//   F = sqrt(lambda r) ( K_{|sigma-1/2|}(lambda r), s sqrt((m-E)/(m+E)) K_{|sigma+1/2|}(lambda r) ),
// and for |E| > m by Bessel J pairs of orders (sigma -+ 1/2) and (1/2 -+ sigma).

#include <array>
#include <cmath>
#include <numbers>

#include "fluxbound/ab_channel.hpp"
#include "fluxbound/ab_levels.hpp"
#include "fluxbound/errors.hpp"
#include "fluxbound/extension.hpp"
#include "fluxbound/numkernel.hpp"
#include "fluxbound/radial_doublet.hpp"

namespace fluxbound::ab {

/// Rescales a decaying doublet to unit norm.
inline RadialDoublet normalize_doublet(const RadialDoublet& d,
                                       const num::QuadratureOptions& opt = {}) {
  if (!(d.decay_rate > 0.0))
    throw NotNormalizableError("normalize_doublet: doublet does not decay");
  auto density = [&](double r) {
    const auto f = d.eval(r);
    return f[0] * f[0] + f[1] * f[1];
  };
  const double integral = num::integrate_semiline(density, d.decay_rate, opt).value;
  if (!(integral > 0.0)) throw NotNormalizableError("normalize_doublet: zero norm");
  const double c = 1.0 / std::sqrt(integral);
  RadialDoublet out = d;
  out.eval = [inner = d.eval, c](double r) {
    auto f = inner(r);
    return std::array<double, 2>{c * f[0], c * f[1]};
  };
  out.norm = 1.0;
  return out;
}

/// Unit-norm bound-state doublet of a solved level. Also accepts the nu = 0
/// limit channel (the E = 0 zero mode).
inline RadialDoublet bound_doublet(const BoundLevel& level) {
  const auto& ch = level.channel;
  const auto idx = classify_channel(ch);
  if (idx.regime == Regime::Regular)
    throw RegimeError("bound_doublet: Regular channel has no bound state", to_string(idx.regime));
  const double m = ch.mass;
  const double E = level.E;
  if (!(std::abs(E) < m)) throw DomainError("bound_doublet: requires |E| < m");
  const double lambda = level.lambda > 0.0 ? level.lambda : std::sqrt((m - E) * (m + E));
  const double sigma = ch.s * idx.nu_tilde;
  const double a1 = std::abs(sigma - 0.5);
  const double a2 = std::abs(sigma + 0.5);
  const double weight = ch.s * (E >= 0.0 ? lambda / (m + E) : (m - E) / lambda);

  RadialDoublet d;
  d.eval = [lambda, a1, a2, weight](double r) {
    const double z = lambda * r;
    const double root = std::sqrt(z);
    return std::array<double, 2>{root * num::bessel_k(a1, z), weight * root * num::bessel_k(a2, z)};
  };
  d.small_r_exponents = {sigma, -sigma};
  d.decay_rate = lambda;
  return normalize_doublet(d);
}

namespace detail {

/// The two continuum solutions, normalised so that the component carrying the
/// leading power has coefficient exactly (m r)^{+-sigma}:
///   A: f1 ~ (mr)^sigma,   B: f2 ~ (mr)^{-sigma}.
struct ContinuumPair {
  std::function<std::array<double, 2>(double)> a;
  std::function<std::array<double, 2>(double)> b;
};

inline ContinuumPair continuum_pair(double m, int s, double sigma, double E) {
  if (std::abs(E) == m) {
    // Threshold: the Bessel pairs degenerate into power laws.
    if (E > 0.0) {
      const double c = -2.0 * s / (1.0 - 2.0 * sigma);
      return {[=](double r) { return std::array<double, 2>{std::pow(m * r, sigma), 0.0}; },
              [=](double r) {
                const double x = m * r;
                return std::array<double, 2>{c * std::pow(x, 1.0 - sigma), std::pow(x, -sigma)};
              }};
    }
    const double c = -2.0 * s / (1.0 + 2.0 * sigma);
    return {[=](double r) {
              const double x = m * r;
              return std::array<double, 2>{std::pow(x, sigma), c * std::pow(x, 1.0 + sigma)};
            },
            [=](double r) { return std::array<double, 2>{0.0, std::pow(m * r, -sigma)}; }};
  }
  const double k = std::sqrt((E - m) * (E + m));
  const double ratio = k / (E + m);
  const double na = std::pow(m, sigma) * num::gamma_fn(sigma + 0.5) * std::pow(0.5 * k, 0.5 - sigma);
  const double nb2 = std::pow(m, -sigma) * num::gamma_fn(0.5 - sigma) * std::pow(0.5 * k, sigma + 0.5);
  const double nb1 = -s * nb2 / ratio;
  return {[=](double r) {
            const double root = std::sqrt(r);
            return std::array<double, 2>{
                na * root * num::bessel_j(sigma - 0.5, k * r),
                na * s * ratio * root * num::bessel_j(sigma + 0.5, k * r)};
          },
          [=](double r) {
            const double root = std::sqrt(r);
            return std::array<double, 2>{nb1 * root * num::bessel_j(0.5 - sigma, k * r),
                                         nb2 * root * num::bessel_j(-sigma - 0.5, k * r)};
          }};
}

}  // namespace detail

/// Continuum eigenfunction U_xi = U_plus - xi_int U_minus at |E| >= m, where
/// U_plus/U_minus carry (mr)^{+nu}/(mr)^{-nu} and xi_int = s xi. In the Regular
/// regime xi is ignored and the regular solution is returned; xi = infinity
/// gives -U_minus.
inline RadialDoublet continuum_doublet(const DiracChannel& ch, const Extension& ext, double E) {
  const auto idx = classify_channel(ch);
  if (idx.regime == Regime::Critical)
    throw RegimeError("continuum_doublet: critical channel (nu = 0)", to_string(idx.regime));
  const double m = ch.mass;
  if (!(std::abs(E) >= m)) throw DomainError("continuum_doublet: requires |E| >= m");
  const double sigma = ch.s * idx.nu_tilde;
  const double nu = idx.nu;
  auto pair = detail::continuum_pair(m, ch.s, sigma, E);
  const auto& plus = sigma > 0.0 ? pair.a : pair.b;
  const auto& minus = sigma > 0.0 ? pair.b : pair.a;
  // leading powers of (plus, minus) per component
  const std::array<double, 2> plus_exp =
      sigma > 0.0 ? std::array<double, 2>{nu, nu + 1.0} : std::array<double, 2>{nu + 1.0, nu};
  const std::array<double, 2> minus_exp =
      sigma > 0.0 ? std::array<double, 2>{1.0 - nu, -nu} : std::array<double, 2>{-nu, 1.0 - nu};

  RadialDoublet d;
  d.decay_rate = 0.0;
  if (idx.regime == Regime::Regular || (!ext.is_infinite() && ext.xi() == 0.0)) {
    d.eval = plus;
    d.small_r_exponents = plus_exp;
    return d;
  }
  if (ext.is_infinite()) {
    d.eval = [minus](double r) {
      auto f = minus(r);
      return std::array<double, 2>{-f[0], -f[1]};
    };
    d.small_r_exponents = minus_exp;
    return d;
  }
  const double xi_int = ch.s * ext.xi();
  d.eval = [plus, minus, xi_int](double r) {
    const auto p = plus(r);
    const auto q = minus(r);
    return std::array<double, 2>{p[0] - xi_int * q[0], p[1] - xi_int * q[1]};
  };
  d.small_r_exponents = {std::min(plus_exp[0], minus_exp[0]), std::min(plus_exp[1], minus_exp[1])};
  return d;
}

}  // namespace fluxbound::ab
