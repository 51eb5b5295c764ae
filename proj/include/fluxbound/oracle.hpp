#pragma once

// Independent shooting eigensolver for both sectors.
//
// Dirac: the first-order radial system is integrated outward from r_min with
// an adaptive Dormand-Prince pair, seeded by the convergent Frobenius series
// of the two local solutions, and compared at r_max with the direction of the
// decaying solution from the large-argument K expansion.
//
// Schrodinger: Numerov in x = ln r on w = f/sqrt(r), which obeys
// w'' = (gamma^2 + kappa^2 r^2) w.
//
// Neither solver uses the closed-form level equations.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "fluxbound/ab_channel.hpp"
#include "fluxbound/ac_spectrum.hpp"
#include "fluxbound/errors.hpp"
#include "fluxbound/extension.hpp"
#include "fluxbound/numkernel.hpp"
#include "fluxbound/radial_doublet.hpp"

namespace fluxbound::oracle {

struct ShootingConfig {
  /// Inner cutoff in units of 1/m.
  double r_min = 1e-6;
  /// Outer cutoff in units of 1/m; 0 picks max(40/lambda, 30/m) per energy.
  double r_max = 0.0;
  double tolerance = 1e-10;
  /// Energy window in units of m; NaN ends mean the whole admissible range.
  std::pair<double, double> energy_bracket{std::numeric_limits<double>::quiet_NaN(),
                                           std::numeric_limits<double>::quiet_NaN()};
  int scan_points = 64;
};

struct OracleResult {
  double E = 0.0;
  double match_residual = 0.0;
  double convergence_order_estimate = std::numeric_limits<double>::quiet_NaN();
  double r_min_sensitivity = 0.0;
};

inline void validate(const ShootingConfig& cfg) {
  if (!(cfg.r_min > 0.0)) throw DomainError("ShootingConfig: r_min must be positive");
  if (cfg.r_max != 0.0 && !(cfg.r_max > cfg.r_min))
    throw DomainError("ShootingConfig: r_max must exceed r_min");
  if (!(cfg.tolerance > 1e-14 && cfg.tolerance < 1e-4))
    throw DomainError("ShootingConfig: tolerance must lie in (1e-14, 1e-4)");
  if (cfg.scan_points < 2) throw DomainError("ShootingConfig: scan_points must be >= 2");
}

// ---------------------------------------------------------------------------
// Local (small-r) bases

/// Frobenius solutions of the Dirac system at energy E, in x = m r:
///   A ~ ((mr)^sigma, ...),  B ~ (..., (mr)^-sigma).
/// plus/minus pick the ones carrying (mr)^{+nu} and (mr)^{-nu}.
class DiracLocalBasis {
 public:
  DiracLocalBasis(const ab::DiracChannel& ch, double E)
      : m_(ch.mass), s_(ch.s), sigma_(ch.s * ch.nu_tilde()) {
    alpha_ = -ch.s * (E + m_) / m_;
    beta_ = ch.s * (E - m_) / m_;
  }

  std::array<double, 2> a(double r) const { return series(m_ * r, sigma_, 1.0, 0.0); }
  std::array<double, 2> b(double r) const { return series(m_ * r, -sigma_, 0.0, 1.0); }
  std::array<double, 2> plus(double r) const { return sigma_ > 0.0 ? a(r) : b(r); }
  std::array<double, 2> minus(double r) const { return sigma_ > 0.0 ? b(r) : a(r); }

  /// plus - xi_int minus with xi_int = s xi.
  std::array<double, 2> seed(double r, double xi) const {
    const auto p = plus(r);
    const auto q = minus(r);
    const double x = s_ * xi;
    return {p[0] - x * q[0], p[1] - x * q[1]};
  }

 private:
  std::array<double, 2> series(double x, double rho, double a0, double b0) const {
    double a = a0;
    double b = b0;
    double sa = a;
    double sb = b;
    double xp = 1.0;
    for (int j = 1; j < 400; ++j) {
      const double na = alpha_ * b / (rho + j - sigma_);
      const double nb = beta_ * a / (rho + j + sigma_);
      a = na;
      b = nb;
      xp *= x;
      sa += a * xp;
      sb += b * xp;
      if (j > 2 && std::abs(a * xp) + std::abs(b * xp) <=
                       1e-17 * (std::abs(sa) + std::abs(sb)))
        break;
    }
    const double lead = std::pow(x, rho);
    return {lead * sa, lead * sb};
  }

  double m_;
  int s_;
  double sigma_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
};

/// Local solutions g_pm = (mr)^{+-gamma} sum c_k (kappa r)^{2k} of
/// g'' + g'/r - (gamma^2/r^2 + kappa^2) g = 0.
class SchrodingerLocalBasis {
 public:
  SchrodingerLocalBasis(double m, double gamma, double kappa) : m_(m), g_(gamma), kappa_(kappa) {}

  double plus(double r) const { return branch(r, g_)[0]; }
  double minus(double r) const { return branch(r, -g_)[0]; }
  /// g_plus + xi g_minus (xi in the bound-states-at-negative-xi orientation).
  double seed(double r, double xi) const { return plus(r) + xi * minus(r); }
  /// r d/dr of seed.
  double seed_log_derivative(double r, double xi) const {
    return branch(r, g_)[1] + xi * branch(r, -g_)[1];
  }
  /// Seed written as A r^gamma + B r^-gamma with matching r d/dr.
  std::array<double, 2> amplitudes(double r, double xi) const {
    const auto p = split(r, g_);
    const auto q = split(r, -g_);
    return {p[0] + xi * q[0], p[1] + xi * q[1]};
  }

 private:
  std::array<double, 2> branch(double r, double p) const {
    const double z = 0.25 * kappa_ * kappa_ * r * r;
    double c = 1.0;
    double sum = 1.0;
    double dsum = p;
    for (int k = 1; k < 400; ++k) {
      c *= z / (k * (k + p));
      sum += c;
      dsum += (p + 2 * k) * c;
      if (std::abs(c) <= 1e-17 * std::abs(sum)) break;
    }
    const double lead = std::pow(m_ * r, p);
    return {lead * sum, lead * dsum};
  }

  // (w + r w'/gamma)/2 and (w - r w'/gamma)/2 summed termwise, then scaled by r^-+gamma.
  std::array<double, 2> split(double r, double p) const {
    const double z = 0.25 * kappa_ * kappa_ * r * r;
    double c = 1.0;
    double up = 0.5 * (g_ + p) / g_;
    double down = 0.5 * (g_ - p) / g_;
    for (int k = 1; k < 400; ++k) {
      c *= z / (k * (k + p));
      const double du = 0.5 * c * (g_ + p + 2 * k) / g_;
      const double dd = 0.5 * c * (g_ - p - 2 * k) / g_;
      up += du;
      down += dd;
      if (std::abs(du) <= 1e-17 * std::abs(up) && std::abs(dd) <= 1e-17 * std::abs(down)) break;
    }
    const double lead = std::pow(m_, p);
    return {lead * up * std::pow(r, p - g_), lead * down * std::pow(r, p + g_)};
  }

  double m_;
  double g_;
  double kappa_;
};

namespace detail {

/// 16 log-spaced points on [0.01, 1]/scale.
inline std::vector<double> fit_points(double scale) {
  std::vector<double> r(16);
  for (int i = 0; i < 16; ++i) r[i] = std::pow(10.0, -2.0 + 2.0 * i / 15.0) / scale;
  return r;
}

/// Least-squares (a, b) for y ~ a u + b v.
inline std::pair<double, double> fit_two(const std::vector<double>& y, const std::vector<double>& u,
                                         const std::vector<double>& v) {
  double uu = 0, uv = 0, vv = 0, uy = 0, vy = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    uu += u[i] * u[i];
    uv += u[i] * v[i];
    vv += v[i] * v[i];
    uy += u[i] * y[i];
    vy += v[i] * y[i];
  }
  const double det = uu * vv - uv * uv;
  return {(uy * vv - vy * uv) / det, (vy * uu - uy * uv) / det};
}

}  // namespace detail

/// Extension parameter read off a Dirac solution at energy E by fitting it to
/// a U_plus + b U_minus near the origin.
inline double fit_extension_parameter(const ab::DiracChannel& ch, double E,
                                      const RadialDoublet& doublet) {
  const double m = ch.mass;
  const double lambda = std::sqrt(std::abs((m - E) * (m + E)));
  const DiracLocalBasis basis(ch, E);
  std::vector<double> y, u, v;
  for (double r : detail::fit_points(std::max(lambda, 1e-3 * m))) {
    const auto f = doublet(r);
    const auto p = basis.plus(r);
    const auto q = basis.minus(r);
    for (int c = 0; c < 2; ++c) {
      y.push_back(f[c]);
      u.push_back(p[c]);
      v.push_back(q[c]);
    }
  }
  const auto [a, b] = detail::fit_two(y, u, v);
  return ch.s * (-b / a);
}

/// Same for an AC bound state, fitting f/sqrt(mr) to a g_plus + b g_minus.
inline double fit_extension_parameter(const ac::ACChannel& ch, double E,
                                      const RadialDoublet& wavefunction) {
  const auto idx = ac::ac_classify(ch);
  if (idx.regime != ac::ACRegime::Extended)
    throw RegimeError("fit_extension_parameter: AC channel must be Extended",
                      ac::to_string(idx.regime));
  const double m = ch.mass;
  const double kappa = std::sqrt(-2.0 * m * E);
  const SchrodingerLocalBasis basis(m, idx.gamma, kappa);
  std::vector<double> y, u, v;
  for (double r : detail::fit_points(kappa)) {
    y.push_back(wavefunction(r)[0] / std::sqrt(m * r));
    u.push_back(basis.plus(r));
    v.push_back(basis.minus(r));
  }
  const auto [a, b] = detail::fit_two(y, u, v);
  return b / a;
}

// ---------------------------------------------------------------------------
// Shooting

namespace detail {

inline double outer_radius(const ShootingConfig& cfg, double m, double decay) {
  if (cfg.r_max > 0.0) return cfg.r_max / m;
  return std::max(40.0 / decay, 30.0 / m);
}

inline double ac_outer_radius(const ShootingConfig& cfg, double m, double kappa) {
  if (cfg.r_max > 0.0) return cfg.r_max / m;
  return 40.0 / kappa;
}

/// Ratio K_b(z)/K_a(z) from the two-term large-argument expansion.
inline double asymptotic_k_ratio(double a, double b, double z) {
  const double ta = 1.0 + (4.0 * a * a - 1.0) / (8.0 * z);
  const double tb = 1.0 + (4.0 * b * b - 1.0) / (8.0 * z);
  return tb / ta;
}

/// Normalised misalignment of F(r_max) with the decaying direction for the
/// Dirac system; changes sign exactly once per bound state.
inline double dirac_miss(const ab::DiracChannel& ch, double xi, double E, double r_min,
                         double r_max, double tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  const double m = ch.mass;
  const double sigma = ch.s * ch.nu_tilde();
  const double alpha = -ch.s * (E + m);
  const double beta = ch.s * (E - m);
  auto system = [=](const State& f, State& df, double r) {
    df[0] = sigma * f[0] / r + alpha * f[1];
    df[1] = -sigma * f[1] / r + beta * f[0];
  };
  State f = DiracLocalBasis(ch, E).seed(r_min, xi);
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-300, tol);
  double r = r_min;
  double dt = 1e-3 * r_min;
  long fails = 0;
  long steps = 0;
  while (r < r_max) {
    if (r + dt > r_max) dt = r_max - r;
    if (stepper.try_step(system, f, r, dt) == odeint::fail) {
      if (++fails > 100000 || dt < 1e-14 * r)
        throw StiffnessError("dirac_shoot: step control collapsed at r = " + std::to_string(r));
    } else if (++steps > 2000000) {
      throw StiffnessError("dirac_shoot: step budget exhausted");
    }
    const double scale = std::max(std::abs(f[0]), std::abs(f[1]));
    if (scale > 1e200) {
      f[0] /= scale;
      f[1] /= scale;
    }
  }
  const double lambda = std::sqrt((m - E) * (m + E));
  const double weight = ch.s * (E >= 0.0 ? lambda / (m + E) : (m - E) / lambda);
  const double z = lambda * r_max;
  const double d1 = 1.0;
  const double d2 = weight * asymptotic_k_ratio(std::abs(sigma - 0.5), std::abs(sigma + 0.5), z);
  return (f[0] * d2 - f[1] * d1) / (std::hypot(f[0], f[1]) * std::hypot(d1, d2));
}

inline double schrodinger_miss(double m, double gamma, double xi, double E, double r_min,
                               double r_max, double tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  const double kappa = std::sqrt(-2.0 * m * E);
  const double x0 = std::log(r_min);
  const double x1 = std::log(r_max);
  const double h_target = 0.5 * std::pow(tol, 0.25);
  const double stretch = std::max(1.0, kappa * r_max / 40.0);
  const long n = std::max(16L, static_cast<long>(std::ceil(stretch * (x1 - x0) / h_target)));
  const double h = (x1 - x0) / n;

  // Inner region (kappa r < 1): w = A e^{gamma x} + B e^{-gamma x} with
  //   A' = kappa^2 r^2 w e^{-gamma x}/(2 gamma),  B' = -kappa^2 r^2 w e^{gamma x}/(2 gamma),
  // so the subdominant branch is carried exactly instead of as a 1e-10 part of w.
  const SchrodingerLocalBasis basis(m, gamma, kappa);
  State ab = basis.amplitudes(r_min, xi);
  auto w_of = [gamma](const State& c, double x) {
    return c[0] * std::exp(gamma * x) + c[1] * std::exp(-gamma * x);
  };
  auto system = [&](const State& c, State& dc, double x) {
    const double source = kappa * kappa * std::exp(2.0 * x) * w_of(c, x) / (2.0 * gamma);
    dc[0] = source * std::exp(-gamma * x);
    dc[1] = -source * std::exp(gamma * x);
  };
  const long i_switch = std::clamp(static_cast<long>(std::floor((std::log(1.0 / kappa) - x0) / h)),
                                   0L, n - 1);
  auto inner = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-300, 0.01 * tol);
  const double xs = x0 + i_switch * h;
  if (i_switch > 0)
    odeint::integrate_adaptive(inner, system, ab, x0, xs, 0.01 * h);
  long double w_prev = w_of(ab, xs);
  odeint::integrate_adaptive(inner, system, ab, xs, xs + h, 0.01 * h);
  long double w = w_of(ab, xs + h);

  // Outer region: summed Numerov on y = (1 - h^2 Q/12) w,
  //   delta_{n+1} = delta_n + h^2 Q_n w_n,  y_{n+1} = y_n + delta_{n+1}.
  const long double hl = h;
  const long double h2 = hl * hl / 12.0L;
  auto q = [&](long i) {
    const long double r = std::exp(static_cast<long double>(x0) + i * hl);
    return static_cast<long double>(gamma) * gamma + static_cast<long double>(kappa) * kappa * r * r;
  };
  long double q_cur = q(i_switch + 1);
  long double y = (1.0L - h2 * q_cur) * w;
  long double delta = y - (1.0L - h2 * q(i_switch)) * w_prev;
  for (long i = i_switch + 1; i < n; ++i) {
    delta += 12.0L * h2 * q_cur * w;
    y += delta;
    q_cur = q(i + 1);
    w_prev = w;
    w = y / (1.0L - h2 * q_cur);
    const long double scale = std::max(std::abs(w), std::abs(w_prev));
    if (scale > 1e200L) {
      w /= scale;
      w_prev /= scale;
      y /= scale;
      delta /= scale;
    }
  }
  const double h_d = h;
  // decaying direction: K_gamma(kappa r) at the last two nodes
  const double ra = std::exp(x1 - h_d);
  const double rb = r_max;
  const double la = -kappa * ra - 0.5 * std::log(ra) + std::log1p((4.0 * gamma * gamma - 1.0) / (8.0 * kappa * ra));
  const double lb = -kappa * rb - 0.5 * std::log(rb) + std::log1p((4.0 * gamma * gamma - 1.0) / (8.0 * kappa * rb));
  const double d1 = 1.0;
  const double d2 = std::exp(lb - la);
  const double wa = static_cast<double>(w_prev / std::max(std::abs(w), std::abs(w_prev)));
  const double wb = static_cast<double>(w / std::max(std::abs(w), std::abs(w_prev)));
  return (wa * d2 - wb * d1) / (std::hypot(wa, wb) * std::hypot(d1, d2));
}

/// Scan + refine for one sector. energy(t) maps the scan variable to E.
struct Scan {
  std::vector<double> t;
  std::vector<double> miss;
};

template <class Miss>
Scan scan(Miss&& miss, const std::function<double(double)>& energy, double t_lo, double t_hi,
          int points) {
  Scan out;
  for (int i = 0; i < points; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / (points - 1);
    out.t.push_back(t);
    out.miss.push_back(miss(energy(t)));
  }
  return out;
}

inline std::vector<std::size_t> sign_changes(const Scan& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < s.miss.size(); ++i)
    if (s.miss[i] == 0.0 || s.miss[i] * s.miss[i + 1] < 0.0) out.push_back(i);
  return out;
}

/// Root of miss on [E_a, E_b] with a fixed outer radius, plus residual.
template <class MissAt>
std::pair<double, double> refine(MissAt&& miss_at, double e_a, double e_b, double tol_x) {
  const double lo = std::min(e_a, e_b);
  const double hi = std::max(e_a, e_b);
  const double root =
      num::find_root_bracketed(miss_at, num::Bracket::make(miss_at, lo, hi), tol_x, 0.0, 400);
  // The matching function is close to a step at the root, so the residual is
  // the half-width of the smallest symmetric interval that still brackets it.
  double residual = tol_x;
  while (residual < hi - lo) {
    const double a = std::max(lo, root - residual);
    const double b = std::min(hi, root + residual);
    if (miss_at(a) * miss_at(b) <= 0.0) break;
    residual *= 10.0;
  }
  return {root, residual};
}

struct DiracSetup {
  double t_lo;
  double t_hi;
};

inline DiracSetup dirac_window(const ab::DiracChannel& ch, const ShootingConfig& cfg) {
  constexpr double t_edge = 10.0;
  double lo = -t_edge;
  double hi = t_edge;
  if (!std::isnan(cfg.energy_bracket.first)) lo = std::atanh(std::max(-1.0, cfg.energy_bracket.first));
  if (!std::isnan(cfg.energy_bracket.second)) hi = std::atanh(std::min(1.0, cfg.energy_bracket.second));
  lo = std::max(lo, -t_edge);
  hi = std::min(hi, t_edge);
  if (!(lo < hi)) throw DomainError("dirac_shoot: empty energy bracket");
  (void)ch;
  return {lo, hi};
}

inline std::pair<double, double> ac_window(const ShootingConfig& cfg) {
  double lo = std::log(1e-8);
  double hi = std::log(1e4);
  // scan variable y = ln(-E/m); bracket given as energies E/m < 0
  if (!std::isnan(cfg.energy_bracket.first) && cfg.energy_bracket.first < 0.0)
    hi = std::log(-cfg.energy_bracket.first);
  if (!std::isnan(cfg.energy_bracket.second) && cfg.energy_bracket.second < 0.0)
    lo = std::log(-cfg.energy_bracket.second);
  if (!(lo < hi)) throw DomainError("schrodinger_shoot: empty energy bracket");
  return {lo, hi};
}

}  // namespace detail

namespace detail {

inline std::optional<ab::ChannelIndices> dirac_preconditions(const ab::DiracChannel& ch,
                                                             const Extension& ext,
                                                             const ShootingConfig& cfg) {
  validate(cfg);
  const auto idx = ab::classify_channel(ch);
  if (idx.regime == ab::Regime::Critical)
    throw RegimeError("dirac_shoot: critical channel (nu = 0)", ab::to_string(idx.regime));
  if (idx.regime == ab::Regime::Regular) return std::nullopt;
  if (ext.is_infinite() || !(ext.xi() < 0.0)) return std::nullopt;
  return idx;
}

inline Scan dirac_scan(const ab::DiracChannel& ch, double xi, const ShootingConfig& cfg) {
  const double m = ch.mass;
  const auto win = dirac_window(ch, cfg);
  auto energy = [m](double t) { return m * std::tanh(t); };
  auto miss = [&](double E) {
    const double lambda = std::sqrt((m - E) * (m + E));
    return dirac_miss(ch, xi, E, cfg.r_min / m, outer_radius(cfg, m, lambda), cfg.tolerance);
  };
  return scan(miss, energy, win.t_lo, win.t_hi, cfg.scan_points);
}

inline std::pair<double, double> dirac_refine(const ab::DiracChannel& ch, double xi,
                                              const ShootingConfig& cfg, double r_min, double e_a,
                                              double e_b) {
  const double m = ch.mass;
  const double lambda = std::min(std::sqrt((m - e_a) * (m + e_a)), std::sqrt((m - e_b) * (m + e_b)));
  const double r_max = outer_radius(cfg, m, lambda);
  auto miss_at = [&](double E) { return dirac_miss(ch, xi, E, r_min / m, r_max, cfg.tolerance); };
  return refine(miss_at, e_a, e_b, 0.1 * cfg.tolerance * m);
}

inline Scan ac_scan(double m, double gamma, double xi, const ShootingConfig& cfg) {
  const auto [lo, hi] = ac_window(cfg);
  auto energy = [m](double y) { return -m * std::exp(y); };
  auto miss = [&](double E) {
    const double kappa = std::sqrt(-2.0 * m * E);
    return schrodinger_miss(m, gamma, xi, E, cfg.r_min / m, ac_outer_radius(cfg, m, kappa), cfg.tolerance);
  };
  return scan(miss, energy, lo, hi, cfg.scan_points);
}

inline std::pair<double, double> ac_refine(double m, double gamma, double xi,
                                           const ShootingConfig& cfg, double r_min, double e_a,
                                           double e_b) {
  const double kappa = std::sqrt(-2.0 * m * std::max(e_a, e_b));
  const double r_max = ac_outer_radius(cfg, m, kappa);
  auto miss_at = [&](double E) {
    return schrodinger_miss(m, gamma, xi, E, r_min / m, r_max, cfg.tolerance);
  };
  const double scale = std::max(std::abs(e_a), std::abs(e_b));
  return refine(miss_at, e_a, e_b, 0.1 * cfg.tolerance * std::min(m, scale));
}

}  // namespace detail

/// Bound level of a Dirac channel by shooting; nullopt for Regular channels,
/// xi >= 0, xi = infinity, or when the scan finds no sign change.
inline std::optional<OracleResult> dirac_shoot(const ab::DiracChannel& ch, const Extension& ext,
                                               const ShootingConfig& cfg = {}) {
  if (!detail::dirac_preconditions(ch, ext, cfg)) return std::nullopt;
  const double m = ch.mass;
  const double xi = ext.xi();
  const auto s = detail::dirac_scan(ch, xi, cfg);
  const auto changes = detail::sign_changes(s);
  if (changes.empty()) return std::nullopt;
  const std::size_t i = changes.front();
  const double e_a = m * std::tanh(s.t[i]);
  const double e_b = m * std::tanh(s.t[i + 1]);
  const auto [E, residual] = detail::dirac_refine(ch, xi, cfg, cfg.r_min, e_a, e_b);
  const auto [E_half, residual_half] = detail::dirac_refine(ch, xi, cfg, 0.5 * cfg.r_min, e_a, e_b);
  (void)residual_half;
  return OracleResult{E, residual, std::numeric_limits<double>::quiet_NaN(), std::abs(E - E_half)};
}

/// Number of sign changes of the Dirac matching function over the scan.
inline int count_levels(const ab::DiracChannel& ch, const Extension& ext,
                        const ShootingConfig& cfg = {}) {
  if (!detail::dirac_preconditions(ch, ext, cfg)) return 0;
  return static_cast<int>(detail::sign_changes(detail::dirac_scan(ch, ext.xi(), cfg)).size());
}

namespace detail {
inline std::optional<double> ac_preconditions(const ac::ACChannel& ch, const Extension& ext,
                                              const ShootingConfig& cfg) {
  validate(cfg);
  const auto idx = ac::ac_classify(ch);
  if (idx.regime == ac::ACRegime::LogCritical)
    throw RegimeError("schrodinger_shoot: gamma = 0 has no power-law template",
                      ac::to_string(idx.regime));
  if (idx.regime == ac::ACRegime::Regular) return std::nullopt;
  if (ext.is_infinite() || !(ext.xi() < 0.0)) return std::nullopt;
  return idx.gamma;
}
}  // namespace detail

/// Bound level of an AC channel by Numerov shooting.
inline std::optional<OracleResult> schrodinger_shoot(const ac::ACChannel& ch, const Extension& ext,
                                                     const ShootingConfig& cfg = {}) {
  const auto gamma = detail::ac_preconditions(ch, ext, cfg);
  if (!gamma) return std::nullopt;
  const double m = ch.mass;
  const double xi = ext.xi();
  const auto s = detail::ac_scan(m, *gamma, xi, cfg);
  const auto changes = detail::sign_changes(s);
  if (changes.empty()) return std::nullopt;
  const std::size_t i = changes.front();
  const double e_a = -m * std::exp(s.t[i]);
  const double e_b = -m * std::exp(s.t[i + 1]);
  const auto [E, residual] = detail::ac_refine(m, *gamma, xi, cfg, cfg.r_min, e_a, e_b);
  const auto [E_half, residual_half] = detail::ac_refine(m, *gamma, xi, cfg, 0.5 * cfg.r_min, e_a, e_b);
  (void)residual_half;
  return OracleResult{E, residual, std::numeric_limits<double>::quiet_NaN(), std::abs(E - E_half)};
}

inline int count_levels(const ac::ACChannel& ch, const Extension& ext,
                        const ShootingConfig& cfg = {}) {
  const auto gamma = detail::ac_preconditions(ch, ext, cfg);
  if (!gamma) return 0;
  return static_cast<int>(
      detail::sign_changes(detail::ac_scan(ch.mass, *gamma, ext.xi(), cfg)).size());
}

// ---------------------------------------------------------------------------
// Convergence ladders

struct ConvergenceReport {
  std::vector<double> energies;
  double extrapolated = std::numeric_limits<double>::quiet_NaN();
  double order = std::numeric_limits<double>::quiet_NaN();
  bool monotone = false;
};

/// Richardson extrapolation over a ladder of nested configurations. ratio is
/// the refinement factor of the controlling step between rungs.
inline ConvergenceReport convergence_study(
    const std::function<std::optional<OracleResult>(const ShootingConfig&)>& problem,
    const std::vector<ShootingConfig>& ladder, double ratio = 2.0) {
  if (ladder.size() < 3) throw DomainError("convergence_study: need at least 3 configurations");
  ConvergenceReport rep;
  for (const auto& cfg : ladder) {
    const auto r = problem(cfg);
    if (!r) throw NonconvergenceError("convergence_study: a rung found no level");
    rep.energies.push_back(r->E);
  }
  const std::size_t n = rep.energies.size();
  const double d1 = rep.energies[n - 2] - rep.energies[n - 3];
  const double d2 = rep.energies[n - 1] - rep.energies[n - 2];
  rep.monotone = true;
  for (std::size_t i = 2; i < n; ++i) {
    const double a = rep.energies[i - 1] - rep.energies[i - 2];
    const double b = rep.energies[i] - rep.energies[i - 1];
    if (a * b < 0.0 || std::abs(b) > std::abs(a)) rep.monotone = false;
  }
  if (d2 == 0.0) {
    rep.extrapolated = rep.energies.back();
    rep.order = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.order = std::log(std::abs(d1 / d2)) / std::log(ratio);
  const double factor = std::pow(ratio, rep.order) - 1.0;
  rep.extrapolated = rep.monotone && factor > 0.0 ? rep.energies.back() + d2 / factor
                                                  : rep.energies.back();
  return rep;
}

}  // namespace fluxbound::oracle
