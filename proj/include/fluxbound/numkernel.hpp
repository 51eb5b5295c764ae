#pragma once

// Real-argument special functions, bracketed root finding and semi-infinite
// quadrature. Everything here is a pure function of its arguments.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "fluxbound/errors.hpp"

namespace fluxbound::num {

inline constexpr double kMaxBesselOrder = 50.0;

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

inline double gamma_fn(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma_fn: non-finite argument");
  if (is_nonpositive_integer(x))
    throw PoleError("gamma_fn: pole at nonpositive integer " + std::to_string(x));
  return boost::math::tgamma(x);
}

inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("log_gamma: argument must be positive and finite");
  return boost::math::lgamma(x);
}

/// Ratio Gamma(a)/Gamma(b) for positive arguments, evaluated in log space.
inline double gamma_ratio(double a, double b) {
  return std::exp(log_gamma(a) - log_gamma(b));
}

namespace detail {
inline void check_bessel_args(const char* name, double order, double z) {
  if (!(z > 0.0) || !std::isfinite(z))
    throw DomainError(std::string(name) + ": argument must be positive");
  if (!(std::abs(order) <= kMaxBesselOrder))
    throw DomainError(std::string(name) + ": |order| exceeds 50");
}
}  // namespace detail

/// Bessel function of the first kind J_order(z), any real order.
inline double bessel_j(double order, double z) {
  detail::check_bessel_args("bessel_j", order, z);
  return boost::math::cyl_bessel_j(order, z);
}

/// MacDonald function K_order(z). Even in the order by construction.
inline double bessel_k(double order, double z) {
  detail::check_bessel_args("bessel_k", order, z);
  return boost::math::cyl_bessel_k(std::abs(order), z);
}

// ---------------------------------------------------------------------------
// Root finding

struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;

  /// Evaluates f at both ends; throws NoSignChangeError unless they straddle
  /// a sign change (an exact zero at an endpoint counts).
  template <class F>
  static Bracket make(F&& f, double lo, double hi) {
    if (!(lo < hi)) throw DomainError("Bracket: requires lo < hi");
    Bracket b{lo, hi, f(lo), f(hi)};
    if (!(b.f_lo * b.f_hi <= 0.0))
      throw NoSignChangeError("Bracket: no sign change on [" + std::to_string(lo) +
                              ", " + std::to_string(hi) + "]");
    return b;
  }
};

/// Bracketed root search (TOMS 748: bisection safeguarded by secant and
/// inverse-cubic steps). Stops when |f| <= tol_f or the bracket is narrower
/// than tol_x. The returned point never leaves [b.lo, b.hi].
template <class F>
double find_root_bracketed(F&& f, const Bracket& b, double tol_x, double tol_f,
                           std::uintmax_t max_iter = 200) {
  if (!(b.lo < b.hi)) throw DomainError("find_root_bracketed: requires lo < hi");
  if (!(b.f_lo * b.f_hi <= 0.0))
    throw NoSignChangeError("find_root_bracketed: no sign change in bracket");
  if (std::abs(b.f_lo) <= tol_f) return b.lo;
  if (std::abs(b.f_hi) <= tol_f) return b.hi;

  auto g = [&](double x) {
    const double v = f(x);
    return std::abs(v) <= tol_f ? 0.0 : v;
  };
  auto narrow = [tol_x](double a, double c) { return std::abs(c - a) <= tol_x; };
  std::uintmax_t iters = max_iter;
  const auto [a, c] =
      boost::math::tools::toms748_solve(g, b.lo, b.hi, b.f_lo, b.f_hi, narrow, iters);
  if (iters >= max_iter && !(std::abs(c - a) <= tol_x) && a != c)
    throw MaxIterationsError("find_root_bracketed: iteration budget exhausted");
  double x = (a == c) ? a : 0.5 * (a + c);
  if (x < b.lo) x = b.lo;
  if (x > b.hi) x = b.hi;
  return x;
}

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  /// Endpoint grading r = R t^p.
  double grading = 2.0;
  double tolerance = 1e-13;
  /// Halving levels of the double-exponential mesh.
  std::size_t max_refinements = 15;
  double target = 1e-9;
};

/// Integrates f over (0, inf). f may carry an integrable r^{-2nu} (nu < 1/2)
/// singularity at the origin and must decay like exp(-2 decay_rate r). The
/// range is cut at R = 40/decay_rate; the analytic tail bound
/// |f(R)|/(2 decay_rate) is folded into the error estimate.
template <class F>
QuadratureResult integrate_semiline(F&& f, double decay_rate,
                                    const QuadratureOptions& opt = {}) {
  if (!(decay_rate > 0.0) || !std::isfinite(decay_rate))
    throw DomainError("integrate_semiline: decay_rate must be positive");
  const double r_max = 40.0 / decay_rate;
  const double p = opt.grading;
  std::size_t evaluations = 0;
  auto graded = [&](double t) {
    ++evaluations;
    const double r = r_max * std::pow(t, p);
    if (!(r > 0.0)) return 0.0;
    const double v = f(r) * p * r_max * std::pow(t, p - 1.0);
    return std::isfinite(v) ? v : 0.0;
  };
  boost::math::quadrature::tanh_sinh<double> integrator(opt.max_refinements);
  double error = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  const double value = integrator.integrate(graded, 0.0, 1.0, opt.tolerance, &error, &l1, &levels);
  const double tail = std::abs(f(r_max)) / (2.0 * decay_rate);
  QuadratureResult out;
  out.value = value;
  out.abs_error_estimate =
      error + tail + 8.0 * std::numeric_limits<double>::epsilon() * l1;
  out.evaluations = evaluations;
  if (!std::isfinite(value) ||
      out.abs_error_estimate > opt.target * std::max(1.0, std::abs(value)))
    throw NonconvergenceError("integrate_semiline: error estimate stagnated at " +
                              std::to_string(out.abs_error_estimate));
  return out;
}

}  // namespace fluxbound::num
