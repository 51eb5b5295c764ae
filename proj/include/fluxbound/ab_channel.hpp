#pragma once

#include <cmath>
#include <string>

#include "fluxbound/errors.hpp"
#include "fluxbound/extension.hpp"

namespace fluxbound::ab {

/// mu = n + beta with n = floor(mu), beta in [0, 1).
struct FluxParts {
  long long n = 0;
  double beta = 0.0;
};

inline FluxParts flux_decompose(double mu) {
  if (!std::isfinite(mu)) throw DomainError("flux_decompose: mu must be finite");
  const double n = std::floor(mu);
  double beta = mu - n;
  if (beta >= 1.0) return {static_cast<long long>(n) + 1, 0.0};
  return {static_cast<long long>(n), beta};
}

enum class Regime { Extended, Regular, Critical };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::Extended: return "Extended";
    case Regime::Regular: return "Regular";
    case Regime::Critical: return "Critical";
  }
  return "?";
}

/// One angular-momentum/spin sector of the Aharonov-Bohm Dirac problem.
/// mass sets the energy unit; mu is the flux in units of the flux quantum.
struct DiracChannel {
  double mass = 1.0;
  int l = 0;
  int s = -1;
  double mu = 0.0;

  double nu_tilde() const { return l + mu + 0.5 * s; }
};

inline bool operator==(const DiracChannel& a, const DiracChannel& b) {
  return a.mass == b.mass && a.l == b.l && a.s == b.s && a.mu == b.mu;
}

struct ChannelIndices {
  double nu_tilde = 0.0;
  double nu = 0.0;
  /// s * sign(nu_tilde); 0 when nu_tilde vanishes.
  int tau = 0;
  double j = 0.0;
  Regime regime = Regime::Critical;
  FluxParts flux;
};

inline constexpr double kCriticalTolerance = 1e-9;

inline void validate(const DiracChannel& ch) {
  if (!(ch.mass > 0.0) || !std::isfinite(ch.mass))
    throw DomainError("DiracChannel: mass must be positive");
  if (ch.s != 1 && ch.s != -1) throw DomainError("DiracChannel: s must be +1 or -1");
  if (!std::isfinite(ch.mu)) throw DomainError("DiracChannel: mu must be finite");
}

inline ChannelIndices classify_channel(const DiracChannel& ch) {
  validate(ch);
  ChannelIndices out;
  out.nu_tilde = ch.nu_tilde();
  out.nu = std::abs(out.nu_tilde);
  out.j = ch.l + 0.5 * ch.s;
  out.flux = flux_decompose(ch.mu);
  if (out.nu_tilde != 0.0) out.tau = out.nu_tilde > 0.0 ? ch.s : -ch.s;
  if (out.nu < kCriticalTolerance)
    out.regime = Regime::Critical;
  else if (out.nu < 0.5)
    out.regime = Regime::Extended;
  else
    out.regime = Regime::Regular;
  return out;
}

inline ChannelIndices require_extended(const DiracChannel& ch, const char* op) {
  const auto idx = classify_channel(ch);
  if (idx.regime != Regime::Extended)
    throw RegimeError(std::string(op) + ": channel regime is " + to_string(idx.regime) +
                          " (nu = " + std::to_string(idx.nu) + ")",
                      to_string(idx.regime));
  return idx;
}

/// sigma_3 conjugation: (nu_tilde, s) -> (-nu_tilde, -s), realised as
/// (l, s, mu) -> (-l, -s, -mu). nu and tau are unchanged and xi keeps its
/// value in the bound-states-at-negative-xi orientation.
struct ConjugatePair {
  DiracChannel channel;
  Extension extension;
};

inline ConjugatePair conjugate_channel(const DiracChannel& ch, const Extension& ext) {
  return {DiracChannel{ch.mass, -ch.l, -ch.s, -ch.mu}, ext};
}

}  // namespace fluxbound::ab
