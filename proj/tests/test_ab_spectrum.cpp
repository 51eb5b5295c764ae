#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "fluxbound/ab_spectrum.hpp"
#include "fluxbound/oracle.hpp"

using namespace fluxbound;
using namespace fluxbound::ab;

namespace {

const double kXi0Quarter = -0.47798879748612499536;
const double kLevelQuarter = -0.56600199969254444355;

DiracChannel family(double beta, int s = -1) {
  // l + n = 0 for s = -1, l + n = -1 for s = +1
  return DiracChannel{1.0, s == -1 ? 0 : -1, s, beta};
}

double level(const DiracChannel& ch, double xi) {
  return solve_bound_energy(ch, Extension::from_xi(xi)).value().E;
}

/// Relative residual of the radial system at r.
double ode_residual(const DiracChannel& ch, double E, const RadialDoublet& d, double r) {
  const double sigma = ch.s * ch.nu_tilde();
  const double m = ch.mass;
  const double h = 1e-5 * r;
  const auto fp = d(r + h);
  const auto fm = d(r - h);
  const auto f = d(r);
  const double d1 = (fp[0] - fm[0]) / (2 * h);
  const double d2 = (fp[1] - fm[1]) / (2 * h);
  const double r1 = d1 - sigma * f[0] / r + ch.s * (E + m) * f[1];
  const double r2 = d2 + sigma * f[1] / r - ch.s * (E - m) * f[0];
  const double s1 = std::abs(d1) + std::abs(sigma * f[0] / r) + std::abs((E + m) * f[1]);
  const double s2 = std::abs(d2) + std::abs(sigma * f[1] / r) + std::abs((E - m) * f[0]);
  return std::max(std::abs(r1) / s1, std::abs(r2) / s2);
}

double loglog_slope(const RadialDoublet& d, int c, double m) {
  const double a = 1e-6 / m;
  const double b = 1e-4 / m;
  return std::log(std::abs(d(b)[c] / d(a)[c])) / std::log(b / a);
}

}  // namespace

TEST(FluxDecompose, Floor) {
  auto p = flux_decompose(2.7);
  EXPECT_EQ(p.n, 2);
  EXPECT_NEAR(p.beta, 0.7, 1e-15);
  p = flux_decompose(3.0);
  EXPECT_EQ(p.n, 3);
  EXPECT_EQ(p.beta, 0.0);
  p = flux_decompose(-1.3);
  EXPECT_EQ(p.n, -2);
  EXPECT_NEAR(p.beta, 0.7, 1e-15);
  EXPECT_THROW(flux_decompose(std::nan("")), DomainError);
}

TEST(Classify, Examples) {
  auto idx = classify_channel({1.0, 0, -1, 0.2});
  EXPECT_NEAR(idx.nu_tilde, -0.3, 1e-15);
  EXPECT_NEAR(idx.nu, 0.3, 1e-15);
  EXPECT_EQ(idx.tau, 1);
  EXPECT_EQ(idx.regime, Regime::Extended);
  EXPECT_NEAR(idx.j, -0.5, 0.0);
  idx = classify_channel({1.0, 0, -1, 0.5});
  EXPECT_EQ(idx.nu, 0.0);
  EXPECT_EQ(idx.regime, Regime::Critical);
  EXPECT_NEAR(classify_channel({1.0, 1, 1, 0.4}).nu, 1.9, 1e-15);
  EXPECT_NEAR(classify_channel({1.0, 2, -1, 0.4}).nu, 1.9, 1e-15);
  EXPECT_EQ(classify_channel({1.0, 0, -1, 0.0}).regime, Regime::Regular);
  EXPECT_EQ(classify_channel({1.0, 0, -1, 0.5 + 1e-10}).regime, Regime::Critical);
}

TEST(Classify, Validation) {
  EXPECT_THROW(classify_channel({0.0, 0, -1, 0.2}), DomainError);
  EXPECT_THROW(classify_channel({1.0, 0, 2, 0.2}), DomainError);
}

TEST(ExtensionParameter, AngleChart) {
  EXPECT_TRUE(Extension::from_theta(std::numbers::pi).is_infinite());
  EXPECT_EQ(Extension::from_theta(0.0).xi(), 0.0);
  EXPECT_NEAR(Extension::from_theta(2.0 * std::numbers::pi + 0.5).theta(), 0.5, 1e-15);
  EXPECT_NEAR(Extension::from_xi(-1.0).theta(), 1.5 * std::numbers::pi, 1e-15);
  EXPECT_NEAR(Extension::from_theta(Extension::from_xi(-3.0).theta()).xi(), -3.0, 1e-14);
  EXPECT_EQ(Extension::from_xi(-INFINITY), Extension::infinite());
  EXPECT_THROW(Extension::from_xi(std::nan("")), DomainError);
}

TEST(MasterXi, Values) {
  EXPECT_NEAR(master_xi_of_energy(family(0.5 - 1e-7), 0.0), -1.0, 1e-6);
  EXPECT_NEAR(master_xi_of_energy(family(0.25), 0.0), kXi0Quarter, 1e-13);
  for (double E = -0.95; E <= 0.95; E += 0.05)
    EXPECT_NEAR(master_xi_of_energy(family(0.3), E), master_xi_of_energy(family(0.7), -E),
                1e-12 * std::abs(master_xi_of_energy(family(0.3), E)));
}

TEST(MasterXi, Errors) {
  EXPECT_THROW(master_xi_of_energy(family(0.0), 0.0), RegimeError);
  EXPECT_THROW(master_xi_of_energy(family(0.5), 0.0), RegimeError);
  EXPECT_THROW(master_xi_of_energy(family(0.25), 1.0), DomainError);
}

TEST(MasterXi, MonotoneInPinnedVariable) {
  for (double beta : {0.05, 0.2, 0.45, 0.55, 0.8, 0.95}) {
    for (int s : {-1, 1}) {
      const auto ch = family(beta, s);
      const int tau = classify_channel(ch).tau;
      double prev = -INFINITY;
      for (int i = 0; i < 100; ++i) {
        const double u = -0.99 + 1.98 * i / 99.0;
        const double v = std::log(std::abs(master_xi_of_energy(ch, -tau * u)));
        EXPECT_GT(v, prev);
        prev = v;
      }
    }
  }
}

TEST(SolveBound, GoldenLevels) {
  const auto lv = solve_bound_energy(family(0.25), Extension::from_xi(-1.0));
  ASSERT_TRUE(lv);
  EXPECT_NEAR(lv->E, kLevelQuarter, 1e-13);
  EXPECT_NEAR(lv->lambda, std::sqrt(1.0 - lv->E * lv->E), 1e-14);
  EXPECT_LE(lv->residual, 1e-12);
  EXPECT_EQ(lv->provenance, Provenance::analytic);
  EXPECT_NEAR(level(family(0.75), -1.0), -kLevelQuarter, 1e-13);
  EXPECT_NEAR(level(family(0.25), -0.05), 0.99904352000467989539, 1e-13);
  EXPECT_NEAR(level(family(0.5 - 1e-6), -1.0), -2.540725690916643499e-6, 1e-12);
}

TEST(SolveBound, NoneCases) {
  EXPECT_FALSE(solve_bound_energy(family(0.25), Extension::from_xi(0.0)));
  EXPECT_FALSE(solve_bound_energy(family(0.25), Extension::from_xi(2.0)));
  EXPECT_FALSE(solve_bound_energy(family(0.25), Extension::infinite()));
  EXPECT_FALSE(solve_bound_energy(family(0.0), Extension::from_xi(-1.0)));
  EXPECT_THROW(solve_bound_energy(family(0.5), Extension::from_xi(-1.0)), RegimeError);
}

TEST(SolveBound, InverseRoundTrip) {
  for (double beta : {0.1, 0.3, 0.45, 0.7}) {
    for (double E0 = -0.95; E0 <= 0.95; E0 += 0.05) {
      const double xi = master_xi_of_energy(family(beta), E0);
      EXPECT_NEAR(level(family(beta), xi), E0, 1e-9) << beta << " " << E0;
    }
  }
}

TEST(SolveBound, Limits) {
  EXPECT_GT(level(family(0.25), -1e-8), 1.0 - 1e-6);
  EXPECT_LT(level(family(0.25), -1e8), -1.0 + 1e-6);
}

TEST(SolveBound, ReflectionAndPeriodicity) {
  for (double xi : {-0.3, -1.0, -3.0})
    for (double beta = 0.1; beta < 0.46; beta += 0.05)
      EXPECT_NEAR(level(family(beta), xi) + level(family(1.0 - beta), xi), 0.0, 1e-8);
  for (double xi : {-0.2, -0.7, -1.0, -2.5, -9.0})
    EXPECT_NEAR(level({1.0, 0, -1, 0.3}, xi), level({1.0, -1, -1, 1.3}, xi), 1e-12);
}

TEST(SolveBound, MassScaling) {
  DiracChannel heavy = family(0.3);
  heavy.mass = 3.5;
  EXPECT_NEAR(level(heavy, -1.3), 3.5 * level(family(0.3), -1.3), 1e-12);
}

TEST(PrintedOmega, FiniteWithConstantSign) {
  for (int s : {-1, 1}) {
    const auto ch = family(0.3, s);
    const double sign0 = std::copysign(1.0, paper_omega(ch, 0.0));
    for (double E = -0.99; E < 1.0; E += 0.03) {
      const double w = paper_omega(ch, E);
      EXPECT_TRUE(std::isfinite(w));
      EXPECT_EQ(std::copysign(1.0, w), sign0);
    }
  }
}

TEST(PrintedOmega, MatchesMasterAtZeroEnergy) {
  for (int s : {-1, 1}) {
    for (double beta : {0.1, 0.25, 0.4}) {
      const auto ch = family(beta, s);
      EXPECT_NEAR(std::abs(paper_omega(ch, 0.0) / (4.0 * s)), std::abs(master_xi_of_energy(ch, 0.0)),
                  1e-10);
    }
  }
}

TEST(PrintedOmega, XiDependence) {
  const auto ch = family(0.3);
  const double E = 0.4;
  const double lambda = std::sqrt(1 - E * E);
  EXPECT_EQ(paper_omega_xi(ch, Extension::from_xi(0.0), E), paper_omega(ch, E));
  const double a = paper_omega_xi(ch, Extension::from_xi(-1.0), E);
  const double b = paper_omega_xi(ch, Extension::from_xi(-2.5), E);
  EXPECT_NEAR(a - b, 4.0 * ch.s * lambda * 1.5, 1e-12);
  EXPECT_THROW(paper_omega_xi(ch, Extension::infinite(), E), DomainError);
}

TEST(PrintedLevels, PrintedVariants) {
  EXPECT_NEAR(paper_level_lhs(family(0.5 - 1e-7), 0.3, PaperEquation::lev0), -1.0, 1e-5);
  for (double E : {-0.7, 0.0, 0.5})
    EXPECT_NEAR(paper_level_lhs(family(0.3), E, PaperEquation::lev0),
                paper_level_lhs(family(0.7), E, PaperEquation::lev1), 1e-12);
  const auto ch = family(0.2);
  const double nu = classify_channel(ch).nu;
  EXPECT_NEAR(std::abs(paper_level_lhs(ch, 0.1, PaperEquation::levab) /
                       paper_level_lhs(ch, 0.1, PaperEquation::wr00)),
              std::pow(2.0, 2.0 * nu), 1e-12);
  EXPECT_THROW(paper_level_lhs(family(0.7), 0.0, PaperEquation::lev0), DomainError);
  EXPECT_THROW(paper_level_lhs(family(0.3), 0.0, PaperEquation::lev1), DomainError);
  EXPECT_THROW(paper_level_lhs({1.0, 3, -1, 0.3}, 0.0, PaperEquation::lev0), DomainError);
  EXPECT_THROW(paper_level_lhs(family(0.5), 0.0, PaperEquation::lev0), DomainError);
}

TEST(PrintedLevels, Wr00RootZeroesOmegaXi) {
  const auto ch = family(0.2);
  const double xi = paper_level_lhs(ch, 0.3, PaperEquation::wr00);
  const auto lv = solve_paper_equation(ch, Extension::from_xi(xi), PaperEquation::wr00);
  ASSERT_TRUE(lv);
  const double scale = std::abs(paper_omega(ch, lv->E));
  EXPECT_LE(std::abs(paper_omega_xi(ch, Extension::from_xi(xi), lv->E)), 1e-9 * scale);
  EXPECT_EQ(lv->provenance, Provenance::paper_equation);
}

TEST(SpectralDensity, NonnegativeContinuousNonvanishing) {
  for (double beta : {0.15, 0.3, 0.7, 0.9}) {
    for (double xi : {-2.0, -0.5, 0.7}) {
      const auto ch = family(beta);
      const auto ext = Extension::from_xi(xi);
      for (double sign : {-1.0, 1.0}) {
        for (int i = 0; i <= 400; ++i) {
          const double E = sign * (1.001 + 8.999 * i / 400.0);
          EXPECT_GT(std::abs(calibrated_wronskian(ch, ext, E)), 0.0);
          EXPECT_GT(std::abs(paper_omega_xi_continued(ch, ext, E)), 0.0);
          const double d = spectral_density(ch, ext, E).density;
          EXPECT_TRUE(std::isfinite(d));
          EXPECT_GE(d, 0.0);
          const double d2 = spectral_density(ch, ext, E + sign * 1e-7).density;
          EXPECT_LE(std::abs(d2 - d), 1e-3 * d + 1e-12);
        }
      }
    }
  }
}

TEST(SpectralDensity, ContinuousInXi) {
  const auto ch = family(0.3);
  const double at0 = spectral_density(ch, Extension::from_xi(0.0), 2.0).density;
  EXPECT_NEAR(spectral_density(ch, Extension::from_xi(-1e-9), 2.0).density, at0, 1e-8);
}

TEST(SpectralDensity, Errors) {
  EXPECT_THROW(spectral_density(family(0.3), Extension::from_xi(-1.0), 0.5), DomainError);
  EXPECT_THROW(spectral_density(family(0.3), Extension::infinite(), 2.0), DomainError);
  EXPECT_THROW(spectral_density(family(0.0), Extension::from_xi(-1.0), 2.0), RegimeError);
}

TEST(BoundDoublet, NormalizedAndSolvesSystem) {
  for (double beta : {0.1, 0.3, 0.6, 0.85}) {
    for (int s : {-1, 1}) {
      const auto ch = family(beta, s);
      const auto lv = solve_bound_energy(ch, Extension::from_xi(-1.3)).value();
      const auto d = bound_doublet(lv);
      const auto n = num::integrate_semiline(
          [&](double r) {
            const auto f = d(r);
            return f[0] * f[0] + f[1] * f[1];
          },
          lv.lambda);
      EXPECT_NEAR(n.value, 1.0, 1e-8);
      EXPECT_EQ(d.decay_rate, lv.lambda);
      for (double r : {1e-3, 0.1, 1.0, 5.0})
        EXPECT_LE(ode_residual(ch, lv.E, d, r), 1e-6) << beta << " " << s << " " << r;
    }
  }
}

TEST(BoundDoublet, SmallRExponents) {
  for (double beta : {0.45, 0.4, 0.55, 0.6}) {
    const auto ch = family(beta);
    const auto d = bound_doublet(solve_bound_energy(ch, Extension::from_xi(-0.8)).value());
    EXPECT_NEAR(loglog_slope(d, 0, 1.0), d.small_r_exponents[0], 1e-3);
    EXPECT_NEAR(loglog_slope(d, 1, 1.0), d.small_r_exponents[1], 1e-3);
  }
}

TEST(BoundDoublet, FamilyComponentOrders) {
  const double beta = 0.3;
  const auto lv = solve_bound_energy(family(beta), Extension::from_xi(-1.0)).value();
  const auto d = bound_doublet(lv);
  const double r1 = 0.7, r2 = 2.1;
  const double z1 = lv.lambda * r1, z2 = lv.lambda * r2;
  EXPECT_NEAR(d(r1)[0] / d(r2)[0],
              std::sqrt(z1 / z2) * num::bessel_k(beta, z1) / num::bessel_k(beta, z2), 1e-12);
  EXPECT_NEAR(d(r1)[1] / d(r2)[1],
              std::sqrt(z1 / z2) * num::bessel_k(1.0 - beta, z1) / num::bessel_k(1.0 - beta, z2), 1e-12);
}

TEST(BoundDoublet, ZeroModeShape) {
  for (int s : {-1, 1}) {
    BoundLevel zero;
    zero.channel = family(0.5, s);
    zero.E = 0.0;
    zero.lambda = 1.0;
    zero.xi = -1.0;
    const auto d = bound_doublet(zero);
    // (1, s) sqrt(mr) K_{1/2}(mr), unit norm: sqrt(m) e^{-mr} (1, s)
    for (double r : {1e-3, 0.2, 1.0, 4.0}) {
      EXPECT_NEAR(d(r)[0], std::exp(-r), 1e-8);
      EXPECT_NEAR(d(r)[1], s * std::exp(-r), 1e-8);
    }
  }
}

TEST(BoundDoublet, ExtensionRoundTrip) {
  for (double beta : {0.1, 0.3, 0.45, 0.55, 0.7, 0.9}) {
    for (int s : {-1, 1}) {
      for (double xi : {-0.1, -1.0, -4.0}) {
        const auto ch = family(beta, s);
        const auto lv = solve_bound_energy(ch, Extension::from_xi(xi)).value();
        EXPECT_NEAR(oracle::fit_extension_parameter(ch, lv.E, bound_doublet(lv)), xi,
                    1e-8 * std::max(1.0, std::abs(xi)));
      }
    }
  }
}

TEST(NormalizeDoublet, Behaviour) {
  RadialDoublet flat;
  flat.eval = [](double) { return std::array<double, 2>{1.0, 0.0}; };
  EXPECT_THROW(normalize_doublet(flat), NotNormalizableError);
  RadialDoublet e;
  e.eval = [](double r) { return std::array<double, 2>{3.0 * std::exp(-r), 0.0}; };
  e.decay_rate = 1.0;
  const auto n = normalize_doublet(e);
  EXPECT_NEAR(n(0.5)[0], std::sqrt(2.0) * std::exp(-0.5), 1e-12);
  EXPECT_EQ(n.norm, 1.0);
  num::QuadratureOptions fine;
  fine.max_refinements = 18;
  const auto lv = solve_bound_energy(family(0.2), Extension::from_xi(-1.0)).value();
  const auto a = bound_doublet(lv);
  auto density = [&](double r) {
    const auto f = a(r);
    return f[0] * f[0] + f[1] * f[1];
  };
  EXPECT_NEAR(num::integrate_semiline(density, lv.lambda, fine).value, 1.0, 1e-8);
}

TEST(ContinuumDoublet, SolvesSystemAndBranches) {
  for (double beta : {0.2, 0.7}) {
    for (int s : {-1, 1}) {
      const auto ch = family(beta, s);
      for (double E : {-3.0, -1.2, 1.0001, 2.5}) {
        for (double xi : {-1.0, 0.0, 0.6}) {
          const auto d = continuum_doublet(ch, Extension::from_xi(xi), E);
          for (double r : {0.01, 0.5, 3.0}) EXPECT_LE(ode_residual(ch, E, d, r), 1e-6);
        }
      }
    }
  }
  const auto ch = family(0.2);
  const auto u0 = continuum_doublet(ch, Extension::from_xi(0.0), 2.0);
  const auto ui = continuum_doublet(ch, Extension::infinite(), 2.0);
  const auto u1 = continuum_doublet(ch, Extension::from_xi(-0.8), 2.0);
  for (double r : {0.1, 1.0}) {
    // U_xi = U_plus - s xi U_minus with U_minus = -U_infinity
    for (int c = 0; c < 2; ++c)
      EXPECT_NEAR(u1(r)[c], u0(r)[c] + ch.s * (-0.8) * ui(r)[c], 1e-12 * (1 + std::abs(u1(r)[c])));
  }
  EXPECT_NEAR(loglog_slope(ui, 0, 1.0), ui.small_r_exponents[0], 1e-3);
  EXPECT_NEAR(loglog_slope(u0, 0, 1.0), u0.small_r_exponents[0], 1e-3);
  EXPECT_EQ(u0.decay_rate, 0.0);
}

TEST(ContinuumDoublet, ThresholdsSolveSystem) {
  for (int s : {-1, 1}) {
    const auto ch = family(0.3, s);
    for (double E : {-1.0, 1.0}) {
      const auto d = continuum_doublet(ch, Extension::from_xi(-0.5), E);
      for (double r : {0.01, 0.5, 3.0}) EXPECT_LE(ode_residual(ch, E, d, r), 1e-6);
    }
  }
}

TEST(ContinuumDoublet, RegularBranch) {
  const DiracChannel ch{1.0, 1, 1, 0.2};
  const double nu = classify_channel(ch).nu;
  const auto d = continuum_doublet(ch, Extension::from_xi(-3.0), 1.5);
  EXPECT_NEAR(loglog_slope(d, 0, 1.0), nu, 1e-3);
  EXPECT_NEAR(d.small_r_exponents[0], nu, 0.0);
  for (double r : {0.01, 0.5, 3.0}) EXPECT_LE(ode_residual(ch, 1.5, d, r), 1e-6);
  EXPECT_THROW(continuum_doublet(family(0.3), Extension::from_xi(-1.0), 0.5), DomainError);
  EXPECT_THROW(continuum_doublet(family(0.5), Extension::from_xi(-1.0), 2.0), RegimeError);
}

TEST(Conjugation, InvolutionAndSpectrum) {
  for (double mu : {0.2, 0.35, 0.8, -0.3}) {
    for (int s : {-1, 1}) {
      const DiracChannel ch{1.0, 0, s, mu};
      const auto ext = Extension::from_xi(-1.7);
      const auto c = conjugate_channel(ch, ext);
      const auto back = conjugate_channel(c.channel, c.extension);
      EXPECT_EQ(back.channel, ch);
      EXPECT_EQ(back.extension, ext);
      const auto a = classify_channel(ch);
      const auto b = classify_channel(c.channel);
      EXPECT_NEAR(b.nu_tilde, -a.nu_tilde, 1e-15);
      EXPECT_EQ(b.nu, a.nu);
      EXPECT_EQ(b.tau, a.tau);
      if (a.regime != Regime::Extended) continue;
      for (double E = -0.9; E < 0.95; E += 0.1)
        EXPECT_EQ(master_xi_of_energy(ch, E), master_xi_of_energy(c.channel, E));
      EXPECT_EQ(level(ch, -1.7), level(c.channel, -1.7));
    }
  }
  const auto ch = family(0.3);
  const double xi_zero = master_xi_of_energy(ch, 0.0);
  const auto c = conjugate_channel(ch, Extension::from_xi(xi_zero));
  EXPECT_NEAR(level(c.channel, c.extension.xi()), 0.0, 1e-12);
}
