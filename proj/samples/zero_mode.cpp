#include <cmath>
#include <cstdio>

#include "fluxbound/fluxbound.hpp"

using namespace fluxbound;

// Bound level of the l = 0, s = -1 channel as the flux approaches one half.
int main() {
  const Extension ext = Extension::from_xi(-1.0);
  std::printf("%-14s %-24s %s\n", "beta", "E/m", "lambda/m");
  for (double d : {1e-1, 1e-2, 1e-3, 1e-4, 1e-6}) {
    for (double beta : {0.5 - d, 0.5 + d}) {
      const ab::DiracChannel ch{1.0, 0, -1, beta};
      const auto level = ab::solve_bound_energy(ch, ext);
      std::printf("%-14.8f %-24.17g %.17g\n", beta, level->E, level->lambda);
    }
  }

  // exact zero mode at beta = 1/2: (1, s) sqrt(m) exp(-mr)
  ab::BoundLevel zero;
  zero.channel = {1.0, 0, -1, 0.5};
  zero.E = 0.0;
  zero.lambda = 1.0;
  zero.xi = -1.0;
  const auto psi = ab::bound_doublet(zero);
  std::printf("\n%-8s %-24s %s\n", "m r", "f1", "f2");
  for (double r : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) {
    const auto f = psi(r);
    std::printf("%-8.2f %-24.17g %.17g\n", r, f[0], f[1]);
  }
  return 0;
}
