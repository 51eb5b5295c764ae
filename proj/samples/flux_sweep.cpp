#include <cstdio>

#include "fluxbound/fluxbound.hpp"

using namespace fluxbound;

// Level of the l = 0, s = -1 channel over the fractional flux, checked by shooting.
int main() {
  const Extension ext = Extension::from_xi(-1.0);
  std::printf("%-6s %-22s %-22s %s\n", "beta", "E/m closed form", "E/m shooting", "diff");
  for (int i = 1; i < 20; ++i) {
    const double beta = 0.05 * i;
    const ab::DiracChannel ch{1.0, 0, -1, beta};
    if (ab::classify_channel(ch).regime != ab::Regime::Extended) continue;
    const auto level = ab::solve_bound_energy(ch, ext);
    const auto shot = oracle::dirac_shoot(ch, ext);
    if (!level || !shot) continue;
    std::printf("%-6.2f %-22.15g %-22.15g %.2e\n", beta, level->E, shot->E, shot->E - level->E);
  }
  return 0;
}
