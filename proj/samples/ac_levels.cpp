#include <cstdio>

#include "fluxbound/fluxbound.hpp"

using namespace fluxbound;

// Aharonov-Casher levels for the l = 0 and l = 1 channels at coupling -Ma = c.
int main() {
  const Extension ext = Extension::from_xi(-1.0);
  std::printf("%-6s %-22s %s\n", "c", "E0/m", "E1/m");
  for (int i = 1; i < 10; ++i) {
    const double c = 0.1 * i;
    const auto lv = ac::ac_special_levels(c, ext);
    std::printf("%-6.2f %-22.15g %.15g\n", c, lv.E0, lv.E1);
  }

  const auto level = ac::ac_bound_energy(ac::channel_for_gamma(0.5), ext);
  const auto psi = ac::ac_wavefunction(*level);
  std::printf("\ngamma = 1/2: E/m = %.17g\n", level->E_n);
  for (double r : {0.1, 1.0, 3.0}) std::printf("f(%.1f) = %.17g\n", r, psi(r)[0]);

  const auto critical = ac::ac_bound_energy(ac::channel_for_gamma(0.0), ext);
  std::printf("gamma = 0:   E/m = %.17g\n", critical->E_n);
  return 0;
}
