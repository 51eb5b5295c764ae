"""Reference values for the C++ tests, computed independently with mpmath at 30 digits.

Run: python3 tests/oracles/golden.py
"""
from mpmath import mp, mpf, gamma, loggamma, besselj, besselk, quad, inf, sqrt, pi, exp, euler, findroot, tanh, atanh, log, cosh, nsum, factorial

mp.dps = 30


def master_abs_xi(nu, u, m=1):
    lam = sqrt((m - u) * (m + u))
    return sqrt((m + u) / (m - u)) * gamma(mpf(1) / 2 + nu) / gamma(mpf(1) / 2 - nu) * (2 * m / lam) ** (2 * nu)


def level(nu, tau, xi):
    # u = -tau E; |xi(u)| increasing in u
    w = findroot(lambda w: log(master_abs_xi(nu, tanh(w))) - log(-xi), 0)
    return -tau * tanh(w)


rows = {
    "gamma(0.5)": lambda: gamma(0.5),
    "gamma(-0.5)": lambda: gamma(-0.5),
    "lgamma(0.5)": lambda: loggamma(0.5),
    "gamma(0.2)": lambda: gamma(0.2),
    "J_{-0.3}(0.7) series": lambda: nsum(lambda k: (-1) ** k * (mpf(0.7) / 2) ** (2 * k - mpf(0.3)) / (factorial(k) * gamma(k + mpf(0.7))), [0, inf]),
    "K_0(1)": lambda: besselk(0, 1),
    "K_0(1) integral": lambda: quad(lambda t: exp(-cosh(t)), [0, 2, 8]),
    "int r K0^2": lambda: quad(lambda r: r * besselk(0, r) ** 2, [0, 1, 10, 60]),
    "master xi(0) nu=0.25": lambda: -master_abs_xi(mpf(0.25), 0),
    "E(mu=0.25, xi=-1)": lambda: level(mpf(0.25), 1, -1),
    "E(mu=0.75, xi=-1)": lambda: level(mpf(0.25), -1, -1),
    "E(mu=0.25, xi=-0.05)": lambda: level(mpf(0.25), 1, mpf(-0.05)),
    "E(nu=1e-6, xi=-1) tau=+1": lambda: level(mpf(1e-6), 1, -1),
    "AC E0(gamma=0, xi=-1)": lambda: -4 * exp(2 * (-1 - euler)),
    "AC E(gamma=0.3, xi=-2)": lambda: -2 * (2 * gamma(0.7) / gamma(1.3)) ** (-1 / mpf(0.3)),
}
for k, v in rows.items():
    print(f"{k:32s} {mp.nstr(v(), 20)}", flush=True)
