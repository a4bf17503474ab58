"""Optimal array length when every splitter also absorbs.

With absorption ``gamma`` the end-to-end probability is
``exp(-gamma N) cos^2N(pi/2N)``: more splitters suppress reflection but add
absorption, so there is a best ``N``. The real stationary point satisfies

    gamma = 2 ln cos(pi/2N) + (pi/N) tan(pi/2N)

which is inverted here by bracketing; the integer optimum is found by a
direct scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq


def absorbing_p1(n_splitters: int, gamma: float) -> float:
    """``exp(-gamma N) cos^2N(pi/2N)``, evaluated in log space."""
    if n_splitters < 1:
        raise ValueError(f"n_splitters must be >= 1, got {n_splitters}")
    c = math.cos(math.pi / (2 * n_splitters))
    if c <= 0.0:
        return 0.0
    return math.exp(n_splitters * (2.0 * math.log(c) - gamma))


def critical_gamma(n_c: float) -> float:
    """Absorption for which ``n_c`` is the stationary point of ``absorbing_p1``."""
    if not n_c >= 2:
        raise ValueError(f"n_c must be >= 2, got {n_c!r}")
    x = math.pi / (2.0 * n_c)
    return 2.0 * math.log(math.cos(x)) + 2.0 * x * math.tan(x)


def asymptotic_critical_n(gamma: float) -> float:
    """Large-N inverse of :func:`critical_gamma`: ``pi / (2 sqrt(gamma))``."""
    if not gamma > 0:
        raise ValueError(f"gamma must be > 0, got {gamma!r}")
    return math.pi / (2.0 * math.sqrt(gamma))


def half_sqrt_pi_over_gamma(gamma: float) -> float:
    """``sqrt(pi/gamma) / 2``, reported next to the consistent estimate.

    This form does not follow from expanding :func:`critical_gamma` and is
    about 0.56 times :func:`asymptotic_critical_n`.
    """
    if not gamma > 0:
        raise ValueError(f"gamma must be > 0, got {gamma!r}")
    return 0.5 * math.sqrt(math.pi / gamma)


@dataclass(frozen=True)
class CriticalResult:
    gamma: float
    n_real: float
    n_int: int
    p1_at_max: float
    asymptotic_estimate: float
    asymptotic_alt: float


def _integer_argmax(gamma: float, centre: float, half_width: int = 5) -> int:
    lo = max(1, math.floor(centre) - half_width)
    hi = math.ceil(centre) + half_width
    while True:
        best, best_p = lo, absorbing_p1(lo, gamma)
        for n in range(lo + 1, hi + 1):
            p = absorbing_p1(n, gamma)
            # near-ties go to the smaller array
            if p > best_p + 1e-15:
                best, best_p = n, p
        if best == hi:
            hi += 2 * half_width
        elif best == lo and lo > 1:
            lo = max(1, lo - 2 * half_width)
        else:
            return best


def solve_critical_n(gamma: float) -> CriticalResult:
    if not gamma > 0:
        raise ValueError(f"gamma must be > 0, got {gamma!r}")
    g_max = critical_gamma(2.0)
    if gamma >= g_max:
        raise ValueError(
            f"gamma={gamma!r} >= {g_max:.6g}: no stationary point with N_c >= 2"
        )
    estimate = asymptotic_critical_n(gamma)
    upper = max(10.0, 10.0 * estimate)
    n_real = brentq(
        lambda n: critical_gamma(n) - gamma, 2.0, upper, xtol=1e-14, rtol=1e-13, maxiter=500
    )
    n_int = _integer_argmax(gamma, n_real)
    return CriticalResult(
        gamma=gamma,
        n_real=n_real,
        n_int=n_int,
        p1_at_max=absorbing_p1(n_int, gamma),
        asymptotic_estimate=estimate,
        asymptotic_alt=half_sqrt_pi_over_gamma(gamma),
    )
