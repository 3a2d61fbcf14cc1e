"""Digamma and the dimensional constants of the logarithmic Laplacian."""

from __future__ import annotations

import math
from dataclasses import dataclass

EULER_GAMMA = 0.57721566490153286061

# Bernoulli-number coefficients B_2k / (2k) of the digamma asymptotic series
_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
)


def digamma(x: float) -> float:
    """Digamma function Psi = Gamma'/Gamma for real x > 0."""
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise ValueError(f"digamma requires a finite positive argument, got {x!r}")
    acc = 0.0
    while x < 8.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for coeff in _ASYMPTOTIC:
        series += coeff * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x - series


@dataclass(frozen=True)
class DimConstants:
    N: int
    c_N: float
    rho_N: float
    hardy_c: float


def dim_constants(N: int) -> DimConstants:
    """Kernel normalization c_N, zero-order coefficient rho_N and the Hardy constant."""
    if int(N) != N or N < 1:
        raise ValueError(f"dimension must be a positive integer, got {N!r}")
    N = int(N)
    c_N = math.pi ** (-N / 2) * math.gamma(N / 2)
    rho_N = 2.0 * math.log(2.0) + digamma(N / 2) - EULER_GAMMA
    hardy_c = math.log(2.0) + digamma(N / 4)
    return DimConstants(N=N, c_N=c_N, rho_N=rho_N, hardy_c=hardy_c)


def frac_constant(N: int, s: float) -> float:
    """Normalization c_{N,s} of the fractional Laplacian of order s.

    Behaves like s * c_N as s -> 0+.
    """
    if not 0.0 < s < 1.0:
        raise ValueError(f"fractional order must lie in (0, 1), got {s!r}")
    return (
        2.0 ** (2.0 * s)
        * math.pi ** (-N / 2)
        * s
        * math.gamma((N + 2.0 * s) / 2.0)
        / math.gamma(1.0 - s)
    )


def pitt_constant(N: int, s: float) -> float:
    """Sharp constant 2^{2s} Gamma^2((N+2s)/4) / Gamma^2((N-2s)/4) of the Pitt inequality."""
    if not 0.0 <= s < N / 2:
        raise ValueError(f"Pitt constant needs 0 <= s < N/2, got {s!r}")
    ratio = math.gamma((N + 2.0 * s) / 4.0) / math.gamma((N - 2.0 * s) / 4.0)
    return 2.0 ** (2.0 * s) * ratio * ratio
