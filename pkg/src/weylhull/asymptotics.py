"""Asymptotic approximations of the absorption probabilities.

Three regimes in the step count n for dimension d = d(n): fixed dimension
(polynomial-log decay of non-absorption), the central limit window around
d = u log n, and large deviations for d = u x log n with x bounded away
from 1.  The scale parameter u is 1 for bridges (type A symmetry) and 1/2
for walks (types B and D).
"""
from __future__ import annotations

import cmath
import math

from scipy.special import loggamma

CASES = ("A", "B", "D")

#: guard band around the x = 1 singularity of the large-deviation prefactor
X_GUARD = 0.05


def scale_parameter(case: str) -> float:
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}")
    return 1.0 if case == "A" else 0.5


def fixed_dimension_asymptotic(case: str, n: float, d: int) -> float:
    """Leading-order non-absorption probability for fixed d >= 2.

    A: 2 (log n)^(d-1) / ((d-1)! n); B/D: (log n)^(d-1) / (2^(d-2) (d-1)! sqrt(pi n)).
    The d = 1 values are exact classical constants and live in absorption.
    """
    u = scale_parameter(case)
    if d < 2:
        raise ValueError("fixed-dimension formula needs d >= 2")
    if n < 3:
        raise ValueError("need n >= 3")
    lead = math.log(n) ** (d - 1) / math.factorial(d - 1)
    if u == 1.0:
        return 2.0 * lead / n
    return lead / (2 ** (d - 2) * math.sqrt(math.pi * n))


def normal_cdf(a: float) -> float:
    return 0.5 * (1.0 + math.erf(a / math.sqrt(2.0)))


def clt_approximation(case: str, n: float, d: int) -> float:
    """Phi(a) with a = (d - u log n) / sqrt(u log n): the limiting
    non-absorption probability in the critical window d ~ u log n."""
    u = scale_parameter(case)
    if n < 3:
        raise ValueError("need n >= 3")
    mean = u * math.log(n)
    a = (d - mean) / math.sqrt(mean)
    return normal_cdf(a)


def mod_poisson_limit(z):
    """Limit of the tilted generating-function ratio: 2^(e^z) Gamma(e^z/2) /
    (2 sqrt(pi) Gamma(e^z)).  Accepts real or complex z; rejects complex
    arguments whose e^z lands on a pole of either Gamma factor."""
    w = cmath.exp(z)
    for arg in (w / 2.0, w):
        if abs(arg.imag) < 1e-12 and arg.real <= 0 and abs(arg.real - round(arg.real)) < 1e-12:
            raise ValueError("argument hits a Gamma pole")
    val = cmath.exp(w * math.log(2.0) + loggamma(w / 2.0) - loggamma(w)) / (2.0 * math.sqrt(math.pi))
    if isinstance(z, complex):
        return val
    return val.real


def _prefactor(case: str, x: float) -> float:
    """Constant of the sharp large-deviation formula, including the
    geometric-series denominator of the lattice-point sum.

    Type A: (2 / Gamma(x)) / |1 - x^2|.  Types B/D: the tilt step of the
    underlying occupancy distribution is x^(-1) per unit of d, which gives
    2^x x Gamma(x/2) / (sqrt(pi) Gamma(x)) over the same |1 - x^2|.
    """
    if case == "A":
        num = 2.0 / math.gamma(x)
    else:
        num = 2.0**x * x * math.gamma(x / 2.0) / (math.sqrt(math.pi) * math.gamma(x))
    return num / abs(1.0 - x * x)


def large_deviation_asymptotic(case: str, n: float, d: int) -> tuple[float, str]:
    """Sharp asymptotic of the smaller of the two absorption tails.

    With x = d / (u log n), returns (value, side): the non-absorption
    probability for x < 1 and the absorption probability for x > 1,
    n^(-u (x log x - x + 1)) / sqrt(2 pi x u log n) times the prefactor.
    """
    u = scale_parameter(case)
    if n < 3 or d < 1:
        raise ValueError("need n >= 3 and d >= 1")
    x = d / (u * math.log(n))
    if abs(x - 1.0) <= X_GUARD:
        raise ValueError("x too close to the critical point 1; use clt_approximation")
    rate = u * (x * math.log(x) - x + 1.0)
    value = n ** (-rate) / math.sqrt(2.0 * math.pi * x * u * math.log(n)) * _prefactor(case, x)
    side = "non-absorb" if x < 1.0 else "absorb"
    return value, side


def phase_boundary(case: str, d: int) -> float:
    """The transition location n* = e^(d/u): absorption goes from near 0
    for n much smaller to near 1 for n much larger, passing 1/2 at n*."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return math.exp(d / scale_parameter(case))
