"""Integer coefficient families behind the exact absorption formulas.

Every family here is the ascending-power coefficient row of a product of
linear factors prod_i (t + r_i) with nonnegative integer roots:

* ``stirling_row(n)``  -- roots 0, 1, ..., n-1 (unsigned Stirling, first kind)
* ``b_row(n)``         -- roots 1, 3, ..., 2n-1
* ``d_row(n)``         -- roots 1, 3, ..., 2n-3 and n-1
* ``product_row(ns)``  -- product of the b-type polynomials for each n_i

Exact rows are arbitrary-precision integers.  For step counts far beyond the
exact cap there is a floating-point route through the equivalent
Poisson-binomial distributions (success probabilities 1/i or 1/(2i)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy import special as sp

#: largest n for which full exact rows are computed by default
EXACT_N_CAP = 5000


class ExactModeCapError(ValueError):
    """Raised when an exact full-row computation exceeds the configured cap."""


@dataclass(frozen=True)
class CoefficientVector:
    """Ascending-power integer coefficients of a monic polynomial.

    Index ``k`` is the power of ``t``.  Lookups outside ``0..degree`` return 0.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("coefficient vector must be nonempty")
        if self.coeffs[-1] != 1:
            raise ValueError("expected a monic expansion")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        if 0 <= k <= self.degree:
            return self.coeffs[k]
        return 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)


@dataclass(frozen=True)
class PoissonBinomialPMF:
    """Distribution of a sum of independent Bernoulli(p_i) variables."""

    probs: tuple[float, ...]
    pmf: tuple[float, ...]

    def __post_init__(self):
        total = math.fsum(self.pmf)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"pmf does not sum to 1: {total!r}")
        if any(p < 0.0 for p in self.pmf):
            raise ValueError("pmf has negative entries")


def _check_cap(n: int, cap: int | None) -> None:
    limit = EXACT_N_CAP if cap is None else cap
    if n > limit:
        raise ExactModeCapError(
            f"exact full-row computation capped at n={limit}; "
            f"got n={n} (use the float route for large n)"
        )


def expand_linear_factors(roots: Sequence[int]) -> CoefficientVector:
    """Expand prod_i (t + r_i) exactly; the empty product is [1]."""
    coeffs = [1]
    for r in roots:
        r = int(r)
        if r < 0:
            raise ValueError(f"roots must be nonnegative, got {r}")
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] += r * c
            nxt[k + 1] += c
        coeffs = nxt
    return CoefficientVector(tuple(coeffs))


@lru_cache(maxsize=64)
def stirling_row(n: int, cap: int | None = None) -> CoefficientVector:
    """Coefficients of t(t+1)...(t+n-1), i.e. unsigned Stirling numbers."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_cap(n, cap)
    return expand_linear_factors(range(n))


@lru_cache(maxsize=64)
def b_row(n: int, cap: int | None = None) -> CoefficientVector:
    """Coefficients of (t+1)(t+3)...(t+2n-1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_cap(n, cap)
    return expand_linear_factors(range(1, 2 * n, 2))


@lru_cache(maxsize=64)
def d_row(n: int, cap: int | None = None) -> CoefficientVector:
    """Coefficients of (t+1)(t+3)...(t+2n-3)(t+n-1)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    _check_cap(n, cap)
    return expand_linear_factors(list(range(1, 2 * n - 2, 2)) + [n - 1])


@lru_cache(maxsize=64)
def product_row(ns: tuple[int, ...], cap: int | None = None) -> CoefficientVector:
    """Coefficients of prod_i (t+1)(t+3)...(t+2 n_i - 1)."""
    ns = tuple(int(n) for n in ns)
    if not ns or any(n < 1 for n in ns):
        raise ValueError("each n_i must be >= 1")
    _check_cap(sum(ns), cap)
    coeffs = [1]
    for n in ns:
        other = b_row(n).coeffs
        out = [0] * (len(coeffs) + len(other) - 1)
        for i, a in enumerate(coeffs):
            for j, b in enumerate(other):
                out[i + j] += a * b
        coeffs = out
    return CoefficientVector(tuple(coeffs))


def product_coefficients(ns: Sequence[int]) -> CoefficientVector:
    return product_row(tuple(ns))


def stirling_unsigned(n: int, k: int) -> int:
    """Coefficient of t^k in t(t+1)...(t+n-1); 0 outside 1..n."""
    return stirling_row(n)[k]


def b_coefficient(n: int, k: int) -> int:
    """Coefficient of t^k in (t+1)(t+3)...(t+2n-1); 0 outside 0..n."""
    return b_row(n)[k]


def d_coefficient(n: int, k: int) -> int:
    """Coefficient of t^k in (t+1)(t+3)...(t+2n-3)(t+n-1); 0 outside 0..n."""
    return d_row(n)[k]


# ---------------------------------------------------------------------------
# Truncated columns: the first kmax+1 coefficients of a row, in O(n * kmax)
# big-int operations.  This is what makes exact low-index tail sums cheap at
# n in the thousands, where expanding the full row would be wasteful.

@lru_cache(maxsize=128)
def b_prefix(n: int, kmax: int) -> tuple[int, ...]:
    """B(n, 0..kmax) via B(i,k) = (2i-1) B(i-1,k) + B(i-1,k-1)."""
    if n < 1 or kmax < 0:
        raise ValueError("need n >= 1 and kmax >= 0")
    row = [1] + [0] * kmax
    for i in range(1, n + 1):
        m = 2 * i - 1
        for k in range(min(i, kmax), 0, -1):
            row[k] = m * row[k] + row[k - 1]
        row[0] *= m
    return tuple(row)


@lru_cache(maxsize=128)
def stirling_prefix(n: int, kmax: int) -> tuple[int, ...]:
    """Unsigned Stirling s(n, 0..kmax) via s(i,k) = (i-1) s(i-1,k) + s(i-1,k-1)."""
    if n < 1 or kmax < 0:
        raise ValueError("need n >= 1 and kmax >= 0")
    row = [0] * (kmax + 1)
    if kmax >= 1:
        row[1] = 1
    else:
        # kmax == 0: s(n, 0) = 0 for all n >= 1
        return (0,)
    for i in range(2, n + 1):
        m = i - 1
        for k in range(min(i, kmax), 0, -1):
            row[k] = m * row[k] + row[k - 1]
        row[0] *= m
    return tuple(row)


def d_prefix(n: int, kmax: int) -> tuple[int, ...]:
    """D(n, 0..kmax) from the identity D(n,k) = (n-1) B(n-1,k) + B(n-1,k-1)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    b = b_prefix(n - 1, kmax)
    out = [(n - 1) * b[0]]
    for k in range(1, kmax + 1):
        out.append((n - 1) * b[k] + b[k - 1])
    return tuple(out)


# ---------------------------------------------------------------------------
# Floating-point route

def poisson_binomial_pmf(probs: Sequence[float]) -> PoissonBinomialPMF:
    """Full pmf of sum of independent Bernoulli(p_i) by the convolution DP."""
    p = np.asarray(probs, dtype=float)
    if p.size and (p.min() < 0.0 or p.max() > 1.0):
        raise ValueError("success probabilities must lie in [0, 1]")
    pmf = np.zeros(p.size + 1)
    pmf[0] = 1.0
    for pi in p:
        pmf[1:] = pmf[1:] * (1.0 - pi) + pmf[:-1] * pi
        pmf[0] *= 1.0 - pi
    return PoissonBinomialPMF(tuple(float(x) for x in p), tuple(float(x) for x in pmf))


def _newton_pmf(power_sums: np.ndarray, log_q: float, kmax: int) -> np.ndarray:
    """pmf[0..kmax] from odds power sums s_j and log prod (1 - p_i).

    Newton's identities turn the power sums of the odds r_i = p_i / (1 - p_i)
    into elementary symmetric functions e_k; then P[X = k] = e_k * prod(1-p_i).
    """
    e = np.zeros(kmax + 1)
    e[0] = 1.0
    for k in range(1, kmax + 1):
        acc = 0.0
        sign = 1.0
        for j in range(1, k + 1):
            acc += sign * e[k - j] * power_sums[j]
            sign = -sign
        e[k] = acc / k
    return np.exp(log_q) * e


def _odd_reciprocal_power_sums(n: int, jmax: int) -> np.ndarray:
    """s[j] = sum_{i=1}^{n} (2i-1)^(-j) for j = 1..jmax, via digamma/zeta."""
    s = np.zeros(jmax + 1)
    if jmax >= 1:
        s[1] = 0.5 * (sp.digamma(n + 0.5) - sp.digamma(0.5))
    for j in range(2, jmax + 1):
        s[j] = 2.0 ** (-j) * (sp.zeta(j, 0.5) - sp.zeta(j, n + 0.5))
    return s


def _unit_reciprocal_power_sums(n: int, jmax: int) -> np.ndarray:
    """s[j] = sum_{i=1}^{n} i^(-j) for j = 1..jmax."""
    s = np.zeros(jmax + 1)
    if n <= 0:
        return s
    if jmax >= 1:
        s[1] = sp.digamma(n + 1.0) - sp.digamma(1.0)
    for j in range(2, jmax + 1):
        s[j] = sp.zeta(j, 1.0) - sp.zeta(j, n + 1.0)
    return s


def bernoulli_family_lower_pmf(family: str, n: int, kmax: int) -> np.ndarray:
    """pmf[0..kmax] of the Bernoulli-sum representation of a coefficient row.

    family 'A': p_i = 1/i            (row s(n,k) / n!)
    family 'B': p_i = 1/(2i)         (row B(n,k) / (2^n n!))
    family 'D': p_i = 1/(2i), i < n, and p_n = 1/n  (row D(n,k) / (2^{n-1} n!))

    Exact for every k <= kmax regardless of how much mass sits above kmax.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    kmax = min(kmax, n)
    if family == "B":
        s = _odd_reciprocal_power_sums(n, kmax)
        log_q = sp.gammaln(2 * n + 1) - 2 * sp.gammaln(n + 1) - 2 * n * math.log(2.0)
        return _newton_pmf(s, log_q, kmax)
    if family == "A":
        # p_1 = 1 shifts the count by one; the remaining odds are 1/j, j < n
        inner = _newton_pmf(_unit_reciprocal_power_sums(n - 1, max(kmax - 1, 0)),
                            -math.log(n), max(kmax - 1, 0)) if n > 1 else np.array([1.0])
        pmf = np.zeros(kmax + 1)
        pmf[1:1 + inner.size] = inner[:kmax]
        return pmf
    if family == "D":
        if n < 2:
            raise ValueError("family D needs n >= 2")
        s = _odd_reciprocal_power_sums(n - 1, kmax)
        s[1:] += np.array([(n - 1.0) ** (-j) for j in range(1, kmax + 1)])
        log_q = (sp.gammaln(2 * n - 1) - 2 * sp.gammaln(n) - (2 * n - 2) * math.log(2.0)
                 + math.log1p(-1.0 / n))
        return _newton_pmf(s, log_q, kmax)
    raise ValueError(f"unknown family {family!r}")


def bernoulli_family_mgf(family: str, n: int, z: float) -> float:
    """E[exp(z X_n)] for the Bernoulli-sum representation, computed directly."""
    i = np.arange(1, n + 1, dtype=float)
    if family == "B":
        p = 1.0 / (2.0 * i)
    elif family == "A":
        p = 1.0 / i
    elif family == "D":
        p = 1.0 / (2.0 * i)
        p[-1] = 1.0 / n
    else:
        raise ValueError(f"unknown family {family!r}")
    return float(np.exp(np.sum(np.log1p(p * (math.exp(z) - 1.0)))))
