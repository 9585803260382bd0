"""Exact absorption probabilities for convex hulls of random walks and bridges.

The probability that the origin lands inside the convex hull of the partial
sums is a parity-tail sum over one of the coefficient families in
:mod:`weylhull.coefficients`, divided by the order of the matching reflection
group.  Everything here is distribution-free: only the step count, the
dimension, and the symmetry type enter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import coefficients as coef

ExactRational = Fraction

#: largest n for which the absorb-side tail is recomputed from the full row
#: as an internal cross-check of the parity identity
_CROSS_CHECK_CAP = 200

KINDS = ("bridge-A", "walk-B", "walk-D", "joint-B", "wendel")


@dataclass(frozen=True)
class WalkFamily:
    """A walk/bridge family: symmetry type, step count(s) and dimension.

    kind 'joint-B' (and 'wendel') takes a tuple of step counts; the others a
    single positive integer.
    """

    kind: str
    steps: int | tuple[int, ...]
    dimension: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown walk kind {self.kind!r}")
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.kind in ("joint-B", "wendel"):
            ns = self.ns
            if not ns or any(n < 1 for n in ns):
                raise ValueError("each step count must be >= 1")
        else:
            if not isinstance(self.steps, int) or self.steps < 1:
                raise ValueError("steps must be a positive integer")

    @property
    def ns(self) -> tuple[int, ...]:
        if self.kind == "wendel":
            # r one-step walks
            r = self.steps if isinstance(self.steps, int) else len(self.steps)
            return (1,) * r
        if self.kind == "joint-B":
            return tuple(self.steps) if not isinstance(self.steps, int) else (self.steps,)
        raise AttributeError("ns only defined for joint families")

    @property
    def n_total(self) -> int:
        if self.kind in ("joint-B", "wendel"):
            return sum(self.ns)
        return self.steps

    @property
    def within_hypotheses(self) -> bool:
        n, d = self.n_total, self.dimension
        if self.kind == "bridge-A":
            return n >= d + 1
        if self.kind == "walk-B":
            return n >= d
        if self.kind == "walk-D":
            return n >= max(2, d)
        return n >= d  # joint-B / wendel


@dataclass(frozen=True)
class AbsorptionResult:
    absorb: Fraction
    non_absorb: Fraction
    family: WalkFamily
    within_hypotheses: bool

    def __post_init__(self):
        if self.absorb + self.non_absorb != 1:
            raise ValueError("absorb and non_absorb must sum to 1")
        if self.within_hypotheses and not (0 <= self.absorb <= 1):
            raise ValueError("absorption probability outside [0, 1]")


def _parity_tail(values: Sequence[int], start: int) -> int:
    """values[start] + values[start+2] + ... (missing indices count as 0)."""
    if start < 0:
        start += 2 * ((1 - start) // 2)  # smallest index >= 0 of same parity
    return sum(values[k] for k in range(start, len(values), 2))


def _prefix_parity_tail(prefix: Sequence[int], start: int) -> int:
    """prefix[start] + prefix[start-2] + ... down to index >= 0."""
    return sum(prefix[k] for k in range(start, -1, -2))


def _clamp_same_parity(start: int, n: int) -> int:
    """Largest index <= n with the same parity as start (indices above n are 0)."""
    if start <= n:
        return start
    return n if (start - n) % 2 == 0 else n - 1


def _family_data(family: WalkFamily):
    """(group order, full-row callable, prefix callable) for the family."""
    n, d = family.n_total, family.dimension
    if family.kind == "bridge-A":
        order = math.factorial(n)
        return order, lambda: coef.stirling_row(n).coeffs, lambda k: coef.stirling_prefix(n, k)
    if family.kind == "walk-B":
        order = 2 ** n * math.factorial(n)
        return order, lambda: coef.b_row(n).coeffs, lambda k: coef.b_prefix(n, k)
    if family.kind == "walk-D":
        if n < 2:
            raise ValueError("walk-D needs n >= 2")
        order = 2 ** (n - 1) * math.factorial(n)
        return order, lambda: coef.d_row(n).coeffs, lambda k: coef.d_prefix(n, k)
    # joint-B / wendel
    ns = family.ns
    order = 1
    for ni in ns:
        order *= 2 ** ni * math.factorial(ni)
    row = lambda: coef.product_row(ns).coeffs
    return order, row, lambda k: row()[: k + 1]


def absorption_probability(family: WalkFamily) -> AbsorptionResult:
    """Exact absorption probability for the given walk family.

    Outside the formula's hypotheses (e.g. n < d) it is still
    evaluated and the result is flagged via ``within_hypotheses``.
    """
    n, d = family.n_total, family.dimension
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    order, row_fn, prefix_fn = _family_data(family)
    # the non-absorb side indexes downward from d-ish, so it only ever needs a
    # short prefix of the row; the absorb side follows by complement
    if family.kind == "bridge-A":
        lo_start, hi_start = d, d + 2
    else:
        lo_start, hi_start = d - 1, d + 1
    start = _clamp_same_parity(lo_start, n)
    prefix = prefix_fn(start) if start >= 0 else ()
    non_absorb = Fraction(2 * _prefix_parity_tail(prefix, start), order)
    absorb = 1 - non_absorb
    if n <= _CROSS_CHECK_CAP and family.within_hypotheses:
        direct = Fraction(2 * _parity_tail(row_fn(), hi_start), order)
        if direct != absorb:
            raise AssertionError(
                f"parity identity violated for {family}: {direct} vs {absorb}"
            )
    return AbsorptionResult(absorb, non_absorb, family, family.within_hypotheses)


def non_absorption_probability(family: WalkFamily) -> Fraction:
    """Probability that the hull misses the origin (complementary tail sum)."""
    return absorption_probability(family).non_absorb


def wendel_probability(r: int, d: int) -> Fraction:
    """P[0 not in hull of r symmetric i.i.d. points in R^d]: the classical
    (1/2^{r-1}) * sum_{k<d} C(r-1, k)."""
    if r < 1 or d < 1:
        raise ValueError("need r >= 1 and d >= 1")
    return Fraction(sum(math.comb(r - 1, k) for k in range(min(d, r))), 2 ** (r - 1))


def one_dimensional_reference(kind: str, n: int) -> Fraction:
    """Classical one-dimensional stay-positive / constant-sign probabilities."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind == "sparre-positive":
        return Fraction(math.comb(2 * n, n), 4 ** n)
    if kind == "bridge-sign":
        return Fraction(2, n)
    if kind == "simple-walk-positive":
        return Fraction(math.comb(n - 1, (n - 1) // 2), 2 ** n)
    if kind == "simple-bridge-sign":
        if n % 2 != 0 or n < 2:
            raise ValueError("simple-bridge-sign requires even n >= 2")
        return Fraction(1, n - 1)
    raise ValueError(f"unknown reference kind {kind!r}")


def absorption_probability_float(family: WalkFamily) -> float:
    """Floating-point absorption probability; the large-n evaluation path."""
    n, d = family.n_total, family.dimension
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if family.kind == "bridge-A":
        fam, lo_start = "A", d
    elif family.kind == "walk-B":
        fam, lo_start = "B", d - 1
    elif family.kind == "walk-D":
        fam, lo_start = "D", d - 1
    else:
        # joint families stay exact (individual walks are short)
        return float(absorption_probability(family).absorb)
    start = _clamp_same_parity(lo_start, n)
    pmf = coef.bernoulli_family_lower_pmf(fam, n, max(start, 0))
    non_absorb = 2.0 * sum(pmf[k] for k in range(start, -1, -2))
    return 1.0 - non_absorb


def non_absorption_probability_float(family: WalkFamily) -> float:
    return 1.0 - absorption_probability_float(family)
