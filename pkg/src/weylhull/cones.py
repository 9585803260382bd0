"""Conic intrinsic volumes of Weyl chambers and their integral-geometry checks.

Exact volumes come straight from the coefficient families; the Steiner and
Crofton formulas are implemented as Monte Carlo verifiers so the exact
values can be tested against geometry instead of against themselves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import isotonic_regression
from scipy.special import betainc

from . import coefficients as coef
from . import hull, mc
from .arrangements import (
    build_reflection_arrangement,
    reflection_characteristic_polynomial,
    schlafli_count,
    whitney_characteristic_polynomial,
)

CHAMBER_TYPES = ("A", "B", "D")

#: relative decision band for the Crofton subspace-hit test
_CROFTON_BAND = 1e-9

#: Dykstra stopping tolerance and iteration cap for the D-chamber projection
_DYKSTRA_TOL = 1e-10
_DYKSTRA_MAX_ITER = 20000


@dataclass(frozen=True)
class IntrinsicVolumeVector:
    """v_0..v_n for a closed convex cone in R^n.

    The entries sum to 1; for a cone that is not a linear subspace the
    even-index and odd-index sums both equal 1/2.
    """

    n: int
    v: tuple
    exact: bool

    def __post_init__(self):
        if len(self.v) != self.n + 1:
            raise ValueError("need n + 1 intrinsic volumes")
        total = sum(self.v)
        if self.exact:
            if total != 1:
                raise ValueError("intrinsic volumes must sum to 1")
            if any(x < 0 for x in self.v):
                raise ValueError("intrinsic volumes must be nonnegative")
        elif abs(float(total) - 1.0) > 1e-9:
            raise ValueError("intrinsic volumes must sum to 1")

    def as_floats(self) -> list[float]:
        return [float(x) for x in self.v]


@dataclass(frozen=True)
class HalfTailValue:
    k: int
    value: object  # Fraction in exact mode, float otherwise


@dataclass(frozen=True)
class WeylChamber:
    """Fundamental cone of a finite reflection group acting on R^n.

    kind 'A': x_1 <= ... <= x_n (group of order n!),
    kind 'B': 0 <= x_1 <= ... <= x_n (order 2^n n!),
    kind 'D': -x_2 <= x_1 <= x_2 <= ... <= x_n (order 2^(n-1) n!).
    """

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in CHAMBER_TYPES:
            raise ValueError(f"unknown chamber type {self.kind!r}")
        if self.kind == "B":
            if self.n < 1:
                raise ValueError("type B needs n >= 1")
        elif self.n < 2:
            raise ValueError(f"type {self.kind} needs n >= 2")

    @property
    def group_order(self) -> int:
        if self.kind == "A":
            return math.factorial(self.n)
        if self.kind == "B":
            return 2**self.n * math.factorial(self.n)
        return 2 ** (self.n - 1) * math.factorial(self.n)

    def inequality_normals(self) -> np.ndarray:
        """Rows g with the chamber equal to {x : g @ x >= 0 for all g}."""
        n = self.n
        rows = []
        if self.kind == "B":
            e = np.zeros(n)
            e[0] = 1.0
            rows.append(e)
        if self.kind == "D":
            r = np.zeros(n)
            r[0], r[1] = 1.0, 1.0
            rows.append(r)
            r = np.zeros(n)
            r[0], r[1] = -1.0, 1.0
            rows.append(r)
        start = 2 if self.kind == "D" else 1
        for i in range(start, n):
            r = np.zeros(n)
            r[i - 1], r[i] = -1.0, 1.0
            rows.append(r)
        return np.array(rows)

    def generators(self) -> np.ndarray:
        """Columns spanning the chamber: conic hull of these equals the
        chamber (for type A together with the lineality line)."""
        n = self.n
        cols = []

        def tail(j):
            v = np.zeros(n)
            v[n - j :] = 1.0
            return v

        if self.kind == "B":
            cols = [tail(j) for j in range(1, n + 1)]
        elif self.kind == "A":
            cols = [tail(j) for j in range(1, n)]
        else:
            cols = [tail(j) for j in range(1, n - 1)]
            plus = np.ones(n)
            minus = np.ones(n)
            minus[0] = -1.0
            cols += [plus, minus]
        return np.column_stack(cols)

    def lineality(self) -> np.ndarray | None:
        if self.kind == "A":
            return np.ones(self.n)
        return None


def weyl_intrinsic_volumes(kind: str, n: int) -> IntrinsicVolumeVector:
    """Exact conic intrinsic volumes of the Weyl chamber: the coefficient
    row of the matching reflection group divided by the group order."""
    chamber = WeylChamber(kind, n)
    if kind == "A":
        row = coef.stirling_row(n).coeffs
    elif kind == "B":
        row = coef.b_row(n).coeffs
    else:
        row = coef.d_row(n).coeffs
    order = chamber.group_order
    return IntrinsicVolumeVector(n, tuple(Fraction(c, order) for c in row), exact=True)


def half_tail(v: IntrinsicVolumeVector, k: int) -> HalfTailValue:
    """h_k = v_k + v_{k+2} + ..."""
    if not 0 <= k <= v.n:
        raise ValueError("index out of range")
    return HalfTailValue(k, sum(v.v[k::2]))


def steiner_tail_cdf(v: IntrinsicVolumeVector, lam: float) -> float:
    """P[dist^2(theta, C) <= lam] for theta uniform on the sphere.

    Beta mixture over the intrinsic volumes: conditioned on the projection
    landing on a k-dimensional part, the squared distance splits the unit
    norm as normal-part/(normal+tangent), i.e. Beta((n-k)/2, k/2).  The
    k = n term is the unit step at 0 (points inside the cone stay put) and
    the k = 0 term is the unit step at 1 (points projecting to the apex).
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lambda must lie in [0, 1]")
    n = v.n
    total = float(v.v[n])
    if lam >= 1.0:
        total += float(v.v[0])
    for k in range(1, n):
        if v.v[k] == 0:
            continue
        total += float(v.v[k]) * float(betainc((n - k) / 2.0, k / 2.0, lam))
    return total


def ks_statistic(samples: np.ndarray, cdf) -> float:
    """Kolmogorov-Smirnov distance between an empirical sample and a CDF
    that may carry atoms (the sup is taken over both one-sided limits)."""
    xs = np.sort(np.asarray(samples, dtype=float))
    uniq, first = np.unique(xs, return_index=True)
    counts = np.diff(np.append(first, len(xs)))
    hi = np.cumsum(counts) / len(xs)
    lo = first / len(xs)
    th = np.array([cdf(x) for x in uniq])
    th_left = np.array([cdf(max(x - 1e-12, 0.0)) if x > 0 else 0.0 for x in uniq])
    return float(max(np.abs(th - hi).max(), np.abs(th_left - lo).max()))


def _project_monotone(x: np.ndarray) -> np.ndarray:
    return isotonic_regression(x).x


def project_onto_weyl_chamber(chamber: WeylChamber, x: Sequence[float]) -> tuple[np.ndarray, float]:
    """Euclidean projection onto the closed chamber and squared distance."""
    y = np.asarray(x, dtype=float)
    if y.shape != (chamber.n,):
        raise ValueError("dimension mismatch")
    if chamber.kind == "A":
        p = _project_monotone(y)
    elif chamber.kind == "B":
        # nonnegative isotonic regression: pool first, clamp after
        p = np.maximum(_project_monotone(y), 0.0)
    else:
        p = _dykstra(chamber.inequality_normals(), y)
    return p, float(np.sum((y - p) ** 2))


def _dykstra(normals: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Dykstra's alternating projections onto the chamber half-spaces."""
    rows = [g / np.linalg.norm(g) for g in normals]
    x = y.copy()
    corrections = [np.zeros_like(y) for _ in rows]
    for _ in range(_DYKSTRA_MAX_ITER):
        prev = x.copy()
        for i, g in enumerate(rows):
            z = x + corrections[i]
            viol = float(g @ z)
            proj = z if viol >= 0.0 else z - viol * g
            corrections[i] = z - proj
            x = proj
        if np.max(np.abs(x - prev)) < _DYKSTRA_TOL:
            return x
    raise RuntimeError("Dykstra projection failed to converge")


def crofton_mc_estimate(
    chamber: WeylChamber,
    d: int,
    samples: int,
    seed: int = mc.DEFAULT_SEED,
    threads: int | None = None,
) -> mc.MCEstimate:
    """Monte Carlo estimate of h_{d+1} via random subspace hits.

    h_{d+1} = (1/2) P[C meets a uniform subspace of codimension d outside
    the origin].  The hit test projects the chamber generators onto a
    uniform d-dimensional orthonormal frame (the orthogonal complement of
    the sampled subspace) and asks whether the origin lies in their convex
    hull.
    """
    n = chamber.n
    if not 0 <= d <= n - 1:
        raise ValueError("codimension out of range")
    if d == 0:
        # W = R^n always meets the cone: h_1 = 1/2 exactly
        return mc.MCEstimate(0.5, 0.0, samples, seed, 0.0)
    gens = chamber.generators()
    line = chamber.lineality()
    if line is not None:
        gens = np.column_stack([gens, line, -line])
    band = _CROFTON_BAND * max(1.0, float(np.linalg.norm(gens, axis=0).max()))

    def chunk(rng: np.random.Generator, size: int) -> tuple[int, int]:
        g = rng.standard_normal((size, n, d))
        q, _ = np.linalg.qr(g)
        pts = np.einsum("snd,nm->smd", q, gens)
        inside, amb = hull.batch_origin_in_hull(pts, band)
        return int(inside.sum()), int(amb.sum())

    return mc.run_bernoulli_chunks(samples, seed, chunk, threads=threads, scale=0.5)


def sample_sphere_distances(
    chamber: WeylChamber, samples: int, seed: int = mc.DEFAULT_SEED
) -> np.ndarray:
    """Squared distances to the chamber from uniform points on the sphere."""
    out = np.empty(samples)
    pos = 0
    stream = 0
    while pos < samples:
        size = min(mc.CHUNK, samples - pos)
        rng = mc.stream_rng(seed, stream)
        g = rng.standard_normal((size, chamber.n))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        for i in range(size):
            _, dsq = project_onto_weyl_chamber(chamber, g[i])
            out[pos + i] = dsq
        pos += size
        stream += 1
    return out


def schlafli_expected_volumes(m: int, n: int) -> list[Fraction]:
    """Expected intrinsic volumes of a cone cut by m generic central
    hyperplanes, chosen uniformly among the resulting regions.

    The k >= 1 entries are C(m, n-k)/C(m, n).  The k = 0 entry uses
    C(m-1, n-1)/C(m, n): the constant coefficient of the generic
    characteristic polynomial, which is what makes the vector sum to 1.
    """
    if not m >= n >= 1:
        raise ValueError("need m >= n >= 1")
    total = schlafli_count(m, n)
    out = [Fraction(math.comb(m - 1, n - 1), total)]
    out += [Fraction(math.comb(m, n - k), total) for k in range(1, n + 1)]
    assert sum(out) == 1
    return out


def klivans_swartz_check(kind: str, n: int) -> bool:
    """Group order times chamber volumes equals the characteristic
    coefficients of the mirror arrangement.

    For n <= 4 the right-hand side is recomputed independently through the
    Whitney subset sum; beyond that the closed-form roots are used.
    """
    if n > 6:
        raise ValueError("check supported for n <= 6")
    chamber = WeylChamber(kind, n)
    vols = weyl_intrinsic_volumes(kind, n)
    if n <= 4:
        chi = whitney_characteristic_polynomial(build_reflection_arrangement(kind, n))
    else:
        chi = reflection_characteristic_polynomial(kind, n)
    order = chamber.group_order
    return all(chi.a[k] == order * vols.v[k] for k in range(n + 1))
