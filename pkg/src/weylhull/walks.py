"""Walk and bridge sampling, hull membership with certificates, Monte Carlo
absorption estimates, and the per-sample kernel-chamber count.

The sampling models are chosen to exercise the distribution-free claim: the
exact absorption probabilities depend only on (symmetry type, n, d), so
Gaussian, spherical and heavy-tailed walks must all land on the same value,
while the simple lattice walk deliberately breaks general position and only
obeys a one-sided bound.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exactlp, hull, mc
from .absorption import WalkFamily, absorption_probability

MODEL_FAMILIES = ("gaussian", "uniform-sphere", "heavy-tail", "lattice-simple", "matrix")

#: default hull-membership tolerance band
DEFAULT_TOL = 1e-10

#: singular values below this fraction of the largest count as zero
_RANK_RTOL = 1e-10

#: chamber enumeration cap: 2^n n! grows too fast beyond this
CHAMBER_N_CAP = 6


@dataclass(frozen=True)
class IncrementModel:
    """An increment distribution: model family plus ambient dimension.

    'matrix' wraps a fixed user-supplied d x n increment matrix (stored as a
    nested tuple so the model stays hashable).
    """

    family: str
    dimension: int
    matrix: tuple | None = None

    def __post_init__(self):
        if self.family not in MODEL_FAMILIES:
            raise ValueError(f"unknown increment model {self.family!r}")
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.family == "matrix":
            if self.matrix is None:
                raise ValueError("matrix model needs the matrix")
            arr = np.asarray(self.matrix, dtype=float)
            if arr.ndim != 2 or arr.shape[0] != self.dimension:
                raise ValueError("matrix must be d x n")
        elif self.matrix is not None:
            raise ValueError("matrix only valid for the matrix model")

    @property
    def continuous(self) -> bool:
        return self.family in ("gaussian", "uniform-sphere", "heavy-tail")


def _draw_batch(model: IncrementModel, rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    """(count, n, d) array of i.i.d. increment rows."""
    d = model.dimension
    if model.family == "gaussian":
        return rng.standard_normal((count, n, d))
    if model.family == "uniform-sphere":
        g = rng.standard_normal((count, n, d))
        return g / np.linalg.norm(g, axis=2, keepdims=True)
    if model.family == "heavy-tail":
        # componentwise standard Cauchy: symmetric, no finite moments
        return rng.standard_cauchy((count, n, d))
    if model.family == "lattice-simple":
        axis = rng.integers(0, d, size=(count, n))
        sign = rng.integers(0, 2, size=(count, n)) * 2 - 1
        out = np.zeros((count, n, d))
        np.put_along_axis(out, axis[:, :, None], sign[:, :, None].astype(float), axis=2)
        return out
    arr = np.asarray(model.matrix, dtype=float)
    if arr.shape[1] != n:
        raise ValueError(f"matrix model has {arr.shape[1]} steps, asked for {n}")
    return np.broadcast_to(arr.T, (count, n, d)).copy()


def sample_increments(model: IncrementModel, n: int, seed: int = mc.DEFAULT_SEED) -> np.ndarray:
    """One d x n increment matrix, deterministic in (model, n, seed)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _draw_batch(model, mc.stream_rng(seed, 0), 1, n)[0].T


def make_bridge(increments: np.ndarray) -> np.ndarray:
    """Center the columns so they sum to the zero vector exactly.

    Centering an exchangeable sample keeps it exchangeable, which is all the
    bridge absorption formula needs; for non-Gaussian models the result is a
    residual bridge rather than a conditioned one.
    """
    inc = np.asarray(increments, dtype=float)
    if inc.ndim != 2:
        raise ValueError("increments must be a d x n matrix")
    out = inc - inc.mean(axis=1, keepdims=True)
    # second pass removes the O(eps) residual of the first
    out -= out.mean(axis=1, keepdims=True)
    return out


@dataclass(frozen=True)
class HullMembership:
    """Origin-in-hull verdict with a checkable certificate.

    inside carries convex coefficients lam (sum 1, nonnegative, with
    lam @ points within the tolerance of 0); outside carries a unit vector u
    with min_i <u, S_i> > 0.  boundary_ambiguous flags distances inside the
    (tol, 100 tol) band, where neither certificate is trustworthy.
    """

    inside: bool
    certificate_kind: str  # "convex" or "separator"
    certificate: np.ndarray
    boundary_ambiguous: bool
    distance: float


def _is_integral(pts: np.ndarray) -> bool:
    return bool(np.all(pts == np.round(pts)) and np.all(np.abs(pts) < 2**52))


def origin_in_hull(points, tol: float = DEFAULT_TOL) -> HullMembership:
    """Membership of the origin in the convex hull of the given points.

    Numeric path: Wolfe min-norm point, inside iff distance <= tol.  Integer
    inputs take an exact rational LP path instead, so lattice walks get
    boundary cases right (closed-hull semantics, never ambiguous).
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.size == 0:
        raise ValueError("need at least one point")
    if tol <= 0:
        raise ValueError("tol must be positive")
    m, d = pts.shape
    if _is_integral(pts):
        rows = [[Fraction(int(x)) for x in p] for p in pts]
        position = exactlp.origin_hull_position(rows, d)
        if position == "outside":
            u = np.array([float(x) for x in exactlp.separating_direction(rows, d)])
            u /= np.linalg.norm(u)
            return HullMembership(False, "separator", u, False, float("nan"))
        _, lam, _ = hull.min_norm_point(pts)
        return HullMembership(True, "convex", lam, False, 0.0)
    x, lam, dist = hull.min_norm_point(pts)
    if dist <= tol:
        return HullMembership(True, "convex", lam, False, dist)
    u = x / dist
    return HullMembership(False, "separator", u, tol < dist < 100.0 * tol, dist)


def _point_sets(family: WalkFamily, inc: np.ndarray) -> np.ndarray:
    """Hull point sets (count, m, d) from increment batches (count, n, d)."""
    kind = family.kind
    if kind == "bridge-A":
        centered = inc - inc.mean(axis=1, keepdims=True)
        s = np.cumsum(centered, axis=1)
        return s[:, :-1, :]  # the final sum is 0 by construction
    if kind == "walk-B":
        return np.cumsum(inc, axis=1)
    if kind == "walk-D":
        s = np.cumsum(inc, axis=1)
        star = s[:, -2, :] - inc[:, -1, :]
        return np.concatenate([s, star[:, None, :]], axis=1)
    # joint-B / wendel: independent walks, pooled hull points
    pieces = []
    start = 0
    for ni in family.ns:
        pieces.append(np.cumsum(inc[:, start : start + ni, :], axis=1))
        start += ni
    return np.concatenate(pieces, axis=1)


def estimate_absorption(
    model: IncrementModel,
    family: WalkFamily,
    samples: int,
    seed: int = mc.DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
    threads: int | None = None,
) -> mc.MCEstimate:
    """Monte Carlo absorption probability P[0 in hull of the walk points].

    Lattice models use closed-hull semantics (the origin can land on the
    boundary with positive probability); continuous models use the open
    decision with the ambiguity band reported in the estimate.
    """
    if model.dimension != family.dimension:
        raise ValueError("model and family dimensions differ")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if family.kind == "bridge-A" and model.family == "lattice-simple":
        raise ValueError("lattice-simple is not closed under exact centering")
    n = family.n_total
    closed = not model.continuous

    def chunk(rng: np.random.Generator, size: int) -> tuple[int, int]:
        pts = _point_sets(family, _draw_batch(model, rng, size, n))
        # hull membership is scale-invariant: normalize per sample so the
        # band is relative (heavy-tail samples span many orders of magnitude)
        scale = np.linalg.norm(pts, axis=2).max(axis=1, keepdims=True)
        pts = pts / np.maximum(scale, 1e-300)[:, :, None]
        inside, amb = hull.batch_origin_in_hull(pts, tol, closed=closed)
        return int(inside.sum()), int(amb.sum())

    return mc.run_bernoulli_chunks(samples, seed, chunk, threads=threads)


def exact_reference(family: WalkFamily) -> Fraction:
    """The exact absorption probability the estimator is aiming at."""
    return absorption_probability(family).absorb


def _signed_permutation_matrices(group: str, n: int):
    """All elements of the reflection group as n x n matrices."""
    for perm in itertools.permutations(range(n)):
        p = np.zeros((n, n))
        for i, j in enumerate(perm):
            p[i, j] = 1.0
        if group == "A":
            yield p
            continue
        for signs in itertools.product((1.0, -1.0), repeat=n):
            if group == "D" and np.prod(signs) < 0:
                continue
            yield np.array(signs)[:, None] * p


def _chamber_normals(group: str, n: int) -> np.ndarray:
    from .cones import WeylChamber

    return WeylChamber(group, n).inequality_normals()


def _float_nullspace(rows: np.ndarray, rtol: float = _RANK_RTOL) -> np.ndarray:
    _, sv, vt = np.linalg.svd(rows)
    rank = int(np.sum(sv > rtol * sv[0])) if sv.size else 0
    return vt[rank:].T


def _rational_nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the kernel by rational row reduction."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for c in free:
        v = [Fraction(0)] * ncols
        v[c] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][c]
        basis.append(v)
    return basis


def chamber_intersection_count(increments: np.ndarray, group: str) -> int:
    """Number of closed group chambers meeting Ker(increments) nontrivially.

    For generic increments this count is deterministic: it equals the number
    of arrangement regions met by a generic subspace of the kernel's
    dimension, which is the per-sample mechanism behind the exact absorption
    formulas.  Group A expects bridged increments (columns summing to zero)
    and counts chambers modulo the common diagonal line.
    """
    inc = np.asarray(increments, dtype=float)
    if inc.ndim != 2:
        raise ValueError("increments must be a d x n matrix")
    d, n = inc.shape
    if n > CHAMBER_N_CAP:
        raise ValueError(f"chamber enumeration capped at n <= {CHAMBER_N_CAP}")
    if group not in ("A", "B", "D"):
        raise ValueError(f"unknown group {group!r}")
    if group == "A":
        if np.max(np.abs(inc.sum(axis=1))) > 1e-9 * max(1.0, np.abs(inc).max()):
            raise ValueError("group A needs bridged increments (zero column sums)")
        if n < 2 or d > n - 1:
            raise ValueError("group A needs d <= n - 1")
    elif d > n:
        raise ValueError("need d <= n")
    normals = _chamber_normals(group, n)
    exact = _is_integral(inc)
    if group == "A":
        stacked = np.vstack([inc, np.ones(n)])
    else:
        stacked = inc
    if exact:
        rows = [[Fraction(int(round(x))) for x in r] for r in stacked]
        kernel = _rational_nullspace(rows, n)
        if not kernel:
            return 0
        count = 0
        for g in _signed_permutation_matrices(group, n):
            gn = normals @ g
            m_rows = [
                [sum(Fraction(int(round(gn[i, j]))) * kernel[b][j] for j in range(n))
                 for b in range(len(kernel))]
                for i in range(len(gn))
            ]
            if exactlp.cone_is_nontrivial(m_rows, len(kernel)):
                count += 1
        return count
    sv = np.linalg.svd(stacked, compute_uv=False)
    expected_rank = d + (1 if group == "A" else 0)
    if int(np.sum(sv > _RANK_RTOL * sv[0])) != min(expected_rank, n):
        raise ValueError("rank-deficient increments: general position violated")
    kernel = _float_nullspace(stacked)
    k = kernel.shape[1]
    if k == 0:
        return 0
    mats = np.stack([normals @ g @ kernel for g in _signed_permutation_matrices(group, n)])
    scale = np.linalg.norm(mats, axis=2).max(axis=1)
    mats = mats / np.maximum(scale, 1e-300)[:, None, None]
    # the restricted cone is trivial exactly when the restricted normals
    # positively span the kernel, i.e. 0 is interior to their convex hull
    inside, amb = hull.batch_origin_in_hull(mats, 1e-9)
    if amb.any():
        resolved = 0
        for i in np.flatnonzero(amb):
            rows = [[Fraction(float(x)) for x in r] for r in mats[i]]
            if exactlp.cone_is_nontrivial(rows, k):
                resolved += 1
        return int(len(mats) - inside.sum() - amb.sum() + resolved)
    return int(len(mats) - inside.sum())
