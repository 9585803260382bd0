"""Origin-in-convex-hull tests.

Two layers: a Wolfe-style min-norm point solver for a single point set in
any dimension (with distance output, so callers can build certificates and
tolerance bands), and fully vectorized batch deciders for d = 1 and d = 2
where hull membership reduces to a sign or circular-gap condition.
"""
from __future__ import annotations

import numpy as np

#: iteration cap for the min-norm solver; hit only on malformed input
_WOLFE_MAX_ITER = 10000


def min_norm_point(points: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    """Min-norm point of conv(points) by Wolfe's algorithm.

    points has shape (m, d).  Returns (x, lam, dist) with x = lam @ points,
    lam a full-length convex coefficient vector and dist = |x|.
    """
    pts = np.asarray(points, dtype=float)
    m, _ = pts.shape
    scale = float(np.max(np.linalg.norm(pts, axis=1))) or 1.0
    eps = 1e-12 * scale * scale
    drop_tol = 1e-14

    def affine_minimizer(idx):
        # min |alpha @ pts[idx]| subject to sum(alpha) = 1, via KKT system
        sub = pts[idx]
        k = len(idx)
        kkt = np.zeros((k + 1, k + 1))
        kkt[:k, :k] = sub @ sub.T
        kkt[k, :k] = 1.0
        kkt[:k, k] = 1.0
        rhs = np.zeros(k + 1)
        rhs[k] = 1.0
        try:
            return np.linalg.solve(kkt, rhs)[:k]
        except np.linalg.LinAlgError:
            return np.linalg.lstsq(kkt, rhs, rcond=None)[0][:k]

    active = [int(np.argmin(np.linalg.norm(pts, axis=1)))]
    lam_a = np.array([1.0])
    for _ in range(_WOLFE_MAX_ITER):
        x = lam_a @ pts[active]
        dots = pts @ x
        j = int(np.argmin(dots))
        if dots[j] >= float(x @ x) - eps or j in active:
            break
        active.append(j)
        lam_a = np.append(lam_a, 0.0)
        for _ in range(_WOLFE_MAX_ITER):
            alpha = affine_minimizer(active)
            if np.all(alpha > drop_tol):
                lam_a = alpha
                break
            # step toward the affine minimizer until a coefficient vanishes
            neg = alpha <= drop_tol
            steps = lam_a[neg] / (lam_a[neg] - alpha[neg])
            theta = min(1.0, float(np.min(steps)))
            lam_a = (1.0 - theta) * lam_a + theta * alpha
            lam_a[neg & (lam_a <= np.finfo(float).eps)] = 0.0
            lowest = int(np.argmin(lam_a))
            lam_a[lowest] = 0.0  # guarantee progress even under degeneracy
            keep = lam_a > 0.0
            active = [a for a, kp in zip(active, keep) if kp]
            lam_a = lam_a[keep]
            if lam_a.sum() <= 0.0:
                lam_a = np.ones(len(active)) / max(len(active), 1)
            else:
                lam_a /= lam_a.sum()
            if len(active) == 1:
                break
    x = lam_a @ pts[active]
    lam = np.zeros(m)
    for a, l in zip(active, lam_a):
        lam[a] += l
    return x, lam, float(np.linalg.norm(x))


def batch_origin_in_hull_1d(
    points: np.ndarray, band: float, closed: bool = False
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized decision for point sets on the line.

    points: (N, m).  Origin is inside iff min <= 0 <= max; samples with an
    endpoint within +-band of zero are flagged ambiguous (open mode) or
    counted as inside (closed mode, for lattice walks where the origin can
    sit on the hull boundary with positive probability).
    """
    lo = points.min(axis=1)
    hi = points.max(axis=1)
    if closed:
        inside = (lo <= band) & (hi >= -band)
        return inside, np.zeros(len(points), dtype=bool)
    inside = (lo < -band) & (hi > band)
    outside = (lo > band) | (hi < -band)
    return inside, ~(inside | outside)


def batch_origin_in_hull_2d(
    points: np.ndarray, band: float, closed: bool = False
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized decision in the plane via the largest circular angle gap.

    points: (N, m, 2).  The origin lies in the hull iff the directions of
    the points leave no open half-plane free, i.e. the largest gap between
    consecutive angles is at most pi.  A gap of exactly pi means the origin
    lies on a segment between two antipodal directions: boundary, so inside
    in closed mode and ambiguous in open mode.
    """
    norms = np.linalg.norm(points, axis=2)
    tiny = norms.min(axis=1) <= band
    ang = np.sort(np.arctan2(points[:, :, 1], points[:, :, 0]), axis=1)
    gaps = np.diff(ang, axis=1)
    wrap = 2.0 * np.pi - (ang[:, -1] - ang[:, 0])
    maxgap = np.maximum(gaps.max(axis=1) if gaps.shape[1] else np.zeros(len(points)), wrap)
    # angular safety margin: a point at distance r moves its angle by about
    # band/r under a band-sized perturbation
    with np.errstate(divide="ignore"):
        angtol = np.where(norms.min(axis=1) > 0, band / np.maximum(norms.min(axis=1), band), np.inf)
    if closed:
        inside = (maxgap <= np.pi + angtol) | tiny
        return inside, np.zeros(len(points), dtype=bool)
    inside = (maxgap < np.pi - angtol) & ~tiny
    outside = (maxgap > np.pi + angtol) & ~tiny
    return inside, ~(inside | outside)


def batch_origin_in_hull(
    points: np.ndarray, band: float, closed: bool = False
) -> tuple[np.ndarray, np.ndarray]:
    """Batch decision dispatching on dimension; loops min_norm_point for d >= 3."""
    d = points.shape[2]
    if d == 1:
        return batch_origin_in_hull_1d(points[:, :, 0], band, closed)
    if d == 2:
        return batch_origin_in_hull_2d(points, band, closed)
    n = len(points)
    inside = np.zeros(n, dtype=bool)
    ambiguous = np.zeros(n, dtype=bool)
    for i in range(n):
        _, _, dist = min_norm_point(points[i])
        if dist <= band:
            inside[i] = True
        elif dist < 100.0 * band and not closed:
            ambiguous[i] = True
    return inside, ambiguous
