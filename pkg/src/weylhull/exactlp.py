"""Exact rational linear algebra and a small simplex solver.

All region, cone and hull oracles in this package reduce to feasibility
questions of the form "maximize a slack margin subject to linear
inequalities".  Solving them over Fraction removes every tolerance question:
an open region either admits margin 1 or margin 0, never 10^-9.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]


class UnboundedError(Exception):
    """The LP objective is unbounded above (a formulation bug here)."""


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(rank + 1, len(m)):
            for j in range(col + 1, ncols):
                m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) // prev
            m[i][col] = 0
        prev = m[rank][col]
        rank += 1
        if rank == len(m):
            break
    return rank


def fraction_rank(rows: Matrix) -> int:
    """Rank of a rational matrix (clears denominators, then Bareiss)."""
    scaled = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        lcm = 1
        for x in fr:
            d = x.denominator
            lcm = lcm * d // _gcd(lcm, d)
        scaled.append([int(x * lcm) for x in fr])
    return integer_rank(scaled)


def fraction_nullity(rows: Matrix, ncols: int) -> int:
    return ncols - fraction_rank(rows)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def simplex_max(c: Sequence[Fraction], a: Matrix, b: Sequence[Fraction]) -> tuple[Fraction, list[Fraction]]:
    """Maximize c.x subject to a.x <= b, x >= 0, with b >= 0.

    Returns (optimum, x).  Uses Bland's rule, so it terminates on any input;
    raises UnboundedError if the objective is unbounded.
    """
    m, n = len(a), len(c)
    if any(bi < 0 for bi in b):
        raise ValueError("simplex_max requires b >= 0")
    # tableau rows: [a | I | b]; objective row keeps reduced costs
    tab = [[Fraction(x) for x in a[i]] + [Fraction(int(i == j)) for j in range(m)] + [Fraction(b[i])]
           for i in range(m)]
    cost = [Fraction(x) for x in c] + [Fraction(0)] * (m + 1)
    basis = list(range(n, n + m))
    while True:
        enter = next((j for j in range(n + m) if cost[j] > 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise UnboundedError("unbounded objective")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, tab[leave])]
        basis[leave] = enter
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = tab[i][-1]
    return -cost[-1], x


def open_cone_point(rows: Matrix, dim: int) -> list[Fraction] | None:
    """A point x with row.x > 0 for every row, or None if none exists.

    Decided by maximizing t subject to row.x >= t, t <= 1: the optimum is 1
    exactly when the open cone is nonempty (scale any strict point), else 0.
    """
    # variables: x+ (dim), x- (dim), t
    a = []
    b = []
    for r in rows:
        a.append([-Fraction(x) for x in r] + [Fraction(x) for x in r] + [Fraction(1)])
        b.append(Fraction(0))
    a.append([Fraction(0)] * (2 * dim) + [Fraction(1)])
    b.append(Fraction(1))
    c = [Fraction(0)] * (2 * dim) + [Fraction(1)]
    opt, x = simplex_max(c, a, b)
    if opt <= 0:
        return None
    return [x[i] - x[dim + i] for i in range(dim)]


def cone_is_nontrivial(rows: Matrix, dim: int) -> bool:
    """Whether {x : row.x >= 0 for all rows} contains a nonzero point."""
    if fraction_nullity(rows, dim) > 0:
        return True
    # kernel trivial: ask for a point with row sums bounded away from zero
    a = []
    b = []
    for r in rows:
        a.append([-Fraction(x) for x in r] + [Fraction(x) for x in r] + [Fraction(0)])
        b.append(Fraction(0))
    total = [sum(Fraction(r[j]) for r in rows) for j in range(dim)]
    a.append([-x for x in total] + [x for x in total] + [Fraction(1)])
    b.append(Fraction(0))
    a.append([Fraction(0)] * (2 * dim) + [Fraction(1)])
    b.append(Fraction(1))
    c = [Fraction(0)] * (2 * dim) + [Fraction(1)]
    opt, _ = simplex_max(c, a, b)
    return opt > 0


def separating_direction(points: Matrix, dim: int) -> list[Fraction] | None:
    """A direction u with u.p >= 1 for every point p, or None.

    Exists exactly when the origin lies outside the closed convex hull.
    """
    return open_cone_point(points, dim)


def origin_hull_position(points: Matrix, dim: int) -> str:
    """'outside', 'boundary' or 'interior' of the closed convex hull."""
    if separating_direction(points, dim) is not None:
        return "outside"
    # origin is in the hull; it sits on the boundary iff some supporting
    # hyperplane through 0 exists, i.e. {u : p.u >= 0 for all p} != {0}
    if cone_is_nontrivial(points, dim):
        return "boundary"
    return "interior"
