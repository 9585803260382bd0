"""Central hyperplane arrangements with exact region combinatorics.

Characteristic polynomials come from Whitney's subset expansion, region
counts from the alternating evaluation at -1, and both are cross-checkable
against a brute-force sign-vector enumeration driven by the exact rational
LP oracle.  Everything is integer or Fraction arithmetic; nothing here
depends on floating point.
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import exactlp
from .coefficients import expand_linear_factors

#: hard cap on the 2^m Whitney subset sum
WHITNEY_CAP = 20
#: hard cap on brute-force region enumeration
ENUMERATION_CAP = 16

REFLECTION_TYPES = ("A", "B", "D")


class CapExceededError(Exception):
    """An exponential brute-force path was asked to exceed its size cap."""


def _normalize_normal(normal: Sequence) -> tuple[int, ...]:
    fr = [Fraction(x) for x in normal]
    if not any(fr):
        raise ValueError("hyperplane normal must be nonzero")
    lcm = 1
    for x in fr:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in fr]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v != 0)
    if first < 0:
        ints = [-v for v in ints]
    return tuple(ints)


@dataclass(frozen=True)
class Hyperplane:
    """A central hyperplane, stored as a canonical primitive integer normal.

    The gcd of the entries is 1 and the first nonzero entry is positive, so
    equal hyperplanes compare equal and sets deduplicate exactly.
    """

    normal: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "normal", _normalize_normal(self.normal))

    @property
    def dim(self) -> int:
        return len(self.normal)


@dataclass(frozen=True)
class Arrangement:
    ambient_dim: int
    hyperplanes: tuple[Hyperplane, ...]

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("ambient_dim must be >= 1")
        hs = tuple(self.hyperplanes)
        if len(set(hs)) != len(hs):
            raise ValueError("duplicate hyperplanes")
        for h in hs:
            if h.dim != self.ambient_dim:
                raise ValueError("hyperplane dimension mismatch")
        object.__setattr__(self, "hyperplanes", hs)

    @property
    def size(self) -> int:
        return len(self.hyperplanes)


@dataclass(frozen=True)
class CharacteristicPolynomial:
    """chi(t) = sum_k (-1)^(n-k) a_k t^k with unsigned coefficients a_k >= 0.

    For a nonempty central arrangement chi(1) = 0, i.e. the even-index and
    odd-index coefficient sums agree (the arrangement has no bounded
    regions).
    """

    ambient_dim: int
    a: tuple[int, ...]

    def __post_init__(self):
        n = self.ambient_dim
        a = tuple(int(x) for x in self.a)
        if len(a) != n + 1:
            raise ValueError("need n + 1 coefficients")
        if a[n] != 1:
            raise ValueError("leading coefficient must be 1")
        if any(x < 0 for x in a):
            raise ValueError("coefficients must be nonnegative")
        if n >= 1 and a[n - 1] > 0:
            if sum(a[0::2]) != sum(a[1::2]):
                raise ValueError("even/odd coefficient sums differ")
        object.__setattr__(self, "a", a)

    @property
    def num_hyperplanes(self) -> int:
        return self.a[self.ambient_dim - 1] if self.ambient_dim >= 1 else 0

    def __call__(self, t):
        n = self.ambient_dim
        return sum((-1) ** (n - k) * self.a[k] * t**k for k in range(n + 1))


@dataclass(frozen=True)
class Subspace:
    """A linear subspace given by an exact rational basis (columns)."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]  # each entry one basis vector

    def __post_init__(self):
        vecs = tuple(tuple(Fraction(x) for x in v) for v in self.basis)
        if not vecs or any(len(v) != self.ambient_dim for v in vecs):
            raise ValueError("basis vectors must match ambient dimension")
        if exactlp.fraction_rank(vecs) != len(vecs):
            raise ValueError("basis is linearly dependent")
        object.__setattr__(self, "basis", vecs)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    @classmethod
    def from_float_basis(cls, vectors: Iterable[Sequence[float]], ambient_dim: int) -> "Subspace":
        # floats are dyadic rationals, so this conversion is exact
        return cls(ambient_dim, tuple(tuple(Fraction(float(x)) for x in v) for v in vectors))


def build_reflection_arrangement(kind: str, n: int) -> Arrangement:
    """Mirror arrangement of the reflection group A_{n-1}, B_n or D_n in R^n."""
    if kind not in REFLECTION_TYPES:
        raise ValueError(f"unknown reflection type {kind!r}")
    if kind == "B":
        if n < 1:
            raise ValueError("type B needs n >= 1")
    elif n < 2:
        raise ValueError(f"type {kind} needs n >= 2")
    normals: list[tuple[int, ...]] = []

    def unit(i, s=1):
        v = [0] * n
        v[i] = s
        return v

    if kind == "B":
        normals += [unit(i) for i in range(n)]
    if kind in ("A", "B", "D"):
        for i, j in itertools.combinations(range(n), 2):
            v = [0] * n
            v[i], v[j] = 1, -1
            normals.append(v)
    if kind in ("B", "D"):
        for i, j in itertools.combinations(range(n), 2):
            v = [0] * n
            v[i], v[j] = 1, 1
            normals.append(v)
    return Arrangement(n, tuple(Hyperplane(tuple(v)) for v in normals))


def whitney_characteristic_polynomial(arr: Arrangement) -> CharacteristicPolynomial:
    """Characteristic polynomial by the signed sum over normal subsets.

    chi(t) = sum over subsets S of (-1)^#S t^(n - rank S); ranks accumulate
    incrementally along an include/exclude recursion over one shared echelon.
    """
    if arr.size > WHITNEY_CAP:
        raise CapExceededError(f"Whitney sum capped at {WHITNEY_CAP} hyperplanes")
    n = arr.ambient_dim
    normals = [tuple(Fraction(x) for x in h.normal) for h in arr.hyperplanes]
    signed = [0] * (n + 1)  # signed[r] = sum of (-1)^#S over subsets of rank r

    def reduce_vector(echelon, v):
        v = list(v)
        for pivot_col, row in echelon:
            if v[pivot_col] != 0:
                f = v[pivot_col] / row[pivot_col]
                v = [x - f * y for x, y in zip(v, row)]
        for col, x in enumerate(v):
            if x != 0:
                return col, tuple(v)
        return None

    def rec(i, echelon, size_sign):
        if i == len(normals):
            signed[len(echelon)] += size_sign
            return
        rec(i + 1, echelon, size_sign)
        step = reduce_vector(echelon, normals[i])
        if step is None:
            # dependent normal: rank unchanged, only the sign alternates
            rec(i + 1, echelon, -size_sign)
        else:
            rec(i + 1, echelon + [step], -size_sign)

    rec(0, [], 1)
    a = []
    for k in range(n + 1):
        coeff = signed[n - k]
        if (-1) ** (n - k) * coeff < 0:
            raise AssertionError("characteristic coefficient with unexpected sign")
        a.append(abs(coeff))
    return CharacteristicPolynomial(n, tuple(a))


def reflection_characteristic_polynomial(kind: str, n: int) -> CharacteristicPolynomial:
    """Closed-form characteristic polynomial of a reflection arrangement."""
    if kind == "A":
        if n < 2:
            raise ValueError("type A needs n >= 2")
        roots = list(range(n))
    elif kind == "B":
        if n < 1:
            raise ValueError("type B needs n >= 1")
        roots = list(range(1, 2 * n, 2))
    elif kind == "D":
        if n < 2:
            raise ValueError("type D needs n >= 2")
        roots = list(range(1, 2 * n - 2, 2)) + [n - 1]
    else:
        raise ValueError(f"unknown reflection type {kind!r}")
    return CharacteristicPolynomial(n, expand_linear_factors(roots).coeffs)


def zaslavsky_region_count(chi: CharacteristicPolynomial) -> int:
    """Number of open regions: (-1)^n chi(-1) = sum of the a_k."""
    return sum(chi.a)


def restrict_characteristic_polynomial(chi: CharacteristicPolynomial, d: int) -> CharacteristicPolynomial:
    """Characteristic polynomial of the induced arrangement on a generic
    subspace of codimension d: low coefficients collapse into the constant
    term, the rest shift down by d."""
    n = chi.ambient_dim
    if not 1 <= d <= n - 1:
        raise ValueError("codimension out of range")
    constant = abs(sum((-1) ** (n - k) * chi.a[k] for k in range(d + 1)))
    a = (constant,) + chi.a[d + 1 :]
    return CharacteristicPolynomial(n - d, a)


def intersected_region_count(chi: CharacteristicPolynomial, d: int) -> int:
    """Number of regions met by a generic subspace of codimension d."""
    n = chi.ambient_dim
    if not 0 <= d <= n - 1:
        raise ValueError("codimension out of range")
    if d == 0:
        return zaslavsky_region_count(chi)
    return 2 * sum(chi.a[k] for k in range(d + 1, n + 1, 2))


def schlafli_count(m: int, n: int) -> int:
    """Regions cut from R^n by m central hyperplanes in general position."""
    if not m >= n >= 1:
        raise ValueError("need m >= n >= 1")
    return 2 * sum(math.comb(m - 1, k) for k in range(n))


def generic_coefficients(m: int, n: int) -> CharacteristicPolynomial:
    """Characteristic polynomial of m generic central hyperplanes in R^n."""
    if not m >= n >= 1:
        raise ValueError("need m >= n >= 1")
    a = [math.comb(m - 1, n - 1)] + [math.comb(m, n - k) for k in range(1, n + 1)]
    return CharacteristicPolynomial(n, tuple(a))


@lru_cache(maxsize=64)
def enumerate_regions(arr: Arrangement) -> frozenset[tuple[int, ...]]:
    """All sign vectors of nonempty open regions, by incremental splitting.

    A witness interior point is carried per region, so adding a hyperplane
    costs one exact LP only for the sign the witness does not certify.
    Results are cached per arrangement; subspace counting reuses them.
    """
    if arr.size > ENUMERATION_CAP:
        raise CapExceededError(f"region enumeration capped at {ENUMERATION_CAP}")
    n = arr.ambient_dim
    if arr.size == 0:
        return frozenset({()})
    normals = [tuple(Fraction(x) for x in h.normal) for h in arr.hyperplanes]
    first = normals[0]
    regions: list[tuple[tuple[int, ...], tuple[Fraction, ...]]] = [
        ((1,), first),
        ((-1,), tuple(-x for x in first)),
    ]
    for idx in range(1, len(normals)):
        h = normals[idx]
        new_regions = []
        for sigma, w in regions:
            val = sum(a * b for a, b in zip(h, w))
            known = [1 if val > 0 else -1] if val != 0 else []
            for s in known:
                new_regions.append((sigma + (s,), w))
            for s in (1, -1) if not known else ([-known[0]]):
                rows = [tuple(si * x for x in nv) for si, nv in zip(sigma, normals)]
                rows.append(tuple(s * x for x in h))
                point = exactlp.open_cone_point(rows, n)
                if point is not None:
                    new_regions.append((sigma + (s,), tuple(point)))
        regions = new_regions
    return frozenset(sigma for sigma, _ in regions)


@dataclass(frozen=True)
class SubspaceMeetCount:
    count: int
    general_position: bool
    mode: str


def is_general_position(arr: Arrangement, sub: Subspace) -> bool:
    """Every flat of the arrangement meets the subspace with the expected
    dimension.  Checking subsets of at most n normals suffices, since the
    condition depends only on the span of the chosen normals."""
    n = arr.ambient_dim
    normals = [tuple(Fraction(x) for x in h.normal) for h in arr.hyperplanes]
    projected = [
        tuple(sum(h[i] * b[i] for i in range(n)) for b in sub.basis) for h in normals
    ]
    for size in range(1, min(len(normals), n) + 1):
        for subset in itertools.combinations(range(len(normals)), size):
            r = exactlp.fraction_rank([normals[i] for i in subset])
            rp = exactlp.fraction_rank([projected[i] for i in subset])
            if rp != min(r, sub.dim):
                return False
    return True


def count_regions_meeting_subspace(
    arr: Arrangement, sub: Subspace, mode: str = "open"
) -> SubspaceMeetCount:
    """Count regions R with R cap L nonempty (open mode) or with closure
    meeting L outside the origin (closed mode), by exact LP per region."""
    if mode not in ("open", "closed"):
        raise ValueError("mode must be 'open' or 'closed'")
    if sub.ambient_dim != arr.ambient_dim:
        raise ValueError("dimension mismatch")
    if not 1 <= sub.codim <= arr.ambient_dim - 1:
        raise ValueError("subspace codimension out of range")
    n = arr.ambient_dim
    normals = [tuple(Fraction(x) for x in h.normal) for h in arr.hyperplanes]
    projected = [
        tuple(sum(h[i] * b[i] for i in range(n)) for b in sub.basis) for h in normals
    ]
    count = 0
    for sigma in enumerate_regions(arr):
        rows = [tuple(s * x for x in p) for s, p in zip(sigma, projected)]
        if mode == "open":
            hit = exactlp.open_cone_point(rows, sub.dim) is not None
        else:
            hit = exactlp.cone_is_nontrivial(rows, sub.dim)
        count += hit
    return SubspaceMeetCount(count, is_general_position(arr, sub), mode)


def induced_arrangement(arr: Arrangement, sub: Subspace) -> Arrangement:
    """The trace arrangement on the subspace, in basis coordinates.

    Hyperplanes containing the subspace drop out; coincident traces merge
    through normal canonicalization.
    """
    n = arr.ambient_dim
    seen = set()
    for h in arr.hyperplanes:
        row = tuple(sum(Fraction(h.normal[i]) * b[i] for i in range(n)) for b in sub.basis)
        if any(row):
            seen.add(Hyperplane(row))
    return Arrangement(sub.dim, tuple(sorted(seen, key=lambda h: h.normal)))


def parse_arrangement(text: str) -> Arrangement:
    """Read the text format: 'dim n' then one integer normal per line."""
    dim = None
    normals = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if dim is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise ValueError(f"line {lineno}: expected 'dim n'")
            dim = int(parts[1])
            continue
        entries = [int(tok) for tok in line.split()]
        if len(entries) != dim:
            raise ValueError(f"line {lineno}: expected {dim} integers")
        normals.append(Hyperplane(tuple(entries)))
    if dim is None:
        raise ValueError("missing 'dim n' header")
    return Arrangement(dim, tuple(normals))


def format_arrangement(arr: Arrangement) -> str:
    lines = [f"dim {arr.ambient_dim}"]
    lines += [" ".join(str(x) for x in h.normal) for h in arr.hyperplanes]
    return "\n".join(lines) + "\n"
