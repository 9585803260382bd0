import random
from fractions import Fraction

import numpy as np
import pytest

from weylhull import arrangements as arr_mod


def _reflection(kind, n):
    return arr_mod.build_reflection_arrangement(kind, n)


def test_charpoly_closed_forms():
    for kind, n, expect in [
        ("A", 3, (0, 2, 3, 1)),
        ("B", 3, (15, 23, 9, 1)),
        ("D", 4, (45, 84, 50, 12, 1)),
    ]:
        chi = arr_mod.whitney_characteristic_polynomial(_reflection(kind, n))
        assert chi.a == expect
        assert chi.a == arr_mod.reflection_characteristic_polynomial(kind, n).a


def test_zaslavsky_matches_enumeration():
    for kind, n in [("A", 3), ("B", 2), ("B", 3), ("D", 3)]:
        arr = _reflection(kind, n)
        chi = arr_mod.whitney_characteristic_polynomial(arr)
        assert arr_mod.zaslavsky_region_count(chi) == len(arr_mod.enumerate_regions(arr))


def test_zaslavsky_random_arrangements():
    rng = random.Random(11)
    for _ in range(10):
        n = rng.randint(1, 3)
        normals = set()
        while len(normals) < rng.randint(1, 6):
            v = tuple(rng.randint(-2, 2) for _ in range(n))
            if any(v):
                normals.add(arr_mod.Hyperplane(v))
        arr = arr_mod.Arrangement(n, tuple(sorted(normals, key=lambda h: h.normal)))
        chi = arr_mod.whitney_characteristic_polynomial(arr)
        assert arr_mod.zaslavsky_region_count(chi) == len(arr_mod.enumerate_regions(arr))


def test_hyperplane_normal_canonicalized():
    assert arr_mod.Hyperplane((-2, 4)).normal == arr_mod.Hyperplane((1, -2)).normal


def test_charpoly_evaluation_and_parity():
    chi = arr_mod.reflection_characteristic_polynomial("B", 3)
    # chi(t) = (t-1)(t-3)(t-5)
    assert chi(7) == 6 * 4 * 2
    assert chi(1) == 0


def test_restriction_shifts_coefficients():
    chi = arr_mod.reflection_characteristic_polynomial("B", 4)
    res = arr_mod.restrict_characteristic_polynomial(chi, 1)
    assert res.a[1:] == chi.a[2:]
    assert sum(res.a) == arr_mod.intersected_region_count(chi, 1)


def test_intersected_region_count_values():
    chi = arr_mod.reflection_characteristic_polynomial("B", 3)
    assert arr_mod.intersected_region_count(chi, 0) == 48
    assert arr_mod.intersected_region_count(chi, 1) == 2 * chi.a[2]
    assert arr_mod.intersected_region_count(chi, 2) == 2 * chi.a[3]


def test_schlafli_and_generic_coefficients():
    assert arr_mod.schlafli_count(3, 2) == 6
    assert arr_mod.schlafli_count(5, 3) == 2 * (1 + 4 + 6)
    chi = arr_mod.generic_coefficients(5, 3)
    assert sum(chi.a) == arr_mod.schlafli_count(5, 3)
    assert chi.a[-1] == 1


def test_induced_matches_restriction():
    arr = _reflection("B", 3)
    chi = arr_mod.reflection_characteristic_polynomial("B", 3)
    rng = np.random.default_rng(2)
    basis = rng.standard_normal((2, 3))
    rows = tuple(
        tuple(Fraction(float(x)).limit_denominator(500) for x in b) for b in basis
    )
    sub = arr_mod.Subspace(3, rows)
    induced = arr_mod.induced_arrangement(arr, sub)
    got = arr_mod.whitney_characteristic_polynomial(induced)
    assert got.a == arr_mod.restrict_characteristic_polynomial(chi, 1).a


def test_count_regions_meeting_subspace_closed_mode():
    arr = _reflection("B", 2)
    sub = arr_mod.Subspace(2, ((Fraction(2), Fraction(1)),))
    open_count = arr_mod.count_regions_meeting_subspace(arr, sub, mode="open")
    closed_count = arr_mod.count_regions_meeting_subspace(arr, sub, mode="closed")
    assert open_count.count == 2
    assert closed_count.count >= open_count.count


def test_general_position_detection():
    arr = _reflection("B", 2)
    generic = arr_mod.Subspace(2, ((Fraction(2), Fraction(1)),))
    degenerate = arr_mod.Subspace(2, ((Fraction(1), Fraction(1)),))  # inside a mirror
    assert arr_mod.is_general_position(arr, generic)
    assert not arr_mod.is_general_position(arr, degenerate)


def test_parse_format_round_trip():
    arr = _reflection("D", 3)
    text = arr_mod.format_arrangement(arr)
    assert arr_mod.parse_arrangement(text) == arr


def test_parse_rejects_bad_input():
    with pytest.raises(ValueError):
        arr_mod.parse_arrangement("1 2 3\n")
    with pytest.raises(ValueError):
        arr_mod.parse_arrangement("dim 2\n1 2 3\n")


def test_caps_enforced():
    big = _reflection("B", 5)  # 25 hyperplanes
    with pytest.raises(arr_mod.CapExceededError):
        arr_mod.whitney_characteristic_polynomial(big)
    with pytest.raises(arr_mod.CapExceededError):
        arr_mod.enumerate_regions(big)


def test_characteristic_polynomial_validation():
    with pytest.raises(ValueError):
        arr_mod.CharacteristicPolynomial(2, (1, 1, 2))  # not monic
