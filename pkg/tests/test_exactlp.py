from fractions import Fraction

import pytest

from weylhull import exactlp


def F(x):
    return Fraction(x)


def test_integer_rank():
    assert exactlp.integer_rank([[1, 2], [2, 4]]) == 1
    assert exactlp.integer_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert exactlp.integer_rank([[0, 0]]) == 0


def test_fraction_rank_and_nullity():
    rows = [[F(1) / 2, F(1) / 3], [F(1), F(2) / 3]]
    assert exactlp.fraction_rank(rows) == 1
    assert exactlp.fraction_nullity(rows, 2) == 1


def test_simplex_known_optimum():
    # max x + y st x <= 2, y <= 3, x + y <= 4
    opt, x = exactlp.simplex_max(
        [F(1), F(1)],
        [[F(1), F(0)], [F(0), F(1)], [F(1), F(1)]],
        [F(2), F(3), F(4)],
    )
    assert opt == 4
    assert sum(x) == 4


def test_simplex_unbounded():
    with pytest.raises(exactlp.UnboundedError):
        exactlp.simplex_max([F(1)], [[F(-1)]], [F(1)])


def test_open_cone_point():
    point = exactlp.open_cone_point([[F(1), F(0)], [F(0), F(1)]], 2)
    assert point is not None and all(x > 0 for x in point)
    assert exactlp.open_cone_point([[F(1)], [F(-1)]], 1) is None


def test_cone_is_nontrivial():
    assert exactlp.cone_is_nontrivial([[F(1), F(0)]], 2)  # half-space
    assert exactlp.cone_is_nontrivial([[F(1), F(0)], [F(-1), F(0)]], 2)  # a line
    quadrant = [[F(1), F(0)], [F(0), F(1)]]
    assert exactlp.cone_is_nontrivial(quadrant, 2)
    # positively spanning normals force the trivial cone
    spanning = [[F(1), F(0)], [F(0), F(1)], [F(-1), F(-1)]]
    assert not exactlp.cone_is_nontrivial(spanning, 2)


def test_origin_hull_position():
    assert exactlp.origin_hull_position([[F(1), F(0)], [F(0), F(1)]], 2) == "outside"
    tri = [[F(1), F(0)], [F(-1), F(1)], [F(-1), F(-1)]]
    assert exactlp.origin_hull_position(tri, 2) == "interior"
    seg = [[F(1), F(0)], [F(-1), F(0)]]
    assert exactlp.origin_hull_position(seg, 2) == "boundary"
    vertex = [[F(0), F(0)], [F(1), F(0)]]
    assert exactlp.origin_hull_position(vertex, 2) == "boundary"


def test_separating_direction_certifies():
    pts = [[F(2), F(1)], [F(1), F(3)], [F(5), F(-1)]]
    u = exactlp.separating_direction(pts, 2)
    assert u is not None
    for p in pts:
        assert sum(a * b for a, b in zip(u, p)) > 0
