from fractions import Fraction as F

from conecalc.exact import dot
from conecalc.lp import feasible_point, half_space_witness


def test_feasible_point_solves_system():
    a = [[1, 1, 0], [0, 1, 1]]
    b = [2, 3]
    x = feasible_point(a, b)
    assert x is not None
    assert all(c >= 0 for c in x)
    assert [dot(row, x) for row in a] == b


def test_infeasible():
    # x + y = -1 with x, y >= 0
    assert feasible_point([[1, 1]], [-1]) is None


def test_negative_rhs_is_normalised():
    x = feasible_point([[-1, 1]], [-2])
    assert x is not None and -x[0] + x[1] == -2


def test_half_space_yes():
    ok, v = half_space_witness([(1, 0), (-1, 1), (0, 1)], 2)
    assert ok
    assert all(dot(v, g) > 0 for g in [(1, 0), (-1, 1), (0, 1)])


def test_half_space_no_with_certificate():
    gens = [(1, 0), (-1, 1), (0, -1)]
    ok, y = half_space_witness(gens, 2)
    assert not ok
    assert all(c >= 0 for c in y) and sum(y) == 1
    assert [sum(w * g[i] for w, g in zip(y, gens)) for i in range(2)] == [0, 0]


def test_opposite_pair():
    ok, y = half_space_witness([(F(1, 2),), (-3,)], 1)
    assert not ok


def test_empty_is_proper():
    assert half_space_witness([], 2)[0]
