from fractions import Fraction as F

import pytest

from conecalc.exact import (
    as_fraction,
    det,
    format_fraction,
    integer_solve,
    inverse,
    nullspace,
    primitive,
    rank,
    solve_linear,
)


def test_solve_identity():
    sol = solve_linear([[1, 0], [0, 1]], [3, 5])
    assert sol.kind == "unique"
    assert sol.point == (3, 5)


def test_solve_cone_coordinates():
    # columns (1,0) and (-1,1); target (0,1)
    sol = solve_linear([[1, -1], [0, 1]], [0, 1])
    assert sol.kind == "unique"
    assert sol.point == (1, 1)


def test_solve_underdetermined():
    sol = solve_linear([[1, 1]], [2])
    assert sol.kind == "family"
    assert sol.dimension == 1
    (d,) = sol.directions
    assert d[0] + d[1] == 0


def test_solve_inconsistent():
    assert solve_linear([[1, 1], [2, 2]], [1, 3]).kind == "none"


@pytest.mark.parametrize(
    "v, expected",
    [((2, -2), (1, -1)), ((0, 3), (0, 1)), ((-1, 2), (-1, 2))],
)
def test_primitive(v, expected):
    assert primitive(v) == expected


@pytest.mark.parametrize(
    "m, expected",
    [([(1, 0), (0, 1)], 1), ([(1, 0), (-1, 1)], 1), ([(2, -1), (-1, 2)], 3)],
)
def test_det(m, expected):
    assert det(m) == expected


def test_det_row_swap_and_singular():
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[1, 2], [2, 4]]) == 0


def test_inverse_and_rank():
    inv = inverse([[2, 1], [1, 1]])
    assert inv == [[1, -1], [-1, 2]]
    assert rank([[1, 2], [2, 4], [0, 1]]) == 2
    with pytest.raises(ZeroDivisionError):
        inverse([[1, 2], [2, 4]])


def test_nullspace():
    (k,) = nullspace([[1, 1, 1], [0, 1, 2]])
    assert any(k)
    assert k[0] + k[1] + k[2] == 0 and k[1] + 2 * k[2] == 0


def test_integer_solve():
    assert integer_solve([[1, 1], [0, 2]], [3, 4]) == (1, 2)
    assert integer_solve([[2]], [1]) is None


def test_fraction_parsing():
    assert as_fraction("3/6") == F(1, 2)
    assert as_fraction(4) == 4
    assert format_fraction(F(-3, 4)) == "-3/4"
    assert format_fraction(F(2)) == "2"
    with pytest.raises((TypeError, ValueError)):
        as_fraction(0.5)
