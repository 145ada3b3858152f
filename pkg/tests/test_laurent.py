from fractions import Fraction as F

import pytest

from conecalc.exact import NonGenericError
from conecalc.laurent import LaurentSeries, exp_series, laurent_expand
from conecalc.polynomial import Polynomial


def test_pure_pole():
    s = laurent_expand((0,), [(1,), (2,)], (1,), degree=2)
    assert s.valuation() == -2
    assert s.coefficient(-2) == F(1, 2)
    assert all(s.coefficient(k) == 0 for k in range(-1, 3))


def test_shifted_exponential():
    s = laurent_expand((1, 0), [(-1, 0), (-1, 1)], (1, 2), degree=1)
    assert [s.coefficient(k) for k in (-2, -1, 0, 1)] == [-1, 1, F(-1, 2), F(1, 6)]


def test_perpendicular_direction():
    with pytest.raises(NonGenericError):
        laurent_expand((0, 0), [(1, -1)], (1, 1))


def test_numerator_lowers_pole_order():
    # y / (y * 2y) = 1/(2y) along xi = t
    y = Polynomial.variable(2, 0)
    s = laurent_expand((0,), [(1,), (2,)], (1,), degree=0, numerator=y)
    assert s.valuation() == -1
    assert s.coefficient(-1) == F(1, 2)


def test_exp_series():
    s = exp_series(2, 3)
    assert list(s.coeffs) == [1, -2, 2, F(-4, 3)]


def test_arithmetic_and_truncation():
    a = LaurentSeries(-1, (F(1), F(2), F(3)), 1)
    b = exp_series(1, 2)
    prod = a * b
    # (t^-1 + 2 + 3t)(1 - t + t^2/2)
    assert prod.coefficient(-1) == 1
    assert prod.coefficient(0) == 1
    assert prod.coefficient(1) == F(3, 2)
    assert prod.degree == 1
    assert (a - a).valuation() is None
    assert a.truncate(0).degree == 0
    with pytest.raises(ValueError):
        a.truncate(5)
    with pytest.raises(ValueError):
        a.coefficient(2)


def test_negative_part():
    a = LaurentSeries(-2, (F(0), F(5), F(1)), 0)
    assert a.negative_part() == {-1: 5}
