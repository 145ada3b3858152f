from fractions import Fraction as F

import pytest

from conecalc.cones import ConeTerm, SignedConeSum
from conecalc.density import SingularTermError, density_at, density_function, regular_density_at
from conecalc.exact import NonGenericError
from conecalc.measures import measures_equal
from conecalc.toric import DelzantPolytope, brianchon_gram_sum

CP2 = SignedConeSum.of(
    [
        ConeTerm(1, (0, 0), rays=((1, 0), (0, 1))),
        ConeTerm(-1, (1, 0), rays=((1, 0), (-1, 1))),
        ConeTerm(1, (0, 1), rays=((0, 1), (-1, 1))),
    ]
)


def one(term):
    return SignedConeSum.of([term])


@pytest.mark.parametrize(
    "x, expected",
    [((F(1, 4), F(1, 4)), 1), ((1, 1), 0), ((F(5, 4), F(1, 4)), 0), ((F(1, 7), F(4, 7)), 1)],
)
def test_cp2_triangle(x, expected):
    assert density_at(CP2, x) == expected


def test_half_density_sector():
    assert density_at(one(ConeTerm(1, (0,), rays=((1,), (2,)))), (F(3, 2),)) == F(3, 4)


def test_unit_box():
    box = one(ConeTerm(1, (0,), boxes=((1,),)))
    assert density_at(box, (F(1, 2),)) == 1
    assert density_at(box, (F(3, 2),)) == 0


def test_lineal_term():
    # a half-plane: R x [0, inf)
    s = one(ConeTerm(3, (0, 0), rays=((0, 1),), lineality=((1, 0),)))
    assert density_at(s, (F(-9, 7), F(1, 7))) == 3
    assert density_at(s, (F(9, 7), F(-1, 7))) == 0


def test_unimodular_normalisation():
    # the sector spanned by (1,0),(1,2) has determinant 2
    s = one(ConeTerm(1, (0, 0), rays=((1, 0), (1, 2))))
    assert density_at(s, (F(3, 7), F(1, 7))) == F(1, 2)


def test_wall_point_raises():
    with pytest.raises(NonGenericError):
        density_at(CP2, (F(1, 2), F(1, 2)))
    with pytest.raises(NonGenericError):
        density_at(CP2, (0, F(1, 3)))


def test_singular_term_raises():
    s = one(ConeTerm(1, (0, 0), rays=((1, 0),)))
    with pytest.raises(SingularTermError):
        density_at(s, (F(1, 3), F(1, 5)))


def test_cancelling_singular_terms_are_fine():
    t = ConeTerm(1, (0, 0), rays=((1, 0),))
    s = SignedConeSum.of([t, t.scaled(-1)] + list(CP2.terms))
    assert density_at(s, (F(1, 4), F(1, 4))) == 1


def test_regular_density_skips_singular_terms():
    s = SignedConeSum.of(list(CP2.terms) + [ConeTerm(5, (0, 0), rays=((1, 1),))])
    assert regular_density_at(s, (F(1, 4), F(1, 7))) == 1
    with pytest.raises(NonGenericError):
        regular_density_at(s, (F(1, 5), F(1, 5)))


def test_density_function_checks_dimension():
    f = density_function(CP2)
    with pytest.raises(ValueError):
        f((1,))


def test_measures_equal_bg_triangle():
    bg = brianchon_gram_sum(DelzantPolytope([(0, 0), (1, 0), (0, 1)]))
    v = measures_equal(CP2, bg, samples=12)
    assert v.equal
    assert len(v.samples) == 12


def test_fourier_equivalent_but_unequal():
    a = one(ConeTerm(1, (0,), rays=((1,),)))
    b = one(ConeTerm(-1, (0,), rays=((-1,),)))
    v = measures_equal(a, b)
    assert not v.equal
    assert v.counterexample["kind"] == "density"


def test_permuted_terms_equal():
    rev = SignedConeSum.of(reversed(CP2.terms))
    assert measures_equal(CP2, rev).equal
