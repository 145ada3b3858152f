from fractions import Fraction as F

import pytest

from conecalc.density import density_at
from conecalc.measures import measures_equal
from conecalc.polynomial import Polynomial
from conecalc.toric import (
    DelzantPolytope,
    PolytopeError,
    brianchon_gram_sum,
    csm_of_constructible,
    csm_of_open_orbit,
    face_lattice,
    lattice_count,
    orbit_conormal_class,
    orbit_union_indicator,
    polytope_moments,
    toric_fixed_data,
    zero_section_class,
)
from oracles import triangle_lattice_count

INTERVAL = DelzantPolytope([(0,), (1,)])
TRIANGLE = DelzantPolytope([(0, 0), (1, 0), (0, 1)])
SQUARE = DelzantPolytope([(0, 0), (1, 0), (1, 1), (0, 1)])
TRAPEZOID = DelzantPolytope([(0, 0), (3, 0), (1, 1), (0, 1)])


def y_hbar():
    return Polynomial.variable(2, 0), Polynomial.hbar(2)


@pytest.mark.parametrize("P, count", [(TRIANGLE, 7), (SQUARE, 9), (INTERVAL, 3)])
def test_face_counts(P, count):
    assert len(face_lattice(P)) == count


def test_face_dimensions():
    dims = sorted(f.dim for f in TRIANGLE.faces)
    assert dims == [0, 0, 0, 1, 1, 1, 2]


def test_not_delzant():
    with pytest.raises(PolytopeError):
        DelzantPolytope([(0, 0), (2, 0), (0, 1)])


def test_not_simple():
    with pytest.raises(PolytopeError):
        DelzantPolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (F(1, 2), F(1, 2), 1)])


def test_inconsistent_facets():
    with pytest.raises(PolytopeError):
        DelzantPolytope([(0,), (1,)], facets=[((1,), 0), ((-1,), -2)])


def test_fixed_data_triangle():
    data = {d.moment: set(d.weights) for d in toric_fixed_data(TRIANGLE)}
    assert data == {
        (0, 0): {(1, 0), (0, 1)},
        (1, 0): {(-1, 0), (-1, 1)},
        (0, 1): {(0, -1), (1, -1)},
    }


def test_fixed_data_long_interval():
    data = toric_fixed_data(DelzantPolytope([(0,), (2,)]))
    assert [(d.moment, d.weights) for d in data] == [((0,), ((1,),)), ((2,), ((-1,),))]


def test_fixed_data_square_quadrants():
    data = {d.moment: set(d.weights) for d in toric_fixed_data(SQUARE)}
    assert data[(1, 1)] == {(-1, 0), (0, -1)}
    assert data[(0, 1)] == {(1, 0), (0, -1)}


def test_bg_interval():
    s = brianchon_gram_sum(INTERVAL)
    assert len(s) == 3
    assert sorted(t.coefficient for t in s) == [-1, -1, 1]
    assert density_at(s, (F(3, 7),)) == 1
    assert density_at(s, (F(-3, 7),)) == 0
    assert density_at(s, (F(10, 7),)) == 0


def test_bg_triangle_terms():
    s = brianchon_gram_sum(TRIANGLE)
    assert len(s) == 7
    plane = [t for t in s if len(t.lineality) == 2]
    half_planes = [t for t in s if len(t.lineality) == 1]
    sectors = [t for t in s if not t.lineality]
    assert len(plane) == 1 and plane[0].coefficient == 1
    assert len(half_planes) == 3 and all(t.coefficient == -1 for t in half_planes)
    assert len(sectors) == 3 and all(t.coefficient == 1 for t in sectors)


def test_bg_square_corner():
    assert density_at(brianchon_gram_sum(SQUARE), (F(-1, 2), F(3, 2))) == 0


@pytest.mark.parametrize("P", [TRIANGLE, SQUARE, TRAPEZOID])
def test_bg_vertex_choice(P):
    base = brianchon_gram_sum(P)
    other = brianchon_gram_sum(P, vertex_choice=lambda face: max(face.vertices))
    assert measures_equal(base, other, samples=10).equal


def test_bg_inward_sign():
    s = brianchon_gram_sum(TRIANGLE.negated(), inward=True)
    # (-1)^2 times Lebesgue on the original triangle
    assert density_at(s, (F(1, 7), F(2, 7))) == 1
    assert density_at(s, (F(-1, 7), F(2, 7))) == 0


def test_conormal_classes_interval():
    y, h = y_hbar()
    assert zero_section_class(INTERVAL, 0) == h - y
    assert zero_section_class(INTERVAL, 1) == h + y
    assert orbit_conormal_class(INTERVAL, INTERVAL.face([1]), 1) == -y
    assert orbit_conormal_class(INTERVAL, INTERVAL.face([1]), 0) == 0


def test_conormal_point_is_product_of_weights():
    nv = 3
    x1, x2 = Polynomial.variable(nv, 0), Polynomial.variable(nv, 1)
    # at (1,0) the edges are (-1,0) and (-1,1)
    assert orbit_conormal_class(TRIANGLE, TRIANGLE.face([1]), 1) == (-x1) * (x2 - x1)


def test_open_edge_of_interval():
    _, h = y_hbar()
    csm = csm_of_open_orbit(INTERVAL, INTERVAL.whole)
    assert csm[0] == h
    assert csm[1] == h


@pytest.mark.parametrize("P", [INTERVAL, TRIANGLE, SQUARE, TRAPEZOID])
def test_csm_additivity(P):
    total = {i: Polynomial.zero(P.dim + 1) for i in range(len(P.vertices))}
    for face in P.faces:
        for i, p in csm_of_open_orbit(P, face).items():
            total[i] = total[i] + p
    assert total == {i: zero_section_class(P, i) for i in total}


def test_non_morse_partition():
    # {xyz != 0}, {x = 0, y != 0}, {y = 0, z != 0}, {z = 0, x != 0}
    P = TRIANGLE
    pieces = [
        orbit_union_indicator(P, [(0, 1, 2)]),
        {(1, 2): 1, (2,): -1},
        {(0, 2): 1, (0,): -1},
        {(0, 1): 1, (1,): -1},
    ]
    total = {i: Polynomial.zero(3) for i in range(3)}
    for piece in pieces:
        for i, p in csm_of_constructible(P, piece).items():
            total[i] = total[i] + p
    assert total == {i: zero_section_class(P, i) for i in range(3)}


@pytest.mark.parametrize("d", [1, 2, 5, 10, 20])
def test_lattice_triangle(d):
    r = lattice_count(TRIANGLE, d)
    assert r.count == triangle_lattice_count(d)


def test_lattice_report():
    r = lattice_count(TRIANGLE, 2)
    assert r.count == 6 and r.scaled == F(3, 2)
    r = lattice_count(TRIANGLE, 20)
    assert r.count == 231 and r.error == F(31, 400)
    assert lattice_count(INTERVAL, 7).count == 8
    with pytest.raises(ValueError):
        lattice_count(INTERVAL, 0)


def test_polytope_moments():
    assert polytope_moments(TRIANGLE, (1, 0), 1) == [F(1, 2), F(1, 6)]
    assert polytope_moments(SQUARE, (1, 1), 0) == [1]
    assert polytope_moments(TRAPEZOID, (0, 0), 0) == [2]
