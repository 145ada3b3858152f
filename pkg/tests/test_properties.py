from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from conecalc.cones import ConeTerm, SignedConeSum, difference, expand_boxes, flip_to_direction, fourier_sum
from conecalc.density import density_at
from conecalc.exact import NonGenericError, as_fraction, det, dot, format_fraction, solve_linear
from conecalc.laurent import exp_series
from conecalc.polynomial import Polynomial

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)
small = st.integers(-4, 4)


@st.composite
def polynomials(draw, nvars=3):
    terms = draw(
        st.dictionaries(st.tuples(*[st.integers(0, 3)] * nvars), rationals, max_size=5)
    )
    return Polynomial(nvars, terms)


@st.composite
def square_matrices(draw, n=3):
    return [[draw(small) for _ in range(n)] for _ in range(n)]


@given(polynomials(), polynomials(), polynomials())
def test_ring_laws(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p - p == Polynomial.zero(3)


@given(polynomials(), polynomials(), st.lists(rationals, min_size=3, max_size=3))
def test_evaluation_is_a_ring_map(p, q, pt):
    assert (p * q + p).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt) + p.evaluate(pt)


@given(polynomials())
def test_hbar_zero_is_idempotent(p):
    z = p.set_hbar_zero()
    assert z.hbar_free() and z.set_hbar_zero() == z
    assert (p - z).divisible_by_hbar()


@given(polynomials())
def test_json_round_trip(p):
    assert Polynomial.from_json(p.to_json(), 3) == p


@given(rationals)
def test_rationals_survive_text(q):
    assert as_fraction(format_fraction(q)) == q


@given(square_matrices(), square_matrices())
def test_det_is_multiplicative(a, b):
    ab = [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert det(ab) == det(a) * det(b)


@given(square_matrices(), st.integers(0, 2), st.integers(0, 2))
def test_det_row_swap_flips_sign(a, i, j):
    if i == j:
        return
    b = [list(r) for r in a]
    b[i], b[j] = b[j], b[i]
    assert det(b) == -det(a)


@given(square_matrices(), st.lists(small, min_size=3, max_size=3))
def test_solve_linear_solutions_solve(a, x):
    rhs = [sum(r[k] * x[k] for k in range(3)) for r in a]
    sol = solve_linear(a, rhs)
    assert sol.kind in ("unique", "family")
    for point in [sol.point] + [tuple(p + d for p, d in zip(sol.point, v)) for v in sol.directions]:
        assert [dot(r, point) for r in a] == rhs
    assert (sol.kind == "unique") == (det(a) != 0)


@given(st.integers(0, 6), rationals)
def test_exp_series_inverse(k, a):
    # exp(-at) exp(at) = 1
    prod = exp_series(a, k) * exp_series(-a, k)
    assert prod.coefficient(0) == 1
    assert all(prod.coefficient(j) == 0 for j in range(1, k + 1))


rays2 = st.tuples(small, small).filter(any)


@settings(max_examples=60)
@given(st.lists(rays2, min_size=2, max_size=3), st.tuples(small, small), st.tuples(rationals, rationals))
def test_flip_keeps_transform(rays, v, xi):
    s = SignedConeSum.of([ConeTerm(1, (0, 0), rays=tuple(rays))])
    if any(dot(v, g) == 0 for g in rays) or any(dot(xi, g) == 0 for g in rays):
        return
    assert fourier_sum(flip_to_direction(s, v), xi) == fourier_sum(s, xi)


@settings(max_examples=60)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(0, 2), rationals)
def test_difference_pointwise_rank_one(gens, box_count, x):
    box_count = min(box_count, len(gens) - 1)
    t = ConeTerm(1, (0,), rays=tuple((g,) for g in gens[box_count:]), boxes=tuple((g,) for g in gens[:box_count]))
    s = SignedConeSum.of([t])
    lam = (gens[-1],)
    try:
        lhs = density_at(difference(s, lam), (x,))
        rhs = density_at(s, (x,)) - density_at(s, (x + lam[0],))
    except NonGenericError:
        return
    assert lhs == rhs


@settings(max_examples=60)
@given(st.lists(rays2, min_size=2, max_size=3), st.tuples(rationals, rationals))
def test_expand_boxes_keeps_density(gens, x):
    t = ConeTerm(F(3, 2), (0, 0), rays=(gens[0],), boxes=tuple(gens[1:]))
    s = SignedConeSum.of([t])
    try:
        a, b = density_at(s, x), density_at(expand_boxes(s), x)
    except (NonGenericError, ValueError):
        return
    assert a == b
