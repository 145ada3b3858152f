"""Fixed-point data, equivariant multiplicities and Heckman's cone sum."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .cones import ConeTerm, SignedConeSum, expand_boxes
from .exact import (
    NonGenericError,
    as_vector,
    dot,
    format_fraction,
    integer_solve,
    solve_linear,
    vscale,
)
from .laurent import DEFAULT_EXTRA_TERMS, LaurentSeries, laurent_expand
from .polynomial import Polynomial


class DecompositionError(ValueError):
    """No integer multiplicities reproduce the numerator: the data is inconsistent."""


@dataclass(frozen=True)
class FixedPointDatum:
    """Localization input at one fixed point.

    ``numerator`` is the restriction of the cycle class; for the whole
    space it is the constant 1.  Its slot count is ``rank + 1`` (last slot
    ħ) unless the weights already carry an ħ coordinate.
    """

    label: str
    moment: tuple
    weights: tuple
    numerator: Polynomial | None = None

    def __post_init__(self):
        moment = as_vector(self.moment)
        weights = tuple(as_vector(w) for w in self.weights)
        for w in weights:
            if len(w) != len(moment):
                raise ValueError(f"weight {w} at {self.label} has the wrong rank")
            if not any(w):
                raise ValueError(f"zero weight at fixed point {self.label}")
        num = self.numerator
        if num is None:
            num = Polynomial.constant(len(moment) + 1)
        if num.nvars < len(moment):
            raise ValueError("numerator has fewer slots than the weight rank")
        if num.total_degree() > len(weights):
            raise ValueError(f"numerator at {self.label} has degree above the number of weights")
        object.__setattr__(self, "moment", moment)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "numerator", num)

    @property
    def rank(self) -> int:
        return len(self.moment)

    def forms(self) -> list[Polynomial]:
        return [Polynomial.linear_form(w, self.numerator.nvars) for w in self.weights]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "moment": [format_fraction(c) for c in self.moment],
            "weights": [[format_fraction(c) for c in w] for w in self.weights],
            "numerator": self.numerator.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict, nvars: int | None = None) -> "FixedPointDatum":
        moment = as_vector(data["moment"])
        nvars = len(moment) + 1 if nvars is None else nvars
        num = data.get("numerator")
        poly = Polynomial.from_json(num, nvars) if num is not None else None
        return cls(data["label"], moment, tuple(tuple(w) for w in data["weights"]), poly)


@dataclass
class MultiplicityDecomposition:
    """Integers ``n_S`` with ``sum_S n_S sigma_S prod_{lam not in S} lam = numerator``.

    ``sigma_S`` is the product of the signs of ``<v, lam>`` over ``S``, so
    ``n_S`` are the coefficients in the flipped basis ``1 / prod lam_+``.
    """

    label: str
    direction: tuple
    size: int
    coefficients: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "direction": [format_fraction(c) for c in self.direction],
            "size": self.size,
            "terms": [
                {"subset": [[format_fraction(c) for c in w] for w in s], "n": n}
                for s, n in self.coefficients.items()
            ],
        }


def _sub_multisets(weights: Sequence[tuple], size: int) -> list[tuple[int, ...]]:
    seen = {}
    for idx in combinations(range(len(weights)), size):
        key = tuple(sorted(weights[i] for i in idx))
        seen.setdefault(key, idx)
    return list(seen.values())


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def decompose_multiplicity(
    datum: FixedPointDatum,
    v: Sequence,
    d: int | None = None,
    prefer: Callable[[tuple], object] | None = None,
) -> MultiplicityDecomposition:
    """Write ``numerator / prod lam`` as ``sum_S n_S / prod_{lam in S} lam_+``.

    ``d`` is the size of the subsets S (the cycle dimension); by default it
    is the number of weights minus the numerator's degree.  The solution is
    not unique; the particular one returned is fixed by trying subsets as
    pivots in lexicographic order, or by ``prefer`` (a sort key on the
    subset's weight tuple) when given.
    """
    v = as_vector(v)
    weights = datum.weights
    num = datum.numerator
    if num.is_zero():
        return MultiplicityDecomposition(datum.label, v, d or 0, {})
    if not num.is_homogeneous():
        raise DecompositionError(f"numerator at {datum.label} is not homogeneous")
    if d is None:
        d = len(weights) - num.total_degree()
    if d < 0 or d > len(weights) or len(weights) - d != num.total_degree():
        raise DecompositionError(f"cycle dimension {d} does not match the numerator degree")
    signs = []
    for w in weights:
        p = dot(v, w)
        if p == 0:
            raise NonGenericError(f"direction {tuple(v)} is perpendicular to weight {w} at {datum.label}")
        signs.append(_sign(p))
    forms = datum.forms()
    subsets = _sub_multisets(weights, d)
    if prefer is not None:
        subsets.sort(key=lambda idx: prefer(tuple(weights[i] for i in idx)))
    nvars = num.nvars
    columns = []
    for idx in subsets:
        sigma = 1
        for i in idx:
            sigma *= signs[i]
        rest = [forms[i] for i in range(len(weights)) if i not in idx]
        columns.append(Polynomial.product(rest, nvars) * sigma)
    monomials = sorted({e for c in columns for e in c.terms} | set(num.terms))
    matrix = [[c.terms.get(e, Fraction(0)) for c in columns] for e in monomials]
    rhs = [num.terms.get(e, Fraction(0)) for e in monomials]
    sol = solve_linear(matrix, rhs)
    if sol.kind == "none":
        raise DecompositionError(f"numerator at {datum.label} is not in the span of the weight products")
    x = sol.point
    if any(c.denominator != 1 for c in x):
        x = integer_solve(matrix, rhs)
        if x is None:
            raise DecompositionError(f"no integer multiplicities at {datum.label}")
    coeffs = {}
    check = Polynomial.zero(nvars)
    for idx, col, n in zip(subsets, columns, x):
        n = int(n)
        if n:
            coeffs[tuple(weights[i] for i in idx)] = n
            check = check + col * n
    if check != num:  # pragma: no cover - guarded by the exact solve above
        raise DecompositionError(f"decomposition at {datum.label} does not re-multiply to the numerator")
    return MultiplicityDecomposition(datum.label, v, d, coeffs)


def positive_part(w: tuple, v: Sequence) -> tuple:
    p = dot(v, w)
    if p == 0:
        raise NonGenericError(f"direction {tuple(v)} is perpendicular to weight {w}")
    return w if p > 0 else vscale(-1, w)


def heckman_cone_sum(
    data: Sequence[FixedPointDatum],
    v: Sequence,
    d: int | None = None,
    prefer: Callable[[tuple], object] | None = None,
) -> SignedConeSum:
    """Sum over fixed points f and subsets S of ``n_{f,S} cone(Phi(f), S_+)``."""
    v = as_vector(v)
    if not data:
        raise ValueError("no fixed points")
    rank = data[0].rank
    terms = []
    for datum in data:
        dec = decompose_multiplicity(datum, v, d, prefer)
        for subset, n in dec.coefficients.items():
            rays = tuple(positive_part(w, v) for w in subset)
            terms.append(ConeTerm(n, datum.moment, rays=rays))
    return SignedConeSum(rank, tuple(terms))


def _default_degree(data: Sequence[FixedPointDatum]) -> int:
    orders = []
    for datum in data:
        degs = datum.numerator.degrees()
        if degs:
            orders.append(min(degs) - len(datum.weights))
    return (min(orders) if orders else 0) + DEFAULT_EXTRA_TERMS


def localization_series(data: Sequence[FixedPointDatum], xi0: Sequence, degree: int | None = None) -> LaurentSeries:
    """Laurent expansion of ``sum_f exp(-Phi(f)) [C]|_f / prod lam`` along ``t * xi0``."""
    xi0 = as_vector(xi0)
    if degree is None:
        degree = _default_degree(data)
    total = LaurentSeries.zero(degree)
    for datum in data:
        total = total + laurent_expand(datum.moment, datum.weights, xi0, degree, datum.numerator)
    return total


def cone_sum_series(cone_sum: SignedConeSum, xi0: Sequence, degree: int) -> LaurentSeries:
    """Laurent expansion of the transform of a pointed sum along ``t * xi0``."""
    total = LaurentSeries.zero(degree)
    for t in expand_boxes(cone_sum).terms:
        total = total + laurent_expand(t.apex, t.rays, xi0, degree).scale(t.coefficient)
    return total


@dataclass
class SeriesVerdict:
    passed: bool
    details: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


def holomorphy_check(data: Sequence[FixedPointDatum], directions: Sequence[Sequence], degree: int | None = None) -> SeriesVerdict:
    """Every negative-order coefficient of the localization sum must vanish."""
    verdict = SeriesVerdict(True)
    for xi in directions:
        series = localization_series(data, xi, degree)
        bad = series.negative_part()
        verdict.details.append(
            {
                "xi": [format_fraction(c) for c in as_vector(xi)],
                "order": series.order,
                "offending": {str(k): format_fraction(c) for k, c in bad.items()},
            }
        )
        if bad:
            verdict.passed = False
    return verdict


def moments_match(
    data: Sequence[FixedPointDatum],
    cone_sum: SignedConeSum,
    xi0: Sequence,
    order: int = 4,
) -> SeriesVerdict:
    """Compare localization and cone-sum Laurent coefficients through ``t**order``."""
    loc = localization_series(data, xi0, order)
    cones = cone_sum_series(cone_sum, xi0, order)
    low = min(loc.order, cones.order)
    verdict = SeriesVerdict(True)
    for k in range(low, order + 1):
        a, b = loc.coefficient(k), cones.coefficient(k)
        verdict.details.append({"power": k, "localization": format_fraction(a), "cones": format_fraction(b)})
        if a != b:
            verdict.passed = False
    return verdict
