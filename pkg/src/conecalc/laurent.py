"""One-variable Laurent series with exact coefficients.

Used to expand localization summands ``exp(-<mu, xi>) N(xi) / prod <lam, xi>``
along a ray ``xi = t * xi0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .exact import NonGenericError, as_fraction, as_vector, dot, format_fraction
from .polynomial import Polynomial

#: coefficients kept past the pole order when no degree is requested
DEFAULT_EXTRA_TERMS = 4


@dataclass(frozen=True)
class LaurentSeries:
    """``sum_i coeffs[i] * t**(order + i)``, exact for exponents ``<= degree``."""

    order: int
    coeffs: tuple
    degree: int

    def __post_init__(self):
        if self.order + len(self.coeffs) - 1 != self.degree:
            raise ValueError("coefficient list does not reach the truncation degree")

    @classmethod
    def zero(cls, degree: int, order: int | None = None) -> "LaurentSeries":
        order = degree if order is None else order
        return cls(order, (Fraction(0),) * (degree - order + 1), degree)

    def coefficient(self, k: int) -> Fraction:
        if k > self.degree:
            raise ValueError(f"t^{k} is beyond the truncation degree {self.degree}")
        if k < self.order:
            return Fraction(0)
        return self.coeffs[k - self.order]

    def valuation(self) -> int | None:
        """Lowest exponent with a nonzero coefficient (None if all vanish)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.order + i
        return None

    def negative_part(self) -> dict[int, Fraction]:
        return {k: self.coefficient(k) for k in range(self.order, 0) if self.coefficient(k)}

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        order = min(self.order, other.order)
        degree = min(self.degree, other.degree)
        coeffs = tuple(
            (self.coefficient(k) if k >= self.order else 0) + (other.coefficient(k) if k >= other.order else 0)
            for k in range(order, degree + 1)
        )
        return LaurentSeries(order, tuple(Fraction(c) for c in coeffs), degree)

    def scale(self, c) -> "LaurentSeries":
        c = as_fraction(c)
        return LaurentSeries(self.order, tuple(c * x for x in self.coeffs), self.degree)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        order = self.order + other.order
        # exact up to the smaller of the two known ranges, shifted by the other's order
        degree = min(self.degree + other.order, other.degree + self.order)
        out = []
        for k in range(order, degree + 1):
            acc = Fraction(0)
            for i in range(self.order, k - other.order + 1):
                acc += self.coefficient(i) * other.coefficient(k - i)
            out.append(acc)
        return LaurentSeries(order, tuple(out), degree)

    def truncate(self, degree: int) -> "LaurentSeries":
        if degree > self.degree:
            raise ValueError("cannot extend a truncated series")
        if degree < self.order:
            return LaurentSeries.zero(degree)
        return LaurentSeries(self.order, self.coeffs[: degree - self.order + 1], degree)

    def format(self) -> str:
        parts = [f"{format_fraction(c)}*t^{self.order + i}" for i, c in enumerate(self.coeffs) if c]
        return (" + ".join(parts) or "0") + f" + O(t^{self.degree + 1})"


def exp_series(a, degree: int) -> LaurentSeries:
    """``exp(-a t)`` through ``t**degree``."""
    a = as_fraction(a)
    if degree < 0:
        return LaurentSeries.zero(degree)
    return LaurentSeries(0, tuple((-a) ** j / factorial(j) for j in range(degree + 1)), degree)


def laurent_expand(
    apex: Sequence,
    forms: Sequence[Sequence],
    xi0: Sequence,
    degree: int | None = None,
    numerator: Polynomial | None = None,
) -> LaurentSeries:
    """Expand ``exp(-<apex, xi>) N(xi) / prod <lam, xi>`` along ``xi = t xi0``.

    ``numerator`` defaults to 1.  Its variables are evaluated at ``xi0``
    zero-padded to the polynomial's slot count (so ħ is set to zero unless
    ``xi0`` carries an ħ coordinate).  ``degree`` is the highest power of
    ``t`` returned; by default the pole order plus four.
    """
    xi0 = as_vector(xi0)
    apex = as_vector(apex)
    denom = Fraction(1)
    for lam in forms:
        pairing = dot(as_vector(lam), xi0[: len(lam)])
        if pairing == 0:
            raise NonGenericError(f"direction {tuple(xi0)} is perpendicular to weight {tuple(lam)}")
        denom *= pairing
    m = len(forms)

    # N(t xi0) = sum_k N_k(xi0) t^k
    num_coeffs: dict[int, Fraction] = {0: Fraction(1)}
    if numerator is not None:
        pt = list(xi0) + [Fraction(0)] * (numerator.nvars - len(xi0))
        num_coeffs = {}
        for k in sorted(numerator.degrees()):
            v = numerator.homogeneous_part(k).evaluate(pt[: numerator.nvars])
            if v:
                num_coeffs[k] = v
    low = min(num_coeffs, default=0)
    order = low - m
    if degree is None:
        degree = order + DEFAULT_EXTRA_TERMS
    if degree < order:
        return LaurentSeries.zero(degree)
    num = LaurentSeries(
        low,
        tuple(num_coeffs.get(k, Fraction(0)) for k in range(low, max(degree + m, low) + 1)),
        max(degree + m, low),
    )
    e = exp_series(dot(apex, xi0[: len(apex)]), degree - order)
    prod = (num * e).scale(1 / denom)
    shifted = LaurentSeries(prod.order - m, prod.coeffs, prod.degree - m)
    return shifted.truncate(degree)
