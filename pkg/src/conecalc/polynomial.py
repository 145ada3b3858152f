"""Sparse multivariate polynomials with rational coefficients.

A polynomial lives in ``nvars`` variables.  By convention the scenario
polynomials have ``rank + 1`` slots and the last one is the dilation
parameter ħ; cotangent-level code simply treats ħ as one more coordinate.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import as_fraction, format_fraction


class Polynomial:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not have {nvars} slots")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent in a polynomial")
            c = as_fraction(coeff)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean
        self._hash = None

    # constructors

    @classmethod
    def constant(cls, nvars: int, c=1) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def hbar(cls, nvars: int) -> "Polynomial":
        return cls.variable(nvars, nvars - 1)

    @classmethod
    def linear_form(cls, coeffs: Sequence, nvars: int | None = None) -> "Polynomial":
        """The form ``sum c_i x_i``; short coefficient vectors are zero padded."""
        nvars = len(coeffs) if nvars is None else nvars
        if len(coeffs) > nvars:
            raise ValueError("linear form longer than the variable count")
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * nvars
            e[i] = 1
            terms[tuple(e)] = c
        return cls(nvars, terms)

    @classmethod
    def product(cls, factors: Iterable["Polynomial"], nvars: int) -> "Polynomial":
        out = cls.constant(nvars)
        for f in factors:
            out = out * f
        return out

    # arithmetic

    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.nvars, as_fraction(other))

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return Polynomial(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def total_degree(self) -> int:
        return max(self.degrees(), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        """Zero counts as homogeneous of every degree."""
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def hbar_free(self) -> bool:
        return all(e[-1] == 0 for e in self.terms)

    def set_hbar_zero(self) -> "Polynomial":
        """Substitute ħ -> 0 (drop every term with a positive ħ exponent)."""
        return Polynomial(self.nvars, {e: c for e, c in self.terms.items() if e[-1] == 0})

    def divisible_by_hbar(self) -> bool:
        return all(e[-1] > 0 for e in self.terms)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [as_fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(pt, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def substitute_linear(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable i by ``images[i]`` (all in a common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars if images else 0
        out = Polynomial.zero(target)
        for e, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for img, k in zip(images, e):
                if k:
                    term = term * img ** k
            out = out + term
        return out

    def coefficients(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)

    # io

    def to_json(self) -> list[dict]:
        return [{"coeff": format_fraction(c), "exponents": list(e)} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data: list, nvars: int) -> "Polynomial":
        terms: dict[tuple[int, ...], Fraction] = {}
        for item in data:
            e = tuple(int(x) for x in item["exponents"])
            terms[e] = terms.get(e, Fraction(0)) + as_fraction(item["coeff"])
        return cls(nvars, terms)

    def __repr__(self):
        return f"Polynomial({self.format()})"

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"y{i + 1}" for i in range(self.nvars - 1)] + ["hbar"]
            if self.nvars == 2:
                names = ["y", "hbar"]
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            if not mono:
                parts.append(format_fraction(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_fraction(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")
