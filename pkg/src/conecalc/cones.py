"""Cone terms and signed sums of them.

A cone term is ``coefficient * pi_*(Lebesgue on span(L) x R_{>=0}^rays x [0,1]^boxes)``
with ``pi(l, x, y) = apex + l + sum x_i rays[i] + sum y_j boxes[j]``.  The
measure on ``span(L)`` is normalised by the lattice ``span(L) ∩ Z^n``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import (
    NonGenericError,
    as_fraction,
    as_vector,
    dot,
    format_fraction,
    rank,
    vadd,
    vscale,
    vsub,
)
from .lp import half_space_witness


class ImproperProjectionError(ValueError):
    """A projection would send a ray (or lineal direction) to a non-proper image."""


class DistributionalTransformError(ValueError):
    """The Fourier transform of a lineal term is a distribution, not a function."""


def _vec(v) -> tuple:
    return as_vector(v)


@dataclass(frozen=True)
class ConeTerm:
    coefficient: Fraction
    apex: tuple
    rays: tuple = ()
    boxes: tuple = ()
    lineality: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coefficient", as_fraction(self.coefficient))
        apex = _vec(self.apex)
        object.__setattr__(self, "apex", apex)
        n = len(apex)
        for name in ("rays", "boxes", "lineality"):
            gens = tuple(_vec(g) for g in getattr(self, name))
            for g in gens:
                if len(g) != n:
                    raise ValueError(f"{name} vector {g} does not match ambient rank {n}")
                if not any(g):
                    raise ValueError(f"zero vector among {name}")
            object.__setattr__(self, name, gens)
        if self.lineality and rank(self.lineality) != len(self.lineality):
            raise ValueError("lineality vectors must be linearly independent")

    @property
    def rank(self) -> int:
        return len(self.apex)

    @property
    def generators(self) -> tuple:
        return self.rays + self.boxes

    def shape(self) -> tuple:
        """Everything but the coefficient, with generator multisets sorted."""
        return (self.apex, tuple(sorted(self.rays)), tuple(sorted(self.boxes)), tuple(sorted(self.lineality)))

    def scaled(self, c) -> "ConeTerm":
        return replace(self, coefficient=self.coefficient * as_fraction(c))

    def translated(self, shift: Sequence) -> "ConeTerm":
        return replace(self, apex=vadd(self.apex, _vec(shift)))

    def is_full_dimensional(self) -> bool:
        if self.rank == 0:
            return True
        vecs = list(self.lineality) + list(self.generators)
        return bool(vecs) and rank(vecs) == self.rank

    def is_pointed(self) -> bool:
        return not self.lineality

    def to_json(self) -> dict:
        fmt = lambda vs: [[format_fraction(x) for x in v] for v in vs]  # noqa: E731
        return {
            "coeff": format_fraction(self.coefficient),
            "apex": [format_fraction(x) for x in self.apex],
            "lineality": fmt(self.lineality),
            "rays": fmt(self.rays),
            "boxes": fmt(self.boxes),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConeTerm":
        return cls(
            as_fraction(data.get("coeff", 1)),
            tuple(data["apex"]),
            rays=tuple(tuple(r) for r in data.get("rays", [])),
            boxes=tuple(tuple(r) for r in data.get("boxes", [])),
            lineality=tuple(tuple(r) for r in data.get("lineality", [])),
        )

    def __str__(self):
        def show(vs):
            return "{" + ", ".join("(" + ",".join(format_fraction(x) for x in v) + ")" for v in vs) + "}"

        apex = "(" + ",".join(format_fraction(x) for x in self.apex) + ")"
        extra = ""
        if self.lineality:
            extra += f"; lineality {show(self.lineality)}"
        if self.boxes:
            extra += f"; boxes {show(self.boxes)}"
        return f"{format_fraction(self.coefficient)}*cone({apex}; rays {show(self.rays)}{extra})"


@dataclass(frozen=True)
class SignedConeSum:
    rank: int
    terms: tuple = field(default_factory=tuple)

    def __post_init__(self):
        terms = tuple(self.terms)
        for t in terms:
            if t.rank != self.rank:
                raise ValueError(f"term of rank {t.rank} in a rank {self.rank} sum")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, terms: Iterable[ConeTerm], rank: int | None = None) -> "SignedConeSum":
        terms = tuple(terms)
        if rank is None:
            if not terms:
                raise ValueError("rank is required for an empty sum")
            rank = terms[0].rank
        return cls(rank, terms)

    def __add__(self, other: "SignedConeSum") -> "SignedConeSum":
        if other.rank != self.rank:
            raise ValueError("rank mismatch")
        return SignedConeSum(self.rank, self.terms + other.terms)

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def scaled(self, c) -> "SignedConeSum":
        return SignedConeSum(self.rank, tuple(t.scaled(c) for t in self.terms))

    def simplify(self) -> "SignedConeSum":
        """Merge terms of identical shape and drop zero coefficients."""
        merged: dict[tuple, Fraction] = {}
        order: list[tuple] = []
        for t in self.terms:
            key = t.shape()
            if key not in merged:
                merged[key] = Fraction(0)
                order.append(key)
            merged[key] += t.coefficient
        out = []
        for key in order:
            if merged[key]:
                apex, rays, boxes, lin = key
                out.append(ConeTerm(merged[key], apex, rays, boxes, lin))
        return SignedConeSum(self.rank, tuple(out))

    def to_json(self) -> list[dict]:
        return [t.to_json() for t in self.terms]

    @classmethod
    def from_json(cls, data: list, rank: int) -> "SignedConeSum":
        return cls(rank, tuple(ConeTerm.from_json(d) for d in data))

    def __str__(self):
        return " + ".join(str(t) for t in self.terms) if self.terms else "0"


# ---------------------------------------------------------------------------
# operations


def flip_to_direction(cone_sum: SignedConeSum, v: Sequence) -> SignedConeSum:
    """Replace each ray with ``<v, ray> < 0`` by its negative, negating the coefficient.

    The result is Fourier equivalent to the input and every ray of it pairs
    positively with ``v``.
    """
    v = _vec(v)
    out = []
    for t in cone_sum.terms:
        rays = []
        sign = 1
        for g in t.rays:
            p = dot(v, g)
            if p == 0:
                raise NonGenericError(f"direction {v} is perpendicular to weight {g}")
            if p < 0:
                rays.append(vscale(-1, g))
                sign = -sign
            else:
                rays.append(g)
        out.append(replace(t, coefficient=t.coefficient * sign, rays=tuple(rays)))
    return SignedConeSum(cone_sum.rank, tuple(out))


def difference(cone_sum: SignedConeSum, lam: Sequence) -> SignedConeSum:
    """The differencing operator ``(d f)(x) = f(x) - f(x + lam)`` on measures.

    A term with ``lam`` among its rays trades one copy of it for a box
    based at ``apex - lam`` with negated coefficient; any other term becomes
    itself minus its translate by ``-lam``.
    """
    lam = _vec(lam)
    if not any(lam):
        raise ValueError("cannot difference along the zero vector")
    out = []
    for t in cone_sum.terms:
        if lam in t.rays:
            rays = list(t.rays)
            rays.remove(lam)
            out.append(
                replace(
                    t,
                    coefficient=-t.coefficient,
                    apex=vsub(t.apex, lam),
                    rays=tuple(rays),
                    boxes=t.boxes + (lam,),
                )
            )
        else:
            out.append(t)
            out.append(replace(t, coefficient=-t.coefficient, apex=vsub(t.apex, lam)))
    return SignedConeSum(cone_sum.rank, tuple(out))


def difference_all_rays(term: ConeTerm) -> SignedConeSum:
    """Apply the differencing operator once per ray; the result is compactly supported."""
    s = SignedConeSum(term.rank, (term,))
    for g in term.rays:
        s = difference(s, g)
    return s


def fourier_term(term: ConeTerm, xi: Sequence) -> tuple[Fraction, Fraction]:
    """``(exponent, factor)`` with transform ``factor * exp(exponent)`` at ``xi``.

    Convention: FT(nu)(xi) = integral of exp(-<x, xi>) d nu(x), extended to
    non-convergent rays by the same rational formula.
    """
    xi = _vec(xi)
    if term.lineality:
        raise DistributionalTransformError("lineal cone terms have distributional transforms")
    if term.boxes:
        raise ValueError("expand boxes first (expand_boxes) to transform a term with box factors")
    factor = term.coefficient
    for g in term.rays:
        p = dot(g, xi)
        if p == 0:
            raise NonGenericError(f"xi={xi} is perpendicular to ray {g}")
        factor /= p
    return -dot(term.apex, xi), factor


def expand_boxes(cone_sum: SignedConeSum) -> SignedConeSum:
    """Rewrite each box factor [0,1]·b as cone(b) minus its translate by b."""
    out = []
    for t in cone_sum.terms:
        partial = [replace(t, boxes=())]
        for b in t.boxes:
            nxt = []
            for p in partial:
                nxt.append(replace(p, rays=p.rays + (b,)))
                nxt.append(replace(p, rays=p.rays + (b,), apex=vadd(p.apex, b), coefficient=-p.coefficient))
            partial = nxt
        out.extend(partial)
    return SignedConeSum(cone_sum.rank, tuple(out))


def fourier_sum(cone_sum: SignedConeSum, xi: Sequence) -> dict[tuple, Fraction]:
    """Transform of a pointed sum at ``xi``, grouped by apex.

    Exponentials with distinct apexes are linearly independent functions of
    ξ, so comparing these dictionaries is an exact comparison of the
    exponential-rational expressions at ``xi``.
    """
    xi = _vec(xi)
    out: dict[tuple, Fraction] = {}
    for t in expand_boxes(cone_sum).terms:
        _, f = fourier_term(t, xi)
        out[t.apex] = out.get(t.apex, Fraction(0)) + f
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class ProperVerdict:
    proper: bool
    witness: tuple | None = None
    certificate: dict | None = None

    def __bool__(self):
        return self.proper


def _fmt(vec: tuple) -> str:
    return "(" + ",".join(format_fraction(c) for c in vec) + ")"


def _project(vec: tuple, keep: Sequence[int] | None) -> tuple:
    return vec if keep is None else tuple(vec[i] for i in keep)


def is_proper(
    cone_sum: SignedConeSum,
    keep: Sequence[int] | None = None,
    hint: Sequence | None = None,
) -> ProperVerdict:
    """Do the projected rays of every term lie in one open half-space?

    ``keep`` lists the coordinates kept by the projection (None = identity).
    Lineal directions that survive the projection are treated as a pair of
    opposite rays; boxes are compact and never matter.  Returns a witness
    direction when proper and a Gordan certificate (nonnegative weights on
    the projected generators summing to zero) otherwise.
    """
    dim = cone_sum.rank if keep is None else len(keep)
    gens: list[tuple] = []
    labels: list[str] = []
    for i, t in enumerate(cone_sum.terms):
        for g in t.rays:
            gens.append(_project(g, keep))
            labels.append(f"term {i} ray {_fmt(g)}")
        for g in t.lineality:
            pg = _project(g, keep)
            if any(pg):
                gens.append(pg)
                labels.append(f"term {i} lineality +{_fmt(g)}")
                gens.append(vscale(-1, pg))
                labels.append(f"term {i} lineality -{_fmt(g)}")
    if hint is not None:
        h = _vec(hint)
        if all(dot(h, g) > 0 for g in gens):
            return ProperVerdict(True, witness=h)
    ok, vec = half_space_witness(gens, dim)
    if ok:
        return ProperVerdict(True, witness=vec)
    cert = {
        "weights": [
            {"generator": [format_fraction(x) for x in gens[j]], "source": labels[j], "weight": format_fraction(y)}
            for j, y in enumerate(vec)
            if y
        ]
    }
    # the certificate must combine to zero; check before handing it out
    total = [Fraction(0)] * dim
    for j, y in enumerate(vec):
        if y:
            total = [a + y * b for a, b in zip(total, gens[j])]
    assert not any(total)
    return ProperVerdict(False, certificate=cert)


def project_drop_last(cone_sum: SignedConeSum, check: bool = True) -> SignedConeSum:
    """Push a sum forward along ``R^n -> R^(n-1)`` forgetting the last coordinate.

    Boxes that project to zero disappear (their unit interval integrates
    to one).  Rays or lineal directions projecting to zero, and sums whose
    projected rays are not in a common open half-space, are refused.
    """
    n = cone_sum.rank
    if n == 0:
        raise ValueError("nothing to drop")
    keep = list(range(n - 1))
    if check:
        verdict = is_proper(cone_sum, keep)
        if not verdict.proper:
            raise ImproperProjectionError(
                f"projected rays are not in an open half-space: {verdict.certificate}"
            )
    out = []
    for t in cone_sum.terms:
        rays = tuple(g[:-1] for g in t.rays)
        if any(not any(g) for g in rays):
            raise ImproperProjectionError(f"a ray of {t} projects to zero")
        lin = tuple(g[:-1] for g in t.lineality)
        if lin and rank(lin) < len(lin):
            raise ImproperProjectionError(f"a lineal direction of {t} projects to zero")
        boxes = tuple(g[:-1] for g in t.boxes if any(g[:-1]))
        out.append(ConeTerm(t.coefficient, t.apex[:-1], rays, boxes, lin))
    return SignedConeSum(n - 1, tuple(out))
