"""Exact pointwise densities of signed cone sums.

A term whose generators form a basis of the quotient by its lineality has
constant density ``1/|det|`` on its support.  Extra generators are
integrated out one at a time: the density is ``integral f'(x - t g) dt``
over ``[0, inf)`` (ray) or ``[0, 1]`` (box), where ``f'`` is the term
without ``g``.  ``f'`` is a polynomial in ``t`` between consecutive wall
crossings, so each piece is integrated exactly from ``deg + 1`` samples.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Sequence

from .cones import ConeTerm, SignedConeSum
from .exact import (
    NonGenericError,
    as_vector,
    det,
    dot,
    integer_direction,
    inverse,
    matvec,
    nullspace,
    rank,
    saturated_basis,
    vsub,
)


class SingularTermError(ValueError):
    """A term with lower-dimensional support and nonzero coefficient."""


class DivergentTermError(ValueError):
    """A term whose rays are not in an open half-space mod lineality (infinite density)."""


@lru_cache(maxsize=None)
def _interval_weights(degree: int) -> tuple[Fraction, ...]:
    """Weights integrating degree-``degree`` polynomials on [0,1] from nodes j/(degree+2)."""
    nodes = [Fraction(j, degree + 2) for j in range(1, degree + 2)]
    vt = [[u ** i for u in nodes] for i in range(degree + 1)]
    moments = [Fraction(1, i + 1) for i in range(degree + 1)]
    inv = inverse(vt)
    return tuple(matvec(inv, moments))


class _Geometry:
    """Cached combinatorics of a unit-coefficient cone term."""

    def __init__(self, apex: tuple, rays: tuple, boxes: tuple, lineality: tuple):
        self.apex = apex
        self.n = len(apex)
        self.gens = rays + boxes
        self.is_box = (False,) * len(rays) + (True,) * len(boxes)
        self.lin = saturated_basis(lineality) if lineality else []
        self.q = self.n - len(self.lin)
        self._walls: dict[int, list] = {}
        self._base: dict[int, tuple] = {}
        self._rank: dict[int, int] = {}

    def members(self, mask: int) -> list[int]:
        return [i for i in range(len(self.gens)) if mask >> i & 1]

    def rank_of(self, mask: int) -> int:
        if mask not in self._rank:
            vecs = list(self.lin) + [self.gens[i] for i in self.members(mask)]
            self._rank[mask] = rank(vecs) if vecs else 0
        return self._rank[mask]

    def walls(self, mask: int) -> list[tuple[tuple, Fraction]]:
        """Affine hyperplanes ``<a, y> = c`` where the density of ``mask`` may break."""
        if mask in self._walls:
            return self._walls[mask]
        idx = self.members(mask)
        found: dict[tuple, None] = {}
        if self.q >= 1:
            box_members = [i for i in idx if self.is_box[i]]
            for hs in combinations(idx, self.q - 1):
                rows = list(self.lin) + [self.gens[i] for i in hs]
                if rows and rank(rows) != self.n - 1:
                    continue
                if not rows and self.n != 1:
                    continue
                normal = nullspace(rows, self.n)[0] if rows else (Fraction(1),)
                normal = integer_direction(normal)
                for r in range(len(box_members) + 1):
                    for qs in combinations(box_members, r):
                        base = self.apex
                        for i in qs:
                            base = tuple(a + b for a, b in zip(base, self.gens[i]))
                        found[(normal, dot(normal, base))] = None
        self._walls[mask] = list(found)
        return self._walls[mask]

    def base(self, mask: int) -> tuple:
        if mask not in self._base:
            idx = self.members(mask)
            cols = list(self.lin) + [self.gens[i] for i in idx]
            m = [[c[r] for c in cols] for r in range(self.n)]
            self._base[mask] = (inverse(m), abs(det(m)), idx)
        return self._base[mask]

    def on_wall(self, x: tuple, mask: int) -> tuple | None:
        for a, c in self.walls(mask):
            if dot(a, x) == c:
                return a, c
        return None

    def density(self, mask: int, x: tuple) -> Fraction:
        idx = self.members(mask)
        if len(idx) == self.q:
            inv, vol, order = self.base(mask)
            coords = matvec(inv, vsub(x, self.apex))[len(self.lin):]
            for c, i in zip(coords, order):
                if c == 0 or (self.is_box[i] and c == 1):
                    raise NonGenericError(f"point {x} lies on a facet of a cone term")
                if c < 0 or (self.is_box[i] and c > 1):
                    return Fraction(0)
            return 1 / vol
        # integrate out one generator, boxes first (bounded parameter range)
        order = sorted(idx, key=lambda i: (not self.is_box[i], i))
        g_i = next(i for i in order if self.rank_of(mask & ~(1 << i)) == self.n)
        sub = mask & ~(1 << g_i)
        g = self.gens[g_i]
        bounded = self.is_box[g_i]
        breaks = set()
        for a, c in self.walls(sub):
            ag = dot(a, g)
            if ag != 0:
                t = (dot(a, x) - c) / ag
                if t > 0 and (not bounded or t < 1):
                    breaks.add(t)
        cuts = [Fraction(0)] + sorted(breaks) + ([Fraction(1)] if bounded else [])
        degree = len(idx) - 1 - self.q
        weights = _interval_weights(degree)
        total = Fraction(0)
        for lo, hi in zip(cuts, cuts[1:]):
            width = hi - lo
            acc = Fraction(0)
            for j, w in enumerate(weights, start=1):
                t = lo + width * Fraction(j, degree + 2)
                y = tuple(a - t * b for a, b in zip(x, g))
                acc += w * self.density(sub, y)
            total += width * acc
        if not bounded:
            last = cuts[-1]
            for j in range(1, degree + 2):
                y = tuple(a - (last + j) * b for a, b in zip(x, g))
                if self.density(sub, y) != 0:
                    raise DivergentTermError(
                        f"density integral along ray {g} diverges; the term is not pointed"
                    )
        return total


@lru_cache(maxsize=4096)
def _geometry(shape: tuple) -> _Geometry:
    apex, rays, boxes, lin = shape
    return _Geometry(apex, rays, boxes, lin)


def term_geometry(term: ConeTerm) -> _Geometry:
    return _geometry(term.shape())


def term_density(term: ConeTerm, x: Sequence, check_walls: bool = True) -> Fraction:
    x = as_vector(x)
    if len(x) != term.rank:
        raise ValueError(f"point of dimension {len(x)} for a rank {term.rank} term")
    if term.coefficient == 0:
        return Fraction(0)
    geo = term_geometry(term)
    full = (1 << len(geo.gens)) - 1
    if geo.rank_of(full) < geo.n:
        raise SingularTermError(f"{term} has lower-dimensional support")
    if check_walls:
        hit = geo.on_wall(x, full)
        if hit is not None:
            raise NonGenericError(f"point {x} lies on a wall {hit} of {term}")
    return term.coefficient * geo.density(full, x)


def density_function(cone_sum: SignedConeSum) -> Callable[[Sequence], Fraction]:
    """Pre-simplified evaluator, for evaluating one sum at many points."""
    prepared = []
    for t in cone_sum.simplify().terms:
        geo = term_geometry(t)
        full = (1 << len(geo.gens)) - 1
        if geo.rank_of(full) < geo.n:
            raise SingularTermError(f"{t} has lower-dimensional support")
        prepared.append((t.coefficient, geo, full))
    rank = cone_sum.rank

    def evaluate(x: Sequence) -> Fraction:
        x = as_vector(x)
        if len(x) != rank:
            raise ValueError(f"point of dimension {len(x)} for a rank {rank} sum")
        total = Fraction(0)
        for coef, geo, full in prepared:
            hit = geo.on_wall(x, full)
            if hit is not None:
                raise NonGenericError(f"point {x} lies on a wall {hit}")
            total += coef * geo.density(full, x)
        return total

    return evaluate


def density_at(cone_sum: SignedConeSum, x: Sequence) -> Fraction:
    """Exact density of the measure at a generic point ``x``.

    Identical terms are merged first so that cancelling singular terms do
    not trip the singular-term check.
    """
    return density_function(cone_sum)(x)


def walls_of(cone_sum: SignedConeSum) -> list[tuple[tuple, Fraction]]:
    """All walls of all terms (used to jitter sample points off them)."""
    out: dict = {}
    for t in cone_sum.simplify().terms:
        geo = term_geometry(t)
        for w in geo.walls((1 << len(geo.gens)) - 1):
            out[w] = None
    return list(out)


def regular_density_at(cone_sum: SignedConeSum, x: Sequence) -> Fraction:
    """Density of the absolutely continuous part of the measure at ``x``.

    Lower-dimensional terms carry no density; ``x`` must stay off their
    affine supports, which generic points do.
    """
    x = as_vector(x)
    total = Fraction(0)
    for t in cone_sum.simplify().terms:
        gens = list(t.lineality) + list(t.generators)
        r = rank(gens) if gens else 0
        if r == t.rank:
            total += term_density(t, x)
            continue
        offset = vsub(x, t.apex)
        if not any(offset) or (gens and rank(gens + [offset]) == r):
            raise NonGenericError(f"point {x} lies on the support of the singular term {t}")
    return total
