"""Seeded random instances for the property suites."""
from __future__ import annotations

import random
from fractions import Fraction

from conecalc.cones import ConeTerm
from conecalc.exact import NonGenericError, dot, rank
from conecalc.polynomial import Polynomial
from conecalc.sampling import GenericSampler

SEED = 20240607


def _int_vector(rng: random.Random, n: int, bound: int = 3) -> tuple:
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(n))
        if any(v):
            return v


def random_pointed_term(rng: random.Random, max_rank: int = 3, max_gens: int = 4, boxes: bool = True):
    """A full-dimensional pointed term and a witness pairing positively with its rays."""
    n = rng.randint(1, max_rank)
    witness = _int_vector(rng, n)
    while True:
        k = rng.randint(n, max_gens)
        gens = []
        while len(gens) < k:
            g = _int_vector(rng, n)
            p = dot(witness, g)
            if p == 0:
                continue
            gens.append(g if p > 0 else tuple(-c for c in g))
        if rank(gens) == n:
            break
    n_boxes = rng.randint(0, k - 1) if boxes else 0
    rays, box = gens[n_boxes:], gens[:n_boxes]
    coef = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
    apex = tuple(Fraction(rng.randint(-6, 6), rng.choice([1, 2, 3])) for _ in range(n))
    return ConeTerm(coef, apex, rays=tuple(rays), boxes=tuple(box)), witness


def generic_point(sampler: GenericSampler, term: ConeTerm, fn, spread: int = 4):
    box = [(a - spread, a + spread) for a in term.apex]
    return sampler.draw(box, fn)


def point_in_support(sampler: GenericSampler, term: ConeTerm, fn):
    """A generic point of the form apex + sum u_i g_i, mostly inside the support."""
    gens = term.rays + term.boxes

    def draw():
        x = list(term.apex)
        for g in gens:
            u = sampler.rational(0, 1)
            x = [a + u * c for a, c in zip(x, g)]
        return tuple(x)

    for _ in range(500):
        x = draw()
        try:
            return x, fn(x)
        except NonGenericError:
            continue
    raise NonGenericError("no generic point found in the support")


def generic_direction(sampler: GenericSampler, dim: int, avoid) -> tuple:
    return sampler.direction(dim, avoid)


def random_polynomial(rng: random.Random, nvars: int = 3, terms: int = 4, max_deg: int = 3) -> Polynomial:
    out = {}
    for _ in range(rng.randint(0, terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        out[e] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return Polynomial(nvars, out)


__all__ = [
    "NonGenericError",
    "SEED",
    "generic_direction",
    "generic_point",
    "point_in_support",
    "random_pointed_term",
    "random_polynomial",
]
