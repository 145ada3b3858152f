"""Deterministic generic rationals.

Points and directions have denominators that are powers of a fixed prime,
so they avoid the small-denominator walls that polytopes and cone terms
live on.  Anything that still lands on a wall is detected by the caller
and redrawn.
"""
from __future__ import annotations

import os
import random
from fractions import Fraction
from math import ceil, floor
from typing import Callable, Sequence

from .exact import NonGenericError, as_fraction, dot

PRIME = 7
DEFAULT_SEED = 20240607
MAX_REDRAWS = 500


def resolve_seed(seed: int | None = None) -> int:
    """``CONECALC_SEED`` wins over the argument, which wins over the default."""
    env = os.environ.get("CONECALC_SEED")
    if env:
        return int(env)
    return DEFAULT_SEED if seed is None else int(seed)


class GenericSampler:
    def __init__(self, seed: int | None = None, depth: int = 3):
        self.seed = resolve_seed(seed)
        self.rng = random.Random(self.seed)
        self.depth = depth

    def rational(self, lo, hi) -> Fraction:
        lo, hi = as_fraction(lo), as_fraction(hi)
        den = PRIME ** self.rng.randint(self.depth, self.depth + 1)
        a, b = ceil(lo * den) + 1, floor(hi * den) - 1
        if a > b:
            return (lo + hi) / 2
        while True:
            num = self.rng.randint(a, b)
            if num % PRIME:
                return Fraction(num, den)

    def point(self, box: Sequence[tuple]) -> tuple:
        return tuple(self.rational(lo, hi) for lo, hi in box)

    def direction(self, dim: int, avoid: Sequence[Sequence] = (), bound: int = 9) -> tuple:
        """Integer vector pairing nonzero with every vector in ``avoid``."""
        for _ in range(MAX_REDRAWS):
            v = tuple(self.rng.randint(-bound, bound) for _ in range(dim))
            if any(v) and all(dot(v, w) != 0 for w in avoid):
                return tuple(Fraction(c) for c in v)
        raise NonGenericError("could not find a generic direction")

    def draw(self, box: Sequence[tuple], accept: Callable[[tuple], object]):
        """Draw points until ``accept`` returns without NonGenericError."""
        for _ in range(MAX_REDRAWS):
            x = self.point(box)
            try:
                return x, accept(x)
            except NonGenericError:
                continue
        raise NonGenericError("exhausted redraws looking for a generic point")
