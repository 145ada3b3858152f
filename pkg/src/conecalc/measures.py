"""Sampled equality of cone-sum measures."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cones import SignedConeSum, expand_boxes, fourier_sum
from .density import density_function
from .exact import format_fraction
from .sampling import GenericSampler


@dataclass
class EqualityVerdict:
    """Outcome of :func:`measures_equal`.

    ``equal`` means equal on every sample; a ``False`` verdict comes with a
    counterexample and is a proof of inequality.
    """

    equal: bool
    samples: list = field(default_factory=list)
    fourier_checks: list = field(default_factory=list)
    counterexample: dict | None = None

    def __bool__(self):
        return self.equal

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "verdict": "equal on samples" if self.equal else "not equal",
            "samples": [
                {"point": [format_fraction(c) for c in x], "left": format_fraction(a), "right": format_fraction(b)}
                for x, a, b in self.samples
            ],
            "fourier_checks": len(self.fourier_checks),
            "counterexample": self.counterexample,
        }


def bounding_box(sums: Sequence[SignedConeSum], margin=1) -> list[tuple[Fraction, Fraction]]:
    """Box around every apex, padded by the longest generator plus ``margin``."""
    rank = sums[0].rank
    apexes = [t.apex for s in sums for t in s.terms]
    if not apexes:
        return [(Fraction(-1), Fraction(1))] * rank
    reach = Fraction(margin)
    for s in sums:
        for t in s.terms:
            for g in t.rays + t.lineality:
                reach = max(reach, max(abs(c) for c in g) + margin)
            span = sum((max(abs(c) for c in b) for b in t.boxes), Fraction(0))
            reach = max(reach, span + margin)
    return [
        (min(a[i] for a in apexes) - reach, max(a[i] for a in apexes) + reach)
        for i in range(rank)
    ]


def measures_equal(
    a: SignedConeSum,
    b: SignedConeSum,
    samples: int = 24,
    seed: int | None = None,
    fourier_points: int = 3,
    box: Sequence[tuple] | None = None,
) -> EqualityVerdict:
    """Compare two sums by exact densities at generic points and by transforms.

    The transform comparison runs only when neither side has lineal terms.
    """
    if a.rank != b.rank:
        raise ValueError("rank mismatch")
    a, b = a.simplify(), b.simplify()
    sampler = GenericSampler(seed)
    box = bounding_box([a, b]) if box is None else box
    verdict = EqualityVerdict(True)
    fa, fb = density_function(a), density_function(b)
    for _ in range(samples):
        x, (da, db) = sampler.draw(box, lambda x: (fa(x), fb(x)))
        verdict.samples.append((x, da, db))
        if da != db:
            verdict.equal = False
            verdict.counterexample = {
                "kind": "density",
                "point": [format_fraction(c) for c in x],
                "left": format_fraction(da),
                "right": format_fraction(db),
            }
            return verdict
    if all(not t.lineality for s in (a, b) for t in s.terms):
        rays = [g for s in (expand_boxes(a), expand_boxes(b)) for t in s.terms for g in t.rays]
        for _ in range(fourier_points):
            xi = sampler.direction(a.rank, rays)
            fa, fb = fourier_sum(a, xi), fourier_sum(b, xi)
            verdict.fourier_checks.append((xi, fa == fb))
            if fa != fb:
                verdict.equal = False
                verdict.counterexample = {"kind": "fourier", "xi": [format_fraction(c) for c in xi]}
                return verdict
    return verdict
