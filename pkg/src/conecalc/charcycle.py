"""Characteristic-cycle classes of Białynicki-Birula cells and the cotangent
cone sums built from them.

Classes live in ``rank + 1`` polynomial slots, the last one being ħ.  On
the cotangent side a tangent weight ``lam`` becomes the vector ``(lam, 0)``
and the matching fiber weight ``hbar - lam`` becomes ``(-lam, 1)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .cones import SignedConeSum, fourier_sum, is_proper, project_drop_last
from .exact import NonGenericError, as_vector, dot, format_fraction, rank, vscale
from .localization import FixedPointDatum, heckman_cone_sum
from .measures import measures_equal
from .polynomial import Polynomial
from .sampling import GenericSampler
from .toric import DelzantPolytope, csm_of_open_orbit


class TableInvariantError(ValueError):
    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


def bb_cells(P: DelzantPolytope, s: Sequence) -> dict[tuple, int]:
    """Assign every face to the vertex of it where ``<s, .>`` is smallest.

    The cell of a vertex p is the union of the open orbits assigned to p.
    """
    s = as_vector(s)
    values = [dot(s, v) for v in P.vertices]
    if len(set(values)) != len(values):
        raise NonGenericError(f"circle {s} takes equal values on two vertices")
    for i in range(len(P.vertices)):
        for e in P.edges_at(i).values():
            if dot(s, e) == 0:
                raise NonGenericError(f"circle {s} is perpendicular to edge {e}")
    return {f.key: min(f.vertices, key=lambda i: values[i]) for f in P.faces}


def euler_class_diagonal(weights: Sequence[tuple], s: Sequence, nvars: int) -> Polynomial:
    """``prod_{<s,lam> < 0} lam * prod_{<s,lam> > 0} (hbar - lam)``."""
    hbar = Polynomial.hbar(nvars)
    out = Polynomial.constant(nvars)
    for w in weights:
        lam = Polynomial.linear_form(w, nvars)
        out = out * (lam if dot(s, w) < 0 else hbar - lam)
    return out


def printed_case_diagonal(weights: Sequence[tuple], s: Sequence, nvars: int) -> Polynomial:
    """The opposite assignment: ``lam`` for positive S-weights, ``hbar - lam`` for negative."""
    hbar = Polynomial.hbar(nvars)
    out = Polynomial.constant(nvars)
    for w in weights:
        lam = Polynomial.linear_form(w, nvars)
        out = out * (lam if dot(s, w) > 0 else hbar - lam)
    return out


@dataclass
class CellClassTable:
    """Restrictions ``[cc(M_p)]|_f`` for every cell p and fixed point f."""

    circle: tuple
    data: list
    codim: dict
    entries: dict
    cells: dict = field(default_factory=dict)

    @property
    def labels(self) -> list[str]:
        return [d.label for d in self.data]

    def datum(self, label: str) -> FixedPointDatum:
        return next(d for d in self.data if d.label == label)

    def problems(self, check_diagonal: bool = True) -> list[str]:
        out = []
        for p, row in self.entries.items():
            for f, poly in row.items():
                deg = len(self.datum(f).weights)
                if not poly.is_homogeneous(deg):
                    out.append(f"[cc({p})]|_{f} = {poly.format()} is not homogeneous of degree {deg}")
                if f != p and not poly.divisible_by_hbar():
                    out.append(f"[cc({p})]|_{f} = {poly.format()} is not divisible by hbar")
            if check_diagonal:
                d = self.datum(p)
                expected = euler_class_diagonal(d.weights, self.circle, row[p].nvars)
                if row[p] != expected:
                    out.append(f"[cc({p})]|_{p} = {row[p].format()}, expected {expected.format()}")
        return out

    def to_json(self) -> dict:
        return {
            "circle": [format_fraction(c) for c in self.circle],
            "cells": [
                {
                    "cell": p,
                    "codim": self.codim[p],
                    "faces": [list(k) for k in self.cells.get(p, [])],
                    "restrictions": {f: poly.to_json() for f, poly in row.items()},
                }
                for p, row in self.entries.items()
            ],
        }


def cell_cc_table(P: DelzantPolytope, s: Sequence, data: Sequence[FixedPointDatum] | None = None) -> CellClassTable:
    """Cell class table by additivity: csm(cell) = sum of csm(open orbit) over its orbits.

    ``cc = (-1)^codim csm``.  All table invariants are checked; a violation
    raises :class:`TableInvariantError` listing every offending entry.
    """
    from .toric import toric_fixed_data

    s = as_vector(s)
    data = list(toric_fixed_data(P)) if data is None else list(data)
    assignment = bb_cells(P, s)
    cells: dict[str, list] = {d.label: [] for d in data}
    for key, p in assignment.items():
        cells[data[p].label].append(key)
    entries, codim = {}, {}
    for pi, d in enumerate(data):
        faces = cells[d.label]
        dim = max(P.face(k).dim for k in faces)
        codim[d.label] = P.dim - dim
        total = None
        for k in faces:
            part = csm_of_open_orbit(P, P.face(k))
            total = part if total is None else {i: total[i] + part[i] for i in total}
        sign = (-1) ** codim[d.label]
        entries[d.label] = {data[i].label: total[i] * sign for i in range(len(data))}
    table = CellClassTable(s, data, codim, entries, cells)
    problems = table.problems()
    if problems:
        raise TableInvariantError(problems)
    return table


@dataclass
class Verdict:
    passed: bool
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def weber_check(table: CellClassTable) -> Verdict:
    """Every off-diagonal restriction must be divisible by ħ."""
    offenders = []
    for p, row in table.entries.items():
        for f, poly in row.items():
            if f != p and not poly.divisible_by_hbar():
                offenders.append({"cell": p, "fixed_point": f, "class": poly.format()})
    return Verdict(not offenders, {"offenders": offenders})


def cotangent_data(data: Sequence[FixedPointDatum], classes: Mapping[str, Polynomial]) -> list[FixedPointDatum]:
    """Fixed-point data on the cotangent bundle, in rank ``n + 1``."""
    out = []
    for d in data:
        poly = classes.get(d.label)
        if poly is None or poly.is_zero():
            continue
        if poly.nvars != d.rank + 1:
            raise ValueError(f"class at {d.label} needs {d.rank + 1} slots")
        weights = tuple(w + (Fraction(0),) for w in d.weights) + tuple(vscale(-1, w) + (Fraction(1),) for w in d.weights)
        out.append(FixedPointDatum(d.label, d.moment + (Fraction(0),), weights, poly))
    return out


def _prefer_transverse(subset: tuple) -> tuple:
    # subsets whose projections to t* stay independent first; keeps projected terms full-dimensional
    proj = [w[:-1] for w in subset]
    return (0 if not proj or rank(proj) == len(proj) else 1,)


def cotangent_cone_sum(
    data: Sequence[FixedPointDatum],
    classes: Mapping[str, Polynomial],
    s: Sequence,
    direction: Sequence | None = None,
) -> SignedConeSum:
    """Cone sum in ``t* x R`` whose transform is ``sum_f e^{-Phi(f)} [C]|_f / prod lam (hbar - lam)``.

    Rays are flipped towards ``direction``, by default ``(s, 0)``.
    """
    s = as_vector(s)
    n = len(s)
    v = s + (Fraction(0),) if direction is None else as_vector(direction)
    cot = cotangent_data(data, classes)
    if not cot:
        return SignedConeSum(n + 1)
    return heckman_cone_sum(cot, v, prefer=_prefer_transverse)


def upward_direction(data: Sequence[FixedPointDatum], s: Sequence) -> tuple:
    """A direction ``(s, K)`` pairing positively with every fiber weight ``(-lam, 1)``."""
    s = as_vector(s)
    k = 1 + max((abs(dot(s, w)) for d in data for w in d.weights), default=0)
    return s + (Fraction(k),)


def hbar_zero_reduction(
    data: Sequence[FixedPointDatum],
    classes: Mapping[str, Polynomial],
    xi: Sequence,
) -> dict[tuple, Fraction]:
    """``sum_f e^{-Phi(f)} [C]|_f / prod lam (hbar - lam)`` at ``(xi, hbar = 0)``, grouped by apex."""
    xi = as_vector(xi)
    out: dict[tuple, Fraction] = {}
    for d in data:
        poly = classes.get(d.label)
        if poly is None:
            continue
        num = poly.set_hbar_zero()
        if num.is_zero():
            continue
        denom = Fraction(1)
        for w in d.weights:
            p = dot(w, xi)
            if p == 0:
                raise NonGenericError(f"xi={xi} is perpendicular to weight {w}")
            denom *= p * (-p)
        out[d.moment] = out.get(d.moment, Fraction(0)) + num.evaluate(xi + (Fraction(0),)) / denom
    return {k: v for k, v in out.items() if v}


def main_theorem_check(
    table: CellClassTable,
    p: str,
    n_xi: int = 5,
    seed: int | None = None,
    compare_measures: bool = True,
) -> Verdict:
    """Check that the cell's cotangent sum reduces to p's Heckman term.

    * at ``n_xi`` generic ξ: ``(-1)^codim`` times the ħ -> 0 reduction equals the
      transform of p's Heckman term (flipped by the circle);
    * the extended sum flipped by ``(s, 0)`` projects properly to t*;
    * optionally, that projection is measure-equal (on samples) to the Heckman term.
    """
    s = table.circle
    data = table.data
    classes = table.entries[p]
    sign = (-1) ** table.codim[p]
    sampler = GenericSampler(seed)
    weights = [w for d in data for w in d.weights]
    heck = heckman_cone_sum([table.datum(p)], s)
    details: dict = {"cell": p, "codim": table.codim[p], "fourier": []}
    passed = True
    for _ in range(n_xi):
        xi = sampler.direction(len(s), weights)
        lhs = {k: sign * v for k, v in hbar_zero_reduction(data, classes, xi).items()}
        rhs = fourier_sum(heck, xi)
        ok = lhs == rhs
        passed &= ok
        details["fourier"].append(
            {
                "xi": [format_fraction(c) for c in xi],
                "reduced": {str(tuple(map(format_fraction, k))): format_fraction(v) for k, v in lhs.items()},
                "heckman": {str(tuple(map(format_fraction, k))): format_fraction(v) for k, v in rhs.items()},
                "equal": ok,
            }
        )
    extended = cotangent_cone_sum(data, classes, s)
    proper = is_proper(extended, keep=list(range(len(s))), hint=s)
    details["proper"] = proper.proper
    passed &= proper.proper
    if compare_measures and proper.proper:
        projected = project_drop_last(extended).scaled(sign)
        eq = measures_equal(projected, heck, seed=seed)
        details["projection_equals_heckman_term"] = eq.equal
        passed &= eq.equal
    return Verdict(passed, details)


def cell_pipeline_sum(table: CellClassTable) -> SignedConeSum:
    """``sum_p (-1)^codim`` (projected cotangent sum of cell p); should be the DH measure."""
    n = len(table.circle)
    total = SignedConeSum(n)
    for p in table.entries:
        ext = cotangent_cone_sum(table.data, table.entries[p], table.circle)
        total = total + project_drop_last(ext).scaled((-1) ** table.codim[p])
    return total


def diagonal_conventions(table: CellClassTable) -> dict[str, bool]:
    """Which diagonal formula the table actually satisfies."""
    out = {"euler_class": True, "as_printed": True}
    for d in table.data:
        entry = table.entries[d.label][d.label]
        nv = entry.nvars
        out["euler_class"] &= entry == euler_class_diagonal(d.weights, table.circle, nv)
        out["as_printed"] &= entry == printed_case_diagonal(d.weights, table.circle, nv)
    return out


@dataclass
class Stratum:
    """A locally closed piece with its cc restrictions at the fixed points."""

    name: str
    codim: int
    classes: dict

    def csm(self) -> dict:
        return {f: c * (-1) ** self.codim for f, c in self.classes.items()}

    def problems(self, data: Sequence[FixedPointDatum]) -> list[str]:
        out = []
        for d in data:
            poly = self.classes.get(d.label)
            if poly is not None and not poly.is_homogeneous(len(d.weights)):
                out.append(f"[cc({self.name})]|_{d.label} = {poly.format()} is not homogeneous of degree {len(d.weights)}")
        return out


def toric_strata(P: DelzantPolytope, pieces: Sequence[tuple[str, Mapping]]) -> list[Stratum]:
    """Strata given as integer combinations of orbit closures ``{face key: coeff}``.

    Use :func:`~conecalc.toric.orbit_union_indicator` to turn a union of
    open orbits into that form.  The codimension is read off the largest
    closure with a nonzero coefficient.
    """
    from .toric import csm_of_constructible, toric_fixed_data

    data = toric_fixed_data(P)
    out = []
    for name, closures in pieces:
        live = {P.face(k).key: c for k, c in closures.items() if c}
        if not live:
            raise ValueError(f"stratum {name} is empty")
        codim = P.dim - max(P.face(k).dim for k in live)
        csm = csm_of_constructible(P, live)
        out.append(Stratum(name, codim, {data[i].label: c * (-1) ** codim for i, c in csm.items()}))
    return out


def strata_csm_total(strata: Sequence[Stratum], data: Sequence[FixedPointDatum]) -> dict:
    nv = data[0].rank + 1
    total = {d.label: Polynomial.zero(nv) for d in data}
    for st in strata:
        for f, c in st.csm().items():
            total[f] = total[f] + c
    return total


def strata_pipeline_sum(
    data: Sequence[FixedPointDatum],
    strata: Sequence[Stratum],
    s: Sequence,
    direction: Sequence | None = None,
) -> SignedConeSum:
    """``sum (-1)^codim`` of the projected cotangent sums of the strata.

    Raises :class:`ImproperProjectionError` when a stratum's flipped sum
    does not project properly.
    """
    s = as_vector(s)
    total = SignedConeSum(len(s))
    for st in strata:
        ext = cotangent_cone_sum(data, st.classes, s, direction)
        if ext.terms:
            total = total + project_drop_last(ext).scaled((-1) ** st.codim)
    return total


def flip_report(data: Sequence[FixedPointDatum], strata: Sequence[Stratum], s: Sequence) -> dict:
    """Properness of each stratum's sum flipped upward ``(s, K)`` and rightward ``(s, 0)``."""
    s = as_vector(s)
    up = upward_direction(data, s)
    keep = list(range(len(s)))
    out = {"upward": up, "strata": []}
    for st in strata:
        entry = {"name": st.name}
        for tag, v in (("upward", up), ("rightward", s + (Fraction(0),))):
            verdict = is_proper(cotangent_cone_sum(data, st.classes, s, v), keep=keep)
            entry[tag] = {"proper": verdict.proper, "certificate": verdict.certificate}
        out["strata"].append(entry)
    return out
