"""Scenario-level checks shared by the command line and the test suite.

Each check returns a :class:`Check`; a suite is a list of them.  Every
value recorded in ``details`` is exact and JSON-ready.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Callable, Sequence

from .charcycle import (
    TableInvariantError,
    cell_cc_table,
    cell_pipeline_sum,
    diagonal_conventions,
    flip_report,
    main_theorem_check,
    strata_csm_total,
    strata_pipeline_sum,
    weber_check,
)
from .cones import ImproperProjectionError, SignedConeSum
from .density import density_function
from .exact import NonGenericError, format_fraction, matvec
from .localization import (
    heckman_cone_sum,
    holomorphy_check,
    localization_series,
    moments_match,
)
from .measures import measures_equal
from .polynomial import Polynomial
from .sampling import GenericSampler
from .scenario import Scenario
from .toric import (
    DelzantPolytope,
    brianchon_gram_sum,
    csm_of_open_orbit,
    lattice_count,
    polytope_moments,
    zero_section_class,
)

DEFAULT_LATTICE_DILATIONS = (5, 10, 20)


@dataclass
class Check:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details}


def _fmt(v) -> list[str]:
    return [format_fraction(c) for c in v]


def _guard(name: str, fn: Callable[[], Check]) -> Check:
    # math errors inside a check are verdicts, not crashes
    try:
        return fn()
    except (ImproperProjectionError, TableInvariantError, NonGenericError, ValueError) as exc:
        return Check(name, False, {"error": f"{type(exc).__name__}: {exc}"})


def heckman_sum(sc: Scenario, v: Sequence | None = None) -> SignedConeSum:
    v = sc.direction_v if v is None else v
    if v is None:
        raise ValueError(f"scenario {sc.name} has no direction_v")
    return heckman_cone_sum(sc.fixed_points, v)


# ---------------------------------------------------------------------------
# measures against Lebesgue on a polytope


def lebesgue_check(
    name: str,
    cone_sum: SignedConeSum,
    P: DelzantPolytope,
    inside: int = 10,
    outside: int = 10,
    seed: int | None = None,
    scale: int = 1,
) -> Check:
    """Density ``scale`` at generic interior points of P and 0 at exterior ones."""
    sampler = GenericSampler(seed)
    box = P.bounding_box(margin=1)
    rows, want = [], {True: inside, False: outside}
    got = {True: 0, False: 0}
    passed = True
    f = density_function(cone_sum)
    while got[True] < inside or got[False] < outside:
        x, d = sampler.draw(box, f)
        side = P.contains_strictly(x)
        if got[side] >= want[side]:
            continue
        got[side] += 1
        expected = scale if side else 0
        ok = d == expected
        passed &= ok
        rows.append({"point": _fmt(x), "inside": side, "density": format_fraction(d), "expected": expected})
    return Check(name, passed, {"samples": rows})


def probe_check(sc: Scenario, cone_sum: SignedConeSum, name: str = "density probes") -> Check:
    rows, passed = [], True
    f = density_function(cone_sum)
    for pr in sc.probes:
        d = f(pr.point)
        passed &= d == pr.density
        rows.append({"point": _fmt(pr.point), "density": format_fraction(d), "expected": format_fraction(pr.density)})
    return Check(name, passed, {"probes": rows})


# ---------------------------------------------------------------------------
# suites


def heckman_checks(sc: Scenario, samples: int = 24, seed: int | None = None) -> list[Check]:
    out = []
    if sc.direction_v is None:
        return out
    H = heckman_sum(sc)
    if sc.probes:
        out.append(_guard("heckman density probes", lambda: probe_check(sc, H, "heckman density probes")))
    if sc.polytope is not None:
        out.append(_guard("heckman equals Lebesgue on P", lambda: lebesgue_check("heckman equals Lebesgue on P", H, sc.polytope, seed=seed)))
    for a, b in combinations(sc.directions_v, 2):
        name = f"v-independence {tuple(_fmt(a))} ~ {tuple(_fmt(b))}"

        def pair(a=a, b=b, name=name):
            eq = measures_equal(heckman_sum(sc, a), heckman_sum(sc, b), samples=samples, seed=seed)
            return Check(name, eq.equal, eq.to_json())

        out.append(_guard(name, pair))
    if sc.symmetries:
        out.append(_guard("symmetry invariance", lambda: symmetry_check(sc, H, samples, seed)))
    return out


def symmetry_check(sc: Scenario, H: SignedConeSum, samples: int, seed: int | None) -> Check:
    from .measures import bounding_box

    sampler = GenericSampler(seed)
    box = bounding_box([H])
    rows, passed = [], True
    f = density_function(H)
    for g in sc.symmetries:
        for _ in range(max(1, samples // len(sc.symmetries))):
            x, (a, b) = sampler.draw(box, lambda x: (f(x), f(matvec(g, x))))
            passed &= a == b
            rows.append({"point": _fmt(x), "density": format_fraction(a), "image_density": format_fraction(b)})
    return Check("symmetry invariance", passed, {"samples": rows})


def moment_checks(sc: Scenario, order: int = 4) -> list[Check]:
    out = []
    dirs = list(sc.directions_xi) or ([sc.xi0] if sc.xi0 is not None else [])
    if dirs:

        def holo():
            v = holomorphy_check(sc.fixed_points, dirs, order)
            return Check("holomorphy", v.passed, {"directions": v.details})

        out.append(_guard("holomorphy", holo))
    if sc.xi0 is not None and sc.direction_v is not None:

        def match():
            v = moments_match(sc.fixed_points, heckman_sum(sc), sc.xi0, order)
            return Check("localization vs cone-sum moments", v.passed, {"xi0": _fmt(sc.xi0), "coefficients": v.details})

        out.append(_guard("localization vs cone-sum moments", match))
    if sc.xi0 is not None and sc.polytope is not None:
        out.append(_guard("moments vs polytope integrals", lambda: polytope_moment_check(sc, order)))
    return out


def polytope_moment_check(sc: Scenario, order: int) -> Check:
    """Coefficient of ``t^j`` must be ``(-1)^j / j! * integral of <x, xi0>^j``."""
    series = localization_series(sc.fixed_points, sc.xi0, order)
    moments = polytope_moments(sc.polytope, sc.xi0, order)
    rows, passed = [], True
    for j, m in enumerate(moments):
        expected = Fraction((-1) ** j, factorial(j)) * m
        c = series.coefficient(j)
        passed &= c == expected
        rows.append({"power": j, "coefficient": format_fraction(c), "from_moment": format_fraction(expected)})
    return Check("moments vs polytope integrals", passed, {"xi0": _fmt(sc.xi0), "coefficients": rows})


def bg_checks(sc: Scenario, samples: int = 24, seed: int | None = None) -> list[Check]:
    P = sc.polytope
    if P is None:
        return []
    out = [_guard("Brianchon-Gram equals Lebesgue on P", lambda: lebesgue_check("Brianchon-Gram equals Lebesgue on P", brianchon_gram_sum(P), P, seed=seed))]

    def choices():
        base = brianchon_gram_sum(P)
        rows, passed = [], True
        for face in P.faces:
            if len(face.vertices) < 2:
                continue
            for vtx in sorted(face.vertices)[1:]:
                alt = brianchon_gram_sum(P, {face.key: vtx})
                eq = measures_equal(base, alt, samples=max(4, samples // 3), seed=seed)
                passed &= eq.equal
                rows.append({"face": sorted(face.vertices), "vertex": vtx, "equal": eq.equal})
        return Check("vertex-choice independence", passed, {"faces": rows})

    out.append(_guard("vertex-choice independence", choices))
    sign = (-1) ** P.dim
    out.append(
        _guard(
            "inward variant",
            lambda: lebesgue_check("inward variant", brianchon_gram_sum(P, inward=True), P.negated(), seed=seed, scale=sign),
        )
    )
    out.append(_guard("csm additivity", lambda: csm_additivity_check(P)))
    return out


def csm_additivity_check(P: DelzantPolytope) -> Check:
    nv = P.dim + 1
    total = {i: Polynomial.zero(nv) for i in range(len(P.vertices))}
    for face in P.faces:
        for i, c in csm_of_open_orbit(P, face).items():
            total[i] = total[i] + c
    rows, passed = [], True
    for i, c in total.items():
        z = zero_section_class(P, i)
        passed &= c == z
        rows.append({"vertex": _fmt(P.vertices[i]), "sum": c.format(), "zero_section": z.format()})
    return Check("csm additivity", passed, {"vertices": rows})


def lattice_checks(sc: Scenario, dilations: Sequence[int] = DEFAULT_LATTICE_DILATIONS) -> list[Check]:
    if sc.polytope is None:
        return []
    rows = [lattice_count(sc.polytope, d) for d in dilations]
    errors = [r.error for r in rows]
    decreasing = all(a > b for a, b in zip(errors, errors[1:]))
    return [Check("lattice-count convergence", decreasing, {"rows": [r.to_json() for r in rows]})]


def cc_checks(sc: Scenario, samples: int = 24, seed: int | None = None) -> list[Check]:
    out = []
    if sc.polytope is not None and sc.circle_s is not None:
        try:
            table = cell_cc_table(sc.polytope, sc.circle_s)
        except (TableInvariantError, NonGenericError) as exc:
            return [Check("cell class table", False, {"error": str(exc)})]
        out.append(Check("cell class table", True, table.to_json()))
        w = weber_check(table)
        out.append(Check("Weber divisibility", w.passed, w.details))
        conv = diagonal_conventions(table)
        out.append(Check("diagonal convention", conv["euler_class"], conv))
        for p in table.labels:
            name = f"main theorem at {p}"
            out.append(_guard(name, lambda p=p, name=name: _verdict(name, main_theorem_check(table, p, seed=seed))))
        out.append(
            _guard(
                "signed cell sum equals Lebesgue on P",
                lambda: lebesgue_check("signed cell sum equals Lebesgue on P", cell_pipeline_sum(table), sc.polytope, seed=seed),
            )
        )
    if sc.strata:
        out.extend(strata_checks(sc, samples, seed))
    return out


def _verdict(name: str, v) -> Check:
    return Check(name, v.passed, v.details)


def strata_checks(sc: Scenario, samples: int = 24, seed: int | None = None) -> list[Check]:
    data = sc.fixed_points
    out = []

    def zero_section():
        total = strata_csm_total(sc.strata, data)
        rows, passed = [], True
        for d in data:
            nv = d.rank + 1
            z = Polynomial.product(
                [Polynomial.hbar(nv) - Polynomial.linear_form(w, nv) for w in d.weights], nv
            )
            passed &= total[d.label] == z
            rows.append({"fixed_point": d.label, "sum": total[d.label].format(), "zero_section": z.format()})
        return Check("strata csm sum equals zero section", passed, {"fixed_points": rows})

    out.append(_guard("strata csm sum equals zero section", zero_section))
    s = sc.circle_s if sc.circle_s is not None else sc.direction_v
    if s is None:
        return out

    def flips():
        rep = flip_report(data, sc.strata, s)
        expected_bad = set(sc.expect.get("upward_improper", []))
        passed = True
        for entry in rep["strata"]:
            passed &= entry["rightward"]["proper"]
            if entry["name"] in expected_bad:
                passed &= not entry["upward"]["proper"] and entry["upward"]["certificate"] is not None
        rep["upward"] = _fmt(rep["upward"])
        return Check("flip properness", passed, rep)

    out.append(_guard("flip properness", flips))

    def pipeline():
        total = strata_pipeline_sum(data, sc.strata, s)
        ref = heckman_cone_sum(data, s)
        eq = measures_equal(total, ref, samples=samples, seed=seed)
        details = eq.to_json()
        if sc.probes:
            details["probes"] = probe_check(sc, total).details["probes"]
            eq_ok = eq.equal and all(r["density"] == r["expected"] for r in details["probes"])
        else:
            eq_ok = eq.equal
        return Check("strata pipeline equals heckman", eq_ok, details)

    out.append(_guard("strata pipeline equals heckman", pipeline))
    return out


def verify(sc: Scenario, samples: int = 24, seed: int | None = None, order: int = 4) -> list[Check]:
    checks = []
    checks += heckman_checks(sc, samples, seed)
    checks += moment_checks(sc, order)
    checks += bg_checks(sc, samples, seed)
    checks += cc_checks(sc, samples, seed)
    if sc.polytope is not None and sc.polytope.dim <= 2:
        checks += lattice_checks(sc)
    return checks
