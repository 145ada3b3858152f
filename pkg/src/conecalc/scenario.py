"""Scenario files: JSON with rationals written as ``"p/q"`` strings."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .charcycle import Stratum, toric_strata
from .exact import as_fraction, as_vector, format_fraction
from .localization import FixedPointDatum
from .polynomial import Polynomial
from .toric import DelzantPolytope, PolytopeError, orbit_union_indicator, toric_fixed_data

BUILTINS = ("cp1", "cp2", "cp2-bg", "cp2-w012", "cp2-nonmorse", "trapezoid", "square", "hexagon-gl3")


class ScenarioError(ValueError):
    """The scenario file is malformed or inconsistent."""


def _vec(v) -> list[str]:
    return [format_fraction(c) for c in v]


@dataclass
class Probe:
    point: tuple
    density: Fraction


@dataclass
class Scenario:
    name: str
    rank: int
    description: str = ""
    polytope: DelzantPolytope | None = None
    fixed_points: list = field(default_factory=list)
    direction_v: tuple | None = None
    directions_v: list = field(default_factory=list)
    xi0: tuple | None = None
    directions_xi: list = field(default_factory=list)
    circle_s: tuple | None = None
    strata: list = field(default_factory=list)
    strata_spec: list = field(default_factory=list)
    probes: list = field(default_factory=list)
    symmetries: list = field(default_factory=list)
    expect: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    explicit_fixed_points: bool = False
    explicit_facets: bool = False

    @property
    def is_toric(self) -> bool:
        return self.polytope is not None

    def param(self, key: str, default: Any = None) -> Any:
        return self.params.get(key, default)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "rank": self.rank}
        if self.description:
            out["description"] = self.description
        if self.polytope is not None:
            poly = self.polytope.to_json()
            if not self.explicit_facets:
                del poly["facets"]
            out["polytope"] = poly
        if self.explicit_fixed_points:
            out["fixed_points"] = []
            for d in self.fixed_points:
                entry = {"label": d.label, "moment": _vec(d.moment), "weights": [_vec(w) for w in d.weights]}
                if d.numerator != Polynomial.constant(self.rank + 1):
                    entry["numerator"] = d.numerator.to_json()
                out["fixed_points"].append(entry)
        if self.direction_v is not None:
            out["direction_v"] = _vec(self.direction_v)
        if self.directions_v:
            out["directions_v"] = [_vec(v) for v in self.directions_v]
        if self.xi0 is not None:
            out["xi0"] = _vec(self.xi0)
        if self.directions_xi:
            out["directions_xi"] = [_vec(v) for v in self.directions_xi]
        if self.circle_s is not None:
            out["circle_s"] = _vec(self.circle_s)
        if self.strata_spec:
            out["strata"] = self.strata_spec
        elif self.strata:
            out["strata"] = [
                {"name": st.name, "codim": st.codim, "classes": {f: p.to_json() for f, p in st.classes.items()}}
                for st in self.strata
            ]
        if self.probes:
            out["probes"] = [{"point": _vec(p.point), "density": format_fraction(p.density)} for p in self.probes]
        if self.symmetries:
            out["symmetries"] = [[_vec(row) for row in m] for m in self.symmetries]
        if self.expect:
            out["expect"] = self.expect
        if self.params:
            out["params"] = self.params
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    def digest(self) -> str:
        canon = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _need(data: dict, key: str):
    if key not in data:
        raise ScenarioError(f"missing field {key!r}")
    return data[key]


def _vector(value, rank: int, what: str) -> tuple:
    try:
        v = as_vector(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ScenarioError(f"{what}: {exc}") from None
    if len(v) != rank:
        raise ScenarioError(f"{what} has length {len(v)}, expected {rank}")
    return v


def from_json(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    name = str(_need(data, "name"))
    rank = _need(data, "rank")
    if not isinstance(rank, int) or rank < 1:
        raise ScenarioError("rank must be a positive integer")
    sc = Scenario(name=name, rank=rank, description=data.get("description", ""))
    known = {
        "name", "rank", "description", "polytope", "fixed_points", "direction_v", "directions_v", "xi0",
        "directions_xi", "circle_s", "strata", "probes", "symmetries", "expect", "params",
    }
    unknown = set(data) - known
    if unknown:
        raise ScenarioError(f"unknown fields {sorted(unknown)}")
    try:
        if "polytope" in data:
            sc.polytope = DelzantPolytope.from_json(data["polytope"], name=name)
            sc.explicit_facets = "facets" in data["polytope"]
            if sc.polytope.dim != rank:
                raise ScenarioError("polytope dimension differs from rank")
            sc.fixed_points = toric_fixed_data(sc.polytope)
        if "fixed_points" in data:
            if sc.polytope is not None:
                raise ScenarioError("give either a polytope or fixed_points, not both")
            sc.explicit_fixed_points = True
            for fp in data["fixed_points"]:
                moment = _vector(_need(fp, "moment"), rank, f"moment of {fp.get('label')}")
                weights = tuple(_vector(w, rank, f"weight at {fp.get('label')}") for w in _need(fp, "weights"))
                num = fp.get("numerator")
                num = Polynomial.from_json(num, rank + 1) if num is not None else None
                sc.fixed_points.append(FixedPointDatum(str(_need(fp, "label")), moment, weights, num))
    except (PolytopeError, KeyError, TypeError) as exc:
        raise ScenarioError(str(exc)) from None
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(str(exc)) from None
    if not sc.fixed_points:
        raise ScenarioError("scenario needs a polytope or fixed_points")
    labels = [d.label for d in sc.fixed_points]
    if len(set(labels)) != len(labels):
        raise ScenarioError("fixed point labels are not unique")

    if "direction_v" in data:
        sc.direction_v = _vector(data["direction_v"], rank, "direction_v")
    sc.directions_v = [_vector(v, rank, "directions_v entry") for v in data.get("directions_v", [])]
    if "xi0" in data:
        sc.xi0 = _vector(data["xi0"], rank, "xi0")
    sc.directions_xi = [_vector(v, rank, "directions_xi entry") for v in data.get("directions_xi", [])]
    if "circle_s" in data:
        sc.circle_s = _vector(data["circle_s"], rank, "circle_s")

    strata = data.get("strata", [])
    if strata and all("faces" in st or "closures" in st for st in strata):
        if sc.polytope is None:
            raise ScenarioError("face-based strata need a polytope")
        pieces = []
        try:
            for st in strata:
                if "faces" in st:
                    faces = [tuple(sorted(k)) for k in st["faces"]]
                    spec = {"name": st["name"], "faces": [list(k) for k in faces]}
                    closures = orbit_union_indicator(sc.polytope, faces)
                else:
                    closures = {}
                    for item in st["closures"]:
                        key = sc.polytope.face(item["face"]).key
                        closures[key] = closures.get(key, 0) + int(item["coeff"])
                    spec = {
                        "name": st["name"],
                        "closures": [{"face": sorted(i["face"]), "coeff": int(i["coeff"])} for i in st["closures"]],
                    }
                sc.strata_spec.append(spec)
                pieces.append((str(st["name"]), closures))
            sc.strata = toric_strata(sc.polytope, pieces)
        except KeyError as exc:
            raise ScenarioError(f"bad stratum: {exc}") from None
    else:
        for st in strata:
            classes = {}
            for label, poly in _need(st, "classes").items():
                if label not in labels:
                    raise ScenarioError(f"stratum {st.get('name')} names unknown fixed point {label}")
                try:
                    classes[label] = Polynomial.from_json(poly, rank + 1)
                except (ValueError, TypeError, KeyError) as exc:
                    raise ScenarioError(f"class of {st.get('name')} at {label}: {exc}") from None
            stratum = Stratum(str(_need(st, "name")), int(_need(st, "codim")), classes)
            problems = stratum.problems(sc.fixed_points)
            if problems:
                raise ScenarioError("; ".join(problems))
            sc.strata.append(stratum)

    for pr in data.get("probes", []):
        sc.probes.append(Probe(_vector(_need(pr, "point"), rank, "probe point"), as_fraction(_need(pr, "density"))))
    for m in data.get("symmetries", []):
        if len(m) != rank:
            raise ScenarioError("symmetry matrix has the wrong size")
        sc.symmetries.append([_vector(row, rank, "symmetry row") for row in m])
    sc.expect = dict(data.get("expect", {}))
    sc.params = dict(data.get("params", {}))
    return sc


def loads(text: str) -> Scenario:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON: {exc}") from None
    return from_json(data)


def builtin_text(name: str) -> str:
    if name not in BUILTINS:
        raise ScenarioError(f"no built-in scenario {name!r}")
    return resources.files("conecalc.scenarios").joinpath(f"{name}.json").read_text()


def load(source: str) -> Scenario:
    """Load a scenario from a path, or by built-in name (with or without ``.json``)."""
    path = Path(source)
    if path.is_file():
        return loads(path.read_text())
    stem = path.name[:-5] if path.name.endswith(".json") else path.name
    if stem in BUILTINS:
        return loads(builtin_text(stem))
    raise ScenarioError(f"no scenario file or built-in named {source!r}")


def builtin_examples() -> dict[str, Scenario]:
    return {name: loads(builtin_text(name)) for name in BUILTINS}


def write_examples(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name in BUILTINS:
        p = directory / f"{name}.json"
        p.write_text(builtin_text(name))
        out.append(p)
    return out
