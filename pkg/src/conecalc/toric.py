"""Delzant polytopes: faces, toric fixed-point data, Brianchon-Gram sums,
orbit conormal classes, CSM classes of constructible functions, lattice
point counts and exact moments.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, factorial, floor
from typing import Callable, Iterable, Mapping, Sequence

from .cones import ConeTerm, SignedConeSum
from .exact import (
    as_fraction,
    as_vector,
    det,
    dot,
    format_fraction,
    integer_direction,
    primitive,
    rank,
    solve_linear,
    vscale,
    vsub,
)
from .localization import FixedPointDatum
from .polynomial import Polynomial


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    vertices: frozenset
    dim: int
    facets: frozenset

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.vertices))

    def __le__(self, other: "Face") -> bool:
        return self.vertices <= other.vertices


@dataclass(frozen=True)
class FaceDatum:
    face: Face
    vertex: int
    interior_point: tuple
    tangent: tuple
    outward: tuple


def _affine_rank(points: Sequence[tuple]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return rank([vsub(p, base) for p in points[1:]])


class DelzantPolytope:
    """A full-dimensional simple lattice polytope with unimodular vertex cones.

    ``facets`` are pairs ``(a, b)`` meaning ``<a, x> >= b`` with primitive
    integer ``a``.  When omitted they are derived from the vertices.
    Construction cross-checks the two descriptions and the Delzant
    condition, and raises :class:`PolytopeError` on any mismatch.
    """

    def __init__(self, vertices: Sequence[Sequence], facets: Sequence[tuple] | None = None, name: str = ""):
        self.name = name
        self.vertices = [as_vector(v) for v in vertices]
        if not self.vertices:
            raise PolytopeError("no vertices")
        self.dim = len(self.vertices[0])
        if any(len(v) != self.dim for v in self.vertices):
            raise PolytopeError("vertices of mixed dimension")
        if len(set(self.vertices)) != len(self.vertices):
            raise PolytopeError("repeated vertex")
        if _affine_rank(self.vertices) != self.dim:
            raise PolytopeError("polytope is not full-dimensional")
        if facets is None:
            facets = self._facets_from_vertices()
        self.facets = [(primitive(a), as_fraction(b)) for a, b in facets]
        self._validate()
        self.faces = self._face_lattice()
        self._edges = {i: self._edges_at(i) for i in range(len(self.vertices))}
        for i, edges in self._edges.items():
            if len(edges) != self.dim:
                raise PolytopeError(f"vertex {self.vertices[i]} is not simple")
            if abs(det([list(e) for e in edges.values()])) != 1:
                raise PolytopeError(f"vertex cone at {self.vertices[i]} is not unimodular (not Delzant)")

    # construction helpers

    def _facets_from_vertices(self) -> list[tuple]:
        found = {}
        n = self.dim
        for idx in combinations(range(len(self.vertices)), n):
            pts = [self.vertices[i] for i in idx]
            if _affine_rank(pts) != n - 1:
                continue
            diffs = [vsub(p, pts[0]) for p in pts[1:]]
            sol = solve_linear(diffs, [0] * len(diffs)) if diffs else None
            normal = sol.directions[0] if diffs else (Fraction(1),)
            if diffs and len(sol.directions) != 1:
                continue
            a = integer_direction(normal)
            b = dot(a, pts[0])
            vals = [dot(a, v) - b for v in self.vertices]
            if all(x >= 0 for x in vals):
                found[(a, b)] = None
            elif all(x <= 0 for x in vals):
                found[(vscale(-1, a), -b)] = None
        return [(tuple(int(c) for c in a), b) for a, b in found]

    def _validate(self) -> None:
        n = self.dim
        for a, b in self.facets:
            if len(a) != n:
                raise PolytopeError("facet normal of the wrong dimension")
        for v in self.vertices:
            for a, b in self.facets:
                if dot(a, v) < b:
                    raise PolytopeError(f"vertex {v} violates facet {a}·x >= {b}")
        self.tight = []
        for v in self.vertices:
            t = frozenset(j for j, (a, b) in enumerate(self.facets) if dot(a, v) == b)
            if len(t) != n or rank([self.facets[j][0] for j in t]) != n:
                raise PolytopeError(f"vertex {v} is not a simple vertex of the H-description")
            self.tight.append(t)
        for j, (a, b) in enumerate(self.facets):
            pts = [v for i, v in enumerate(self.vertices) if j in self.tight[i]]
            if not pts or _affine_rank(pts) != n - 1:
                raise PolytopeError(f"inequality {a}·x >= {b} does not cut out a facet")
        # double description: every basic feasible point must be a listed vertex
        vset = set(self.vertices)
        for idx in combinations(range(len(self.facets)), n):
            rows = [self.facets[j][0] for j in idx]
            sol = solve_linear(rows, [self.facets[j][1] for j in idx])
            if sol.kind != "unique":
                continue
            x = sol.point
            if all(dot(a, x) >= b for a, b in self.facets) and x not in vset:
                raise PolytopeError(f"H-description has an unlisted vertex {x}")

    def _face_lattice(self) -> list[Face]:
        all_v = frozenset(range(len(self.vertices)))
        seen: dict[frozenset, frozenset] = {all_v: frozenset()}
        frontier = [all_v]
        while frontier:
            nxt = []
            for vs in frontier:
                for j in range(len(self.facets)):
                    sub = frozenset(i for i in vs if j in self.tight[i])
                    if sub and sub not in seen:
                        seen[sub] = frozenset(k for k in range(len(self.facets)) if all(k in self.tight[i] for i in sub))
                        nxt.append(sub)
            frontier = nxt
        faces = [
            Face(vs, _affine_rank([self.vertices[i] for i in sorted(vs)]), fs) for vs, fs in seen.items()
        ]
        faces.sort(key=lambda f: (f.dim, f.key))
        return faces

    def _edges_at(self, i: int) -> dict[int, tuple]:
        out = {}
        for f in self.faces:
            if f.dim == 1 and i in f.vertices:
                (j,) = f.vertices - {i}
                out[j] = primitive(vsub(self.vertices[j], self.vertices[i]))
        return out

    # queries

    def edges_at(self, i: int) -> dict[int, tuple]:
        """Primitive edge directions out of vertex ``i``, keyed by the far endpoint."""
        return dict(self._edges[i])

    def face(self, vertex_indices: Sequence[int]) -> Face:
        key = frozenset(vertex_indices)
        for f in self.faces:
            if f.vertices == key:
                return f
        raise KeyError(f"no face with vertices {sorted(key)}")

    @property
    def whole(self) -> Face:
        return self.faces[-1]

    def faces_of(self, face: Face, dim: int | None = None) -> list[Face]:
        return [f for f in self.faces if f <= face and (dim is None or f.dim == dim)]

    def contains_strictly(self, x: Sequence) -> bool:
        x = as_vector(x)
        return all(dot(a, x) > b for a, b in self.facets)

    def on_boundary_hyperplane(self, x: Sequence) -> bool:
        x = as_vector(x)
        return any(dot(a, x) == b for a, b in self.facets)

    def negated(self) -> "DelzantPolytope":
        return DelzantPolytope([vscale(-1, v) for v in self.vertices], [(vscale(-1, a), b) for a, b in self.facets])

    def bounding_box(self, margin=0) -> list[tuple[Fraction, Fraction]]:
        return [
            (min(v[i] for v in self.vertices) - margin, max(v[i] for v in self.vertices) + margin)
            for i in range(self.dim)
        ]

    def to_json(self) -> dict:
        return {
            "vertices": [[format_fraction(c) for c in v] for v in self.vertices],
            "facets": [{"a": list(a), "b": format_fraction(b)} for a, b in self.facets],
        }

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "DelzantPolytope":
        facets = data.get("facets")
        if facets is not None:
            facets = [(tuple(f["a"]), f["b"]) for f in facets]
        return cls(data["vertices"], facets, name=name)

    def __repr__(self):
        return f"DelzantPolytope({self.name or [tuple(map(str, v)) for v in self.vertices]})"


def face_lattice(P: DelzantPolytope) -> list[Face]:
    return list(P.faces)


def face_datum(P: DelzantPolytope, face: Face, vertex: int | None = None) -> FaceDatum:
    if vertex is None:
        vertex = min(face.vertices)
    if vertex not in face.vertices:
        raise ValueError(f"vertex {vertex} is not on the face {face.key}")
    edges = P.edges_at(vertex)
    tangent = tuple(e for j, e in sorted(edges.items()) if j in face.vertices)
    outward = tuple(e for j, e in sorted(edges.items()) if j not in face.vertices)
    pts = [P.vertices[i] for i in sorted(face.vertices)]
    bary = tuple(sum(c) / len(pts) for c in zip(*pts))
    return FaceDatum(face, vertex, bary, tangent, outward)


def toric_fixed_data(P: DelzantPolytope) -> list[FixedPointDatum]:
    """One datum per vertex: moment = vertex, weights = primitive edges out of it."""
    return [
        FixedPointDatum(f"v{i}", v, tuple(e for _, e in sorted(P.edges_at(i).items())))
        for i, v in enumerate(P.vertices)
    ]


def brianchon_gram_sum(
    P: DelzantPolytope,
    vertex_choice: Callable[[Face], int] | Mapping | None = None,
    inward: bool = False,
) -> SignedConeSum:
    """Alternating sum over faces of lineal cones.

    The face F contributes ``(-1)^codim F`` times Lebesgue measure on
    ``mu_F + T F - cone(W)``, where W are the primitive edges leaving F at
    the chosen vertex.  With ``inward=True`` the apexes are negated while
    the generators stay put, which describes the polytope ``-P`` with
    inward-pointing cones; that sum is ``(-1)^dim`` times Lebesgue on ``-P``.
    """
    terms = []
    for face in P.faces:
        if vertex_choice is None:
            v = None
        elif callable(vertex_choice):
            v = vertex_choice(face)
        else:
            v = vertex_choice.get(face.key)
        fd = face_datum(P, face, v)
        apex = vscale(-1, fd.interior_point) if inward else fd.interior_point
        terms.append(
            ConeTerm(
                (-1) ** (P.dim - face.dim),
                apex,
                rays=tuple(vscale(-1, w) for w in fd.outward),
                lineality=fd.tangent,
            )
        )
    return SignedConeSum(P.dim, tuple(terms))


def _slots(P: DelzantPolytope) -> int:
    return P.dim + 1


def orbit_conormal_class(P: DelzantPolytope, face: Face, vertex: int) -> Polynomial:
    """Restriction of the conormal bundle of the orbit closure of ``face`` to ``vertex``.

    Edges leaving the face contribute their weight, edges along it the
    fiber weight ``hbar - lam``.  Zero when the vertex is not on the face.
    """
    nv = _slots(P)
    if vertex not in face.vertices:
        return Polynomial.zero(nv)
    hbar = Polynomial.hbar(nv)
    out = Polynomial.constant(nv)
    for j, e in P.edges_at(vertex).items():
        lam = Polynomial.linear_form(e, nv)
        out = out * ((hbar - lam) if j in face.vertices else lam)
    return out


def zero_section_class(P: DelzantPolytope, vertex: int) -> Polynomial:
    return orbit_conormal_class(P, P.whole, vertex)


def open_orbit_indicator(P: DelzantPolytope, face: Face) -> dict[tuple, int]:
    """Möbius inversion: the open orbit of ``face`` as a combination of closures."""
    return {g.key: (-1) ** (face.dim - g.dim) for g in P.faces_of(face)}


def _face_from_key(P: DelzantPolytope, key) -> Face:
    if isinstance(key, Face):
        return key
    return P.face(key)


def csm_of_constructible(P: DelzantPolytope, coeffs: Mapping) -> dict[int, Polynomial]:
    """Per-vertex restrictions of csm(sum c_F 1_{closure of orbit F}).

    Each closure is smooth and closed, so its characteristic cycle is its
    conormal bundle and ``csm(1_F) = (-1)^codim_C F [C_M F]``.
    """
    nv = _slots(P)
    out = {i: Polynomial.zero(nv) for i in range(len(P.vertices))}
    for key, c in coeffs.items():
        if not c:
            continue
        face = _face_from_key(P, key)
        sign = (-1) ** (P.dim - face.dim)
        for i in face.vertices:
            out[i] = out[i] + orbit_conormal_class(P, face, i) * (sign * c)
    return out


def csm_of_open_orbit(P: DelzantPolytope, face: Face) -> dict[int, Polynomial]:
    return csm_of_constructible(P, open_orbit_indicator(P, face))


def orbit_union_indicator(P: DelzantPolytope, faces: Iterable) -> dict[tuple, int]:
    """A disjoint union of open orbits as a combination of closures."""
    out: dict[tuple, int] = {}
    for key in faces:
        for g, c in open_orbit_indicator(P, _face_from_key(P, key)).items():
            out[g] = out.get(g, 0) + c
    return {g: c for g, c in out.items() if c}


# lattice points and exact moments


@dataclass(frozen=True)
class LatticeCount:
    d: int
    count: int
    scaled: Fraction
    volume: Fraction
    error: Fraction

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "count": self.count,
            "count_over_d^n": format_fraction(self.scaled),
            "volume": format_fraction(self.volume),
            "abs_error": format_fraction(self.error),
        }


def lattice_count(P: DelzantPolytope, d: int) -> LatticeCount:
    """Number of lattice points in ``d P``, compared with the volume of P."""
    if d < 1:
        raise ValueError("dilation must be a positive integer")
    box = [(ceil(lo * d), floor(hi * d)) for lo, hi in P.bounding_box()]
    count = 0
    for x in product(*(range(lo, hi + 1) for lo, hi in box)):
        if all(dot(a, x) >= d * b for a, b in P.facets):
            count += 1
    scaled = Fraction(count, d ** P.dim)
    vol = polytope_volume(P)
    return LatticeCount(d, count, scaled, vol, abs(scaled - vol))


def triangulate(P: DelzantPolytope, face: Face | None = None) -> list[list[int]]:
    """Pulling triangulation from the lowest-index vertex of each face."""
    face = P.whole if face is None else face
    if face.dim == 0:
        return [sorted(face.vertices)]
    v0 = min(face.vertices)
    out = []
    for g in P.faces_of(face, face.dim - 1):
        if v0 in g.vertices:
            continue
        for s in triangulate(P, g):
            out.append([v0] + s)
    return out


def _complete_homogeneous(values: Sequence[Fraction], j: int) -> Fraction:
    h = [Fraction(1)] + [Fraction(0)] * j
    for a in values:
        for k in range(1, j + 1):
            h[k] = h[k] + a * h[k - 1]
    return h[j]


def polytope_volume(P: DelzantPolytope) -> Fraction:
    return polytope_moments(P, (0,) * P.dim, 0)[0]


def polytope_moments(P: DelzantPolytope, xi0: Sequence, k: int) -> list[Fraction]:
    """``[integral over P of <x, xi0>^j dx for j = 0..k]``, exactly."""
    xi0 = as_vector(xi0)
    n = P.dim
    out = [Fraction(0)] * (k + 1)
    for simplex in triangulate(P):
        pts = [P.vertices[i] for i in simplex]
        vol = abs(det([vsub(p, pts[0]) for p in pts[1:]])) / factorial(n) if n else Fraction(1)
        vals = [dot(p, xi0) for p in pts]
        for j in range(k + 1):
            out[j] += vol * factorial(j) * factorial(n) / factorial(j + n) * _complete_homogeneous(vals, j)
    return out
