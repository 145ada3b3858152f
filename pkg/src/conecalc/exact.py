"""Exact rational linear algebra.

Everything here works on ``fractions.Fraction`` (or ``int``) entries and
never touches floating point.  Matrices are lists of rows.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple
Matrix = Sequence[Sequence]


class NonGenericError(ValueError):
    """A direction or point hit a wall it was required to avoid."""


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to ``Fraction``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def as_vector(values: Iterable) -> tuple:
    return tuple(as_fraction(v) for v in values)


def format_fraction(q: Fraction) -> str:
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def transpose(rows: Matrix) -> list[list]:
    return [list(col) for col in zip(*rows)]


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    ints = []
    for x in v:
        q = as_fraction(x)
        if q.denominator != 1:
            raise ValueError(f"primitive() needs an integer vector, got {tuple(v)}")
        ints.append(q.numerator)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("the zero vector has no primitive direction")
    return tuple(x // g for x in ints)


def integer_direction(v: Sequence) -> tuple[int, ...]:
    """Smallest integer vector that is a positive multiple of ``v``."""
    qs = [as_fraction(x) for x in v]
    lcm = 1
    for q in qs:
        lcm = lcm * q.denominator // gcd(lcm, q.denominator)
    return primitive([int(q * lcm) for q in qs])


def _rref(rows: list[list[Fraction]], ncols: int, column_order: Sequence[int] | None = None):
    """Row reduce in place; returns the list of pivot columns.

    ``column_order`` decides which columns are tried first as pivots, which
    fixes the particular solution picked for underdetermined systems.
    """
    order = list(range(ncols)) if column_order is None else list(column_order)
    pivots = []
    r = 0
    for c in order:
        if r == len(rows):
            break
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


@dataclass(frozen=True)
class Solution:
    """Solution set of a linear system ``A x = b``.

    ``kind`` is ``"unique"``, ``"family"`` or ``"none"``.  For a family,
    ``point`` is the particular solution with all free variables zero and
    ``directions`` spans the kernel.
    """

    kind: str
    point: tuple | None = None
    directions: tuple = field(default_factory=tuple)

    @property
    def dimension(self) -> int:
        return -1 if self.kind == "none" else len(self.directions)


def solve_linear(matrix: Matrix, rhs: Sequence, column_order: Sequence[int] | None = None) -> Solution:
    """Exact solution set of ``matrix @ x = rhs``."""
    m = len(matrix)
    if len(rhs) != m:
        raise ValueError("matrix and right-hand side have different row counts")
    ncols = len(matrix[0]) if m else 0
    if any(len(row) != ncols for row in matrix):
        raise ValueError("ragged matrix")
    rows = [[as_fraction(x) for x in row] + [as_fraction(b)] for row, b in zip(matrix, rhs)]
    pivots = _rref(rows, ncols, column_order)
    for row in rows[len(pivots):]:
        if row[-1] != 0:
            return Solution("none")
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][-1]
    free = [c for c in range(ncols) if c not in pivots]
    directions = []
    for fc in free:
        d = [Fraction(0)] * ncols
        d[fc] = Fraction(1)
        for r, c in enumerate(pivots):
            d[c] = -rows[r][fc]
        directions.append(tuple(d))
    kind = "unique" if not free else "family"
    return Solution(kind, tuple(x), tuple(directions))


def rank(matrix: Matrix) -> int:
    if not matrix:
        return 0
    rows = [[as_fraction(x) for x in row] for row in matrix]
    return len(_rref(rows, len(rows[0])))


def nullspace(matrix: Matrix, ncols: int | None = None) -> list[tuple]:
    """Basis of the right kernel of ``matrix``."""
    if not matrix:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    sol = solve_linear(matrix, [0] * len(matrix))
    return list(sol.directions)


def det(matrix: Matrix) -> Fraction:
    """Exact determinant by fraction-valued elimination."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    a = [[as_fraction(x) for x in row] for row in matrix]
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            result = -result
        result *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def inverse(matrix: Matrix) -> list[list[Fraction]]:
    n = len(matrix)
    rows = [[as_fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(matrix)]
    pivots = _rref(rows, n)
    if len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in rows]


def matvec(matrix: Matrix, v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in matrix)


def column_hermite(matrix: Matrix) -> tuple[list[list[int]], list[list[int]]]:
    """Integer column reduction ``A U = H`` with ``U`` unimodular.

    ``H`` is lower echelon: the first ``rank`` columns carry the pivots and
    the remaining columns are zero, so the matching columns of ``U`` are a
    basis of the integer kernel of ``A``.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    a = [[int(as_fraction(x)) for x in row] for row in matrix]
    for row, orig in zip(a, matrix):
        if any(as_fraction(x).denominator != 1 for x in orig):
            raise ValueError("column_hermite needs an integer matrix")
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(src: int, dst: int, k: int) -> None:
        # column dst -= k * column src
        for row in a:
            row[dst] -= k * row[src]
        for row in u:
            row[dst] -= k * row[src]

    def swap(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    c = 0
    for r in range(m):
        if c == n:
            break
        while True:
            nz = [j for j in range(c, n) if a[r][j] != 0]
            if not nz:
                break
            j_min = min(nz, key=lambda j: abs(a[r][j]))
            swap(c, j_min)
            done = True
            for j in range(c + 1, n):
                if a[r][j] != 0:
                    col_op(c, j, a[r][j] // a[r][c])
                    if a[r][j] != 0:
                        done = False
            if done:
                break
        if a[r][c] != 0:
            if a[r][c] < 0:
                for row in a:
                    row[c] = -row[c]
                for row in u:
                    row[c] = -row[c]
            c += 1
    return a, u


def integer_solve(matrix: Matrix, rhs: Sequence) -> tuple[int, ...] | None:
    """An integer solution of ``A x = b``, or None when there is none."""
    if not matrix:
        return ()
    h, u = column_hermite(matrix)
    n = len(matrix[0])
    m = len(matrix)
    b = [as_fraction(x) for x in rhs]
    z = [0] * n
    c = 0
    for r in range(m):
        acc = b[r] - sum(h[r][j] * z[j] for j in range(c))
        if c < n and h[r][c] != 0:
            q = acc / h[r][c]
            if q.denominator != 1:
                return None
            z[c] = int(q)
            c += 1
        elif acc != 0:
            return None
    return tuple(sum(u[i][j] * z[j] for j in range(n)) for i in range(n))


def saturated_basis(vectors: Sequence[Sequence]) -> list[tuple[int, ...]]:
    """Lattice basis of ``span(vectors) ∩ Z^n``."""
    vectors = [as_vector(v) for v in vectors]
    if not vectors:
        return []
    n = len(vectors[0])
    r = rank(vectors)
    if r == 0:
        return []
    if r == n:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    normals = [integer_direction(w) for w in nullspace(vectors)]
    _, u = column_hermite(normals)
    k = rank(normals)
    return [tuple(u[i][j] for i in range(n)) for j in range(k, n)]


def lattice_covolume_sq(basis: Sequence[Sequence[int]]) -> Fraction:
    """Squared covolume (Gram determinant) of a lattice basis."""
    gram = [[dot(a, b) for b in basis] for a in basis]
    return det(gram)
