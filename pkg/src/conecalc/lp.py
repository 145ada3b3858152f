"""Exact linear-programming feasibility (phase-one simplex, Bland's rule)."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import as_fraction, dot


def feasible_point(a: Sequence[Sequence], b: Sequence) -> tuple | None:
    """A point of ``{x >= 0 : A x = b}`` or None if the set is empty.

    Phase one of the simplex method with one artificial variable per row.
    Bland's smallest-index rule rules out cycling, and all pivots are exact.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    rows = []
    for i, (row, rhs) in enumerate(zip(a, b)):
        row = [as_fraction(x) for x in row]
        rhs = as_fraction(rhs)
        if rhs < 0:
            row, rhs = [-x for x in row], -rhs
        rows.append(row + [Fraction(int(i == j)) for j in range(m)] + [rhs])
    # rows[i] indexes columns 0..n-1 (real), n..n+m-1 (artificial), last = rhs
    basis = [n + i for i in range(m)]
    width = n + m
    # reduced-cost row for minimising the sum of artificials
    cost = [Fraction(0)] * (width + 1)
    for r in rows:
        for j in range(width + 1):
            cost[j] -= r[j]
    for j in range(n, width):
        cost[j] += 1

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        best = None
        for i, r in enumerate(rows):
            if r[entering] > 0:
                ratio = r[-1] / r[entering]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            # unbounded below cannot happen for phase one; guard anyway
            break
        i = best[1]
        piv = rows[i][entering]
        rows[i] = [x / piv for x in rows[i]]
        for k, r in enumerate(rows):
            if k != i and r[entering] != 0:
                f = r[entering]
                rows[k] = [x - f * y for x, y in zip(r, rows[i])]
        f = cost[entering]
        cost = [x - f * y for x, y in zip(cost, rows[i])]
        basis[i] = entering

    if -cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][-1]
    return tuple(x)


def half_space_witness(vectors: Sequence[Sequence], dim: int) -> tuple[bool, tuple]:
    """Decide whether all ``vectors`` lie in a common open half-space.

    Returns ``(True, v)`` with ``<v, g> > 0`` for every g, or ``(False, y)``
    where ``y >= 0`` is a nonzero combination with ``sum y_g g = 0``
    (Gordan's alternative), which certifies infeasibility.
    """
    vectors = [tuple(as_fraction(x) for x in g) for g in vectors]
    if not vectors:
        return True, (Fraction(0),) * dim
    k = len(vectors)
    # Gordan system: sum y_g g = 0, sum y_g = 1, y >= 0
    a = [[g[i] for g in vectors] for i in range(dim)] + [[Fraction(1)] * k]
    b = [Fraction(0)] * dim + [Fraction(1)]
    y = feasible_point(a, b)
    if y is not None:
        return False, y
    # v = p - q with <g, v> - s_g = 1
    a2 = []
    for idx, g in enumerate(vectors):
        row = list(g) + [-x for x in g] + [Fraction(-int(j == idx)) for j in range(k)]
        a2.append(row)
    sol = feasible_point(a2, [Fraction(1)] * k)
    if sol is None:  # pragma: no cover - excluded by Gordan's theorem
        raise RuntimeError("Gordan alternative failed; LP solver bug")
    v = tuple(sol[i] - sol[dim + i] for i in range(dim))
    assert all(dot(v, g) > 0 for g in vectors)
    return True, v
