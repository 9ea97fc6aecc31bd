"""Exact rational linear feasibility.

Dense two-phase-style simplex (phase I only) over :class:`fractions.Fraction`
with Bland's rule, which cannot cycle.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def feasible_point(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """A point ``x >= 0`` with ``A x = b``, or ``None`` if there is none."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    for i in range(m):
        r = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            r, rhs = [-x for x in r], -rhs
        rows.append(r + [Fraction(int(j == i)) for j in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise the sum of artificials; reduced costs kept in ``cost``
    cost = [Fraction(0)] * (width + 1)
    for r in rows:
        for j in range(n):
            cost[j] -= r[j]
        cost[width] -= r[width]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i, r in enumerate(rows):
            if r[enter] > 0:
                ratio = r[width] / r[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            # unbounded direction; cannot happen for a phase-I objective bounded below by 0
            raise ArithmeticError("phase I objective unbounded")
        piv = rows[leave][enter]
        prow = [x / piv for x in rows[leave]]
        rows[leave] = prow
        for i, r in enumerate(rows):
            if i != leave and r[enter]:
                f = r[enter]
                rows[i] = [x - f * y for x, y in zip(r, prow)]
        if cost[enter]:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, prow)]
        basis[leave] = enter

    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][width]
    return x


def supporting_functional(vertices, subset) -> list[Fraction] | None:
    """A functional maximised over ``vertices`` exactly on the rows in ``subset``.

    The returned ``c`` satisfies ``c·v = c·v0`` on the subset and
    ``c·w <= c·v0 - 1`` elsewhere.  ``None`` means the subset is not a face.
    """
    V = np.asarray(vertices, dtype=np.int64)
    subset = sorted(set(int(i) for i in subset))
    if not subset:
        raise ValueError("a face needs at least one vertex")
    d = V.shape[1]
    outside = [i for i in range(V.shape[0]) if i not in set(subset)]
    if not outside:
        return [Fraction(0)] * d
    v0 = V[subset[0]]
    eq = [V[i] - v0 for i in subset[1:]]
    ineq = [V[i] - v0 for i in outside]
    # variables: c+ (d), c- (d), slacks (one per inequality)
    k = len(ineq)
    A, b = [], []
    for row in eq:
        A.append(list(row) + [-x for x in row] + [0] * k)
        b.append(0)
    for t, row in enumerate(ineq):
        A.append(list(row) + [-x for x in row] + [int(t == s) for s in range(k)])
        b.append(-1)
    x = feasible_point(A, b)
    if x is None:
        return None
    return [x[j] - x[d + j] for j in range(d)]


def is_face(vertices, subset) -> bool:
    """Is ``subset`` exactly the vertex set of a face?

    Decided through the Farkas alternative to :func:`supporting_functional`:
    the subset fails to be a face iff some convex combination of outside
    vertices lies in the affine hull of the subset.  That system has one row
    per coordinate instead of one per vertex, so it is much smaller.
    """
    V = np.asarray(vertices, dtype=np.int64)
    subset = sorted(set(int(i) for i in subset))
    if not subset:
        raise ValueError("a face needs at least one vertex")
    inside = set(subset)
    outside = [i for i in range(V.shape[0]) if i not in inside]
    if not outside:
        return True
    v0 = V[subset[0]]
    # columns: lambda_i >= 0 per outside vertex, then mu+ and mu- per other subset vertex
    cols = [V[i] - v0 for i in outside]
    cols += [V[j] - v0 for j in subset[1:]] + [v0 - V[j] for j in subset[1:]]
    M = np.array(cols, dtype=np.int64).T
    A = [list(map(int, row)) for row in M if row.any()]
    A.append([1] * len(outside) + [0] * (2 * (len(subset) - 1)))
    b = [0] * (len(A) - 1) + [1]
    return feasible_point(A, b) is None
