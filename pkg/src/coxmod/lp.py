"""Exact phase-one simplex over the rationals (Bland's rule)."""

from __future__ import annotations

from typing import List, Optional, Sequence

from gmpy2 import mpq

from .polynomial import rational


def feasible_point(A: Sequence[Sequence[object]], b: Sequence[object]) -> Optional[List[mpq]]:
    """Return some ``x >= 0`` with ``A x = b``, or ``None`` if there is none.

    Bland's smallest-index rule guarantees termination.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [mpq(0)] * n
    rows = []
    for i in range(m):
        row = [rational(v) for v in A[i]]
        rhs = rational(b[i])
        if len(row) != n:
            raise ValueError("ragged constraint matrix")
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        art = [mpq(0)] * m
        art[i] = mpq(1)
        rows.append(row + art + [rhs])
    width = n + m
    basis = [n + i for i in range(m)]
    # objective: minimise the sum of artificials; reduced costs = -sum of rows on originals
    obj = [mpq(0)] * (width + 1)
    for row in rows:
        for j in range(n):
            obj[j] -= row[j]
        obj[width] -= row[width]
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[width] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:       # cannot happen in phase one (objective bounded below)
            break
        prow = rows[leave]
        piv = prow[enter]
        prow = [v / piv for v in prow]
        rows[leave] = prow
        for i, row in enumerate(rows):
            if i != leave and row[enter]:
                f = row[enter]
                rows[i] = [a - f * c for a, c in zip(row, prow)]
        if obj[enter]:
            f = obj[enter]
            obj = [a - f * c for a, c in zip(obj, prow)]
        basis[leave] = enter
    if obj[width] != 0:
        return None
    x = [mpq(0)] * width
    for i, j in enumerate(basis):
        x[j] = rows[i][width]
    return x[:n]


def positive_combination(gens: Sequence[Sequence[object]], target: Sequence[object]) -> Optional[List[mpq]]:
    """Nonnegative coefficients ``c`` with ``sum c_j gens[j] == target``, if any."""
    dim = len(target)
    A = [[g[i] for g in gens] for i in range(dim)]
    if not gens:
        return [] if all(rational(t) == 0 for t in target) else None
    return feasible_point(A, target)


def strictly_positive_in_rowspace(M: Sequence[Sequence[int]]) -> Optional[List[mpq]]:
    """Find ``y`` with ``y^T M >= 1`` componentwise, or ``None``.

    ``M`` has k rows and r columns; the answer certifies that the columns of
    ``M`` lie in an open half space.
    """
    k = len(M)
    if k == 0:
        return None
    r = len(M[0])
    # variables y+ (k), y- (k), slack s (r):  M^T y+ - M^T y- - s = 1
    A = []
    for j in range(r):
        A.append([M[i][j] for i in range(k)] + [-M[i][j] for i in range(k)] +
                 [(-1 if jj == j else 0) for jj in range(r)])
    x = feasible_point(A, [1] * r)
    if x is None:
        return None
    return [x[i] - x[k + i] for i in range(k)]
