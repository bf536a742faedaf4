"""Match a presented ring against a reference presentation.

Two presentations of the same graded ring can differ by a renumbering of
the variables and by rescaling each variable with a nonzero constant.  The
renumbering is constrained by the degree matrices; the rescaling is solved
exactly from linear relations among normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .ideal import Ideal
from .intlinalg import Grading, grading_permutations, rref, solve_integer
from .polynomial import Exponent, Polynomial


def scale_variables(p: Polynomial, c: Sequence[object]) -> Polynomial:
    """Substitute ``T_i -> c_i T_i``."""
    out = {}
    for e, a in p.items():
        v = mpq(a)
        for ci, k in zip(c, e):
            if k:
                v *= mpq(ci) ** k
        out[e] = v
    return Polynomial(p.arity, out)


def _nullspace(M: List[List[mpq]], ncols: int) -> List[List[mpq]]:
    if not M:
        return [[mpq(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(M)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [mpq(0)] * ncols
        v[f] = mpq(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def _monomial_ratios(gb, p: Polynomial) -> Optional[List[Tuple[Exponent, mpq]]]:
    """Ratios ``c^(m_k - m_0)`` forced by ``p(cT)`` lying in the ideal.

    Returns ``None`` if no rescaling can put ``p`` into the ideal, and an
    empty list when the constraint is not determined by ``p`` alone.
    """
    items = sorted(p.items())
    nfs = [gb.normal_form(Polynomial.monomial(e, a)) for e, a in items]
    support = sorted({e for f in nfs for e in f.terms})
    M = [[f.terms.get(e, mpq(0)) for f in nfs] for e in support]
    K = _nullspace(M, len(items))
    if not K:
        return None
    if len(K) > 1:
        return []
    kappa = K[0]
    if any(x == 0 for x in kappa):
        return None
    e0 = items[0][0]
    return [(tuple(a - b for a, b in zip(e, e0)), kappa[k] / kappa[0])
            for k, (e, _) in enumerate(items) if k]


def _factor(n: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _valuations(q: mpq) -> Dict[int, int]:
    v = dict(_factor(abs(int(q.numerator))))
    for p, k in _factor(int(q.denominator)).items():
        v[p] = v.get(p, 0) - k
    return v


def _solve_mod2(A: List[List[int]], b: List[int], n: int) -> Optional[List[int]]:
    rows = [[x % 2 for x in row] + [y % 2] for row, y in zip(A, b)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [(x + y) % 2 for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(not any(row[:n]) and row[n] for row in rows):
        return None
    x = [0] * n
    for row, c in zip(rows, pivots):
        x[c] = row[n]
    return x


def solve_torus(constraints: Sequence[Tuple[Exponent, mpq]], r: int) -> Optional[List[mpq]]:
    """Find ``c`` in ``(Q^*)^r`` with ``c^u = q`` for every pair ``(u, q)``."""
    if not constraints:
        return [mpq(1)] * r
    A = [list(u) for u, _ in constraints]
    signs = _solve_mod2(A, [1 if q < 0 else 0 for _, q in constraints], r)
    if signs is None:
        return None
    vals = [_valuations(q) for _, q in constraints]
    primes = sorted({p for v in vals for p in v})
    c = [mpq(-1) if s else mpq(1) for s in signs]
    for p in primes:
        x = solve_integer(A, [v.get(p, 0) for v in vals])
        if x is None:
            return None
        for i, k in enumerate(x):
            c[i] *= mpq(p) ** k
    return c


def torus_rescaling(ideal: Ideal, polys: Sequence[Polynomial]) -> Optional[List[mpq]]:
    """Rescaling ``c`` with every ``p(cT)`` in ``ideal``, or ``None``."""
    gb = ideal.groebner()
    constraints = []
    for p in polys:
        ratios = _monomial_ratios(gb, p)
        if ratios is None:
            return None
        constraints.extend(ratios)
    c = solve_torus(constraints, ideal.arity)
    if c is None:
        return None
    if all(gb.reduces_to_zero(scale_variables(p, c)) for p in polys):
        return c
    return None


@dataclass(frozen=True)
class Match:
    """Printed variable ``j`` is ``scaling[perm[j]] * T_perm[j]`` of the computed ring."""

    perm: Tuple[int, ...]
    scaling: Tuple[mpq, ...]
    equal: bool

    def transport(self, p: Polynomial) -> Polynomial:
        r = len(self.perm)
        q = p.reindex(r, {j: self.perm[j] for j in range(r)})
        return scale_variables(q, self.scaling)


def match_presentation(ideal: Ideal, grading: Optional[Grading], printed: Sequence[Polynomial],
                       printed_grading: Optional[Grading] = None, require_equal: bool = False,
                       max_permutations: int = 100000) -> Optional[Match]:
    """Search a renumbering and rescaling under which ``printed`` lies in ``ideal``.

    With ``require_equal`` the transported generators must generate the whole
    ideal.  Without a reference grading only the identity renumbering is tried.
    """
    r = ideal.arity
    if printed_grading is None or grading is None:
        perms = iter([list(range(r))])
    else:
        perms = grading_permutations(grading, printed_grading)
    for count, perm in enumerate(perms):
        if count >= max_permutations:
            break
        moved = [p.reindex(r, {j: perm[j] for j in range(r)}) for p in printed]
        c = torus_rescaling(ideal, moved)
        if c is None:
            continue
        m = Match(tuple(perm), tuple(c), False)
        J = Ideal([scale_variables(p, c) for p in moved], r)
        equal = J.contains_ideal(ideal)
        if require_equal and not equal:
            continue
        return Match(m.perm, m.scaling, equal)
    return None
