"""Cones and fans over the columns of a ray matrix ``P``."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from . import lp
from .ideal import Ideal
from .intlinalg import (Grading, content, determinant, gale_dual, kernel_vectors, mat,
                        primitive_vector, rank, select_columns, smith_normal_form, solve_rational, transpose)
from .polynomial import Polynomial, monomial_product

Cone = Tuple[int, ...]


class FanError(ValueError):
    """Raised for invalid fan data or impossible fan operations."""


class ChamberWallError(FanError):
    """The class lies on a wall: not in any full-dimensional GIT chamber."""


class NotEffectiveError(FanError):
    """The class lies outside the effective cone."""


def _cone(idx: Iterable[int]) -> Cone:
    out = tuple(sorted(set(int(i) for i in idx)))
    return out


@dataclass(frozen=True)
class Fan:
    """A fan given by its maximal cones; rays are the columns of ``P``."""

    P: Tuple[Tuple[int, ...], ...]
    max_cones: Tuple[Cone, ...]

    def __init__(self, P: Sequence[Sequence[int]], max_cones: Iterable[Iterable[int]],
                 check: bool = True):
        rows = tuple(tuple(int(x) for x in row) for row in P)
        cones = tuple(sorted({_cone(c) for c in max_cones}))
        object.__setattr__(self, "P", rows)
        object.__setattr__(self, "max_cones", cones)
        if check:
            self.validate()

    @property
    def dim(self) -> int:
        return len(self.P)

    @property
    def nrays(self) -> int:
        return len(self.P[0]) if self.P else 0

    def ray(self, i: int) -> Tuple[int, ...]:
        return tuple(row[i] for row in self.P)

    def rays(self, cone: Iterable[int]) -> List[Tuple[int, ...]]:
        return [self.ray(i) for i in cone]

    def validate(self) -> None:
        r = self.nrays
        for i in range(r):
            if content(self.ray(i)) != 1:
                raise FanError(f"ray {i} is not primitive")
        for c in self.max_cones:
            if any(i < 0 or i >= r for i in c):
                raise FanError("cone refers to a missing ray")
        for a, b in combinations(self.max_cones, 2):
            if set(a) <= set(b) or set(b) <= set(a):
                raise FanError("a maximal cone contains another one")

    def is_simplicial(self) -> bool:
        return all(rank(transpose(self.rays(c))) == len(c) for c in self.max_cones)

    def used_rays(self) -> List[int]:
        return sorted({i for c in self.max_cones for i in c})

    def to_dict(self) -> dict:
        return {"rays": [list(r) for r in self.P], "max_cones": [list(c) for c in self.max_cones]}

    def cones_containing(self, idx: Iterable[int]) -> List[Cone]:
        s = set(idx)
        return [c for c in self.max_cones if s <= set(c)]

    def is_cone(self, idx: Iterable[int]) -> bool:
        """Is the index set exactly the ray set of a face of some maximal cone?"""
        s = _cone(idx)
        if not s:
            return bool(self.max_cones)
        return any(is_face(self, c, s) for c in self.cones_containing(s))


def is_face(F: Fan, cone: Cone, sub: Sequence[int]) -> bool:
    sub = _cone(sub)
    if not set(sub) <= set(cone):
        return False
    R = transpose(F.rays(cone))
    if rank(R) == len(cone):
        return True                      # simplicial: every subset is a face
    # sub is a face iff the rays of the minimal face through sum(sub) are exactly sub
    p = [sum(F.ray(i)[k] for i in sub) for k in range(F.dim)]
    for i in cone:
        if i in sub:
            continue
        if _in_minimal_face(F, cone, p, i):
            return False
    return True


def _in_minimal_face(F: Fan, cone: Cone, p: Sequence[int], i: int) -> bool:
    # feasible: sum_j lam_j P_j - t p = -P_i with lam, t >= 0
    gens = [F.ray(j) for j in cone] + [tuple(-x for x in p)]
    target = [-x for x in F.ray(i)]
    return lp.positive_combination(gens, target) is not None


def in_cone(F: Fan, cone: Cone, v: Sequence[object]) -> bool:
    return lp.positive_combination(F.rays(cone), list(v)) is not None


def facets(F: Fan, cone: Cone) -> List[Tuple[Cone, List[int]]]:
    """Facets of a full-dimensional cone, each with an inward integer normal."""
    n = F.dim
    R = F.rays(cone)
    out: Dict[Cone, List[int]] = {}
    if len(cone) == n and rank(transpose(R)) == n:
        for drop in range(len(cone)):
            sub = [cone[k] for k in range(len(cone)) if k != drop]
            u = _normal(F, sub, cone[drop])
            out[_cone(sub)] = u
        return sorted(out.items())
    for sub in combinations(cone, n - 1):
        M = F.rays(sub)
        if rank(transpose(M)) != n - 1:
            continue
        K = kernel_vectors(M, n)
        u = K[0]
        vals = [sum(a * b for a, b in zip(u, F.ray(j))) for j in cone]
        if all(x >= 0 for x in vals):
            pass
        elif all(x <= 0 for x in vals):
            u = [-x for x in u]
        else:
            continue
        face = _cone(j for j in cone if sum(a * b for a, b in zip(u, F.ray(j))) == 0)
        out[face] = u
    return sorted(out.items())


def _normal(F: Fan, sub: Sequence[int], other: int) -> List[int]:
    n = F.dim
    if n == 1:
        u = [1]
    else:
        u = kernel_vectors(F.rays(sub), n)[0]
    if sum(a * b for a, b in zip(u, F.ray(other))) < 0:
        u = [-x for x in u]
    return u


# ---------------------------------------------------------------- construction
def _free_columns(Q: Grading) -> List[List[int]]:
    return [list(Q.column(j)[:Q.free]) for j in range(Q.arity)]


def fan_from_ample(P: Sequence[Sequence[int]], Q: Grading, w: Sequence[int]) -> Fan:
    """The fan whose maximal cones are the minimal complements generating ``w``.

    A coordinate set ``S`` gives a cone iff ``w`` is a positive combination
    of the degrees outside ``S``.  For ``w`` inside a full-dimensional chamber
    the minimal such complements are bases of ``K_Q`` with ``w`` in their
    open cone, which is what is enumerated.
    """
    P = mat(P)
    r = Q.arity
    k = Q.free
    w = [mpq(x) for x in list(w)[:k]]
    cols = _free_columns(Q)
    if k == 0:
        return Fan(P, [range(r)])
    cones = []
    wall = False
    for M in combinations(range(r), k):
        B = [[cols[j][i] for j in M] for i in range(k)]
        if determinant(B) == 0:
            continue
        x = solve_rational(B, w)
        if all(v > 0 for v in x):
            cones.append([i for i in range(r) if i not in M])
        elif all(v >= 0 for v in x):
            wall = True
    if wall:
        raise ChamberWallError("class is not in any full-dimensional GIT chamber")
    if not cones:
        raise NotEffectiveError("class lies outside the effective cone")
    return Fan(P, cones)


def _rational_inverse(B: Sequence[Sequence[int]]) -> List[List[mpq]]:
    k = len(B)
    cols = [solve_rational(B, [1 if i == j else 0 for i in range(k)]) for j in range(k)]
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def ample_constraints(F: Fan, Q: Grading) -> List[List[mpq]]:
    """Linear forms that must all be positive on an ample class of ``F``."""
    k = Q.free
    cols = _free_columns(Q)
    rows = []
    for c in F.max_cones:
        comp = [j for j in range(Q.arity) if j not in c]
        if len(comp) != k:
            raise FanError("ample test needs a simplicial fan using every ray")
        B = [[cols[j][i] for j in comp] for i in range(k)]
        if determinant(B) == 0:
            raise FanError("complement degrees of a maximal cone are dependent")
        rows.extend(_rational_inverse(B))
    return rows


def is_ample(F: Fan, Q: Grading, w: Sequence[int]) -> bool:
    try:
        rows = ample_constraints(F, Q)
    except FanError:
        return False
    w = list(w)[:Q.free]
    return all(sum(a * b for a, b in zip(row, w)) > 0 for row in rows)


def find_ample_class(F: Fan, Q: Grading) -> Optional[List[int]]:
    """An integral ample class (free coordinates, zero torsion part), or ``None``."""
    rows = ample_constraints(F, Q)
    k = Q.free
    # y = y+ - y-, rows . y - s = 1 with all variables nonnegative
    m = len(rows)
    A = [list(rows[i]) + [-x for x in rows[i]] + [(-1 if j == i else 0) for j in range(m)]
         for i in range(m)]
    x = lp.feasible_point(A, [1] * m)
    if x is None:
        return None
    y = [x[i] - x[k + i] for i in range(k)]
    den = 1
    for v in y:
        d = int(v.denominator)
        den = den * d // _gcd(den, d)
    w = [int(v * den) for v in y]
    g = content(w) or 1
    w = [v // g for v in w]
    return w + [0] * len(Q.torsion)


def pullback_ample(F_old: Fan, Q_old: Grading, w_old: Sequence[int], F_new: Fan,
                   Q_new: Grading, max_doublings: int = 24) -> Optional[List[int]]:
    """Ample class on a subdivision: pull back ``w_old`` and subtract the new rays.

    A divisor ``a`` of class ``w_old`` is pulled back through its support
    function on the old fan; then ``t * pi^* a - sum eps_j E_j`` is tried for
    growing ``t`` with equal and with geometrically decreasing ``eps``.
    """
    r_old, r_new = F_old.nrays, F_new.nrays
    if r_new < r_old or any(F_new.ray(j) != F_old.ray(j) for j in range(r_old)):
        return None
    if r_new - r_old > 1:
        w = _pullback_chain(F_old, Q_old, w_old, F_new, Q_new, max_doublings)
        if w is not None:
            return w
    k = Q_old.free
    B = [list(row) for row in Q_old.matrix[:k]]
    a = solve_rational(B, [mpq(x) for x in list(w_old)[:k]])
    if a is None:
        return None
    n = F_old.dim
    full = list(a)
    for j in range(r_old, r_new):
        v = F_new.ray(j)
        sigma = next((c for c in F_old.max_cones if in_cone(F_old, c, v)), None)
        if sigma is None or len(sigma) != n:
            return None
        M = [[F_old.ray(i)[kk] for kk in range(n)] for i in sigma]
        m = solve_rational(M, [-a[i] for i in sigma])
        if m is None:
            return None
        full.append(-sum(mi * vi for mi, vi in zip(m, v)))
    den = 1
    for x in full:
        d = int(mpq(x).denominator)
        den = den * d // _gcd(den, d)
    base = [int(mpq(x) * den) for x in full]
    s = r_new - r_old
    eps_options = [[1] * s, [2 ** (s - 1 - j) for j in range(s)], [2 ** j for j in range(s)]]
    try:
        rows = ample_constraints(F_new, Q_new)
    except FanError:
        return None
    for doubling in range(max_doublings):
        t = 2 ** doubling
        for eps in eps_options:
            D = [t * x for x in base[:r_old]] + [t * base[r_old + j] - eps[j] for j in range(s)]
            w = [sum(Q_new.matrix[i][j] * D[j] for j in range(r_new)) for i in range(Q_new.free)]
            if all(sum(c * x for c, x in zip(row, w)) > 0 for row in rows):
                g = content(w) or 1
                return [x // g for x in w] + [0] * len(Q_new.torsion)
    return None


def _pullback_chain(F_old, Q_old, w_old, F_new, Q_new, max_doublings):
    # one ray at a time, when the new fan is the iterated stellar subdivision
    fans = [F_old]
    try:
        for j in range(F_old.nrays, F_new.nrays):
            fans.append(stellar_subdivision(fans[-1], F_new.ray(j)))
    except FanError:
        return None
    if fans[-1].max_cones != F_new.max_cones:
        return None
    Q, w = Q_old, w_old
    for k, F in enumerate(fans[1:], 1):
        Qk = Q_new if k == len(fans) - 1 else gale_dual([list(row) for row in F.P])
        w = pullback_ample(fans[k - 1], Q, w, F, Qk, max_doublings)
        if w is None:
            return None
        Q = Qk
    return w


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------- subdivision
def stellar_subdivision(F: Fan, v: Sequence[int]) -> Fan:
    """Insert the ray through ``v``; every maximal cone containing it is starred."""
    v = [int(x) for x in v]
    if not any(v):
        raise FanError("cannot subdivide at the zero vector")
    if len(v) != F.dim:
        raise FanError("vector has the wrong dimension")
    v = primitive_vector(v)
    for i in range(F.nrays):
        if list(F.ray(i)) == v:
            raise FanError(f"vector is already the ray {i}")
    new = F.nrays
    P2 = [list(F.P[k]) + [v[k]] for k in range(F.dim)]
    cones = []
    hit = False
    for c in F.max_cones:
        if len(c) < F.dim or not in_cone(F, c, v):
            cones.append(c)
            continue
        hit = True
        for face, u in facets(F, c):
            if sum(a * b for a, b in zip(u, v)) != 0:
                cones.append(tuple(face) + (new,))
    if not hit:
        raise FanError("vector lies outside the support of the fan")
    return Fan(P2, cones)


def orbit_cone(F: Fan, z: Sequence[object]) -> Cone:
    """The cone whose rays are the vanishing coordinates of ``z``."""
    S = _cone(i for i, x in enumerate(z) if mpq(x) == 0)
    if len(z) != F.nrays:
        raise FanError("point has the wrong number of coordinates")
    if not F.is_cone(S):
        raise FanError(f"vanishing set {list(S)} is not a cone of the fan")
    return S


def barycentric_subdivision_at(F: Fan, c: Sequence[int]) -> Fan:
    c = _cone(c)
    if not F.is_cone(c):
        raise FanError("not a cone of the fan")
    if len(c) < 2:
        raise FanError("barycentric subdivision needs a cone of dimension at least 2")
    v = [sum(F.ray(i)[k] for i in c) for k in range(F.dim)]
    return stellar_subdivision(F, v)


# ---------------------------------------------------------------- queries
def irrelevant_ideal(F: Fan) -> Ideal:
    r = F.nrays
    gens = [monomial_product([i for i in range(r) if i not in c], r) for c in F.max_cones]
    return Ideal(gens, r)


def is_regular_cone(c: Sequence[int], P: Sequence[Sequence[int]]) -> bool:
    c = list(c)
    if not c:
        return True
    M = select_columns(mat(P), c)
    S = smith_normal_form(M)
    return S.rank == len(c) and all(d == 1 for d in S.diagonal)


def _covers(F2: Fan, F1: Fan, sigma: Cone) -> bool:
    """Do the cones of ``F2`` inside ``sigma`` cover it?  (pseudo-manifold test)"""
    inside = [c for c in F2.max_cones if all(in_cone(F1, sigma, F2.ray(i)) for i in c)]
    if not inside:
        return False
    bnd = [u for _, u in facets(F1, sigma)]
    count: Dict[Cone, int] = {}
    for c in inside:
        for face, _ in facets(F2, c):
            count[face] = count.get(face, 0) + 1
    for face, k in count.items():
        on_boundary = any(all(sum(a * b for a, b in zip(u, F2.ray(i))) == 0 for i in face)
                          for u in bnd)
        if on_boundary:
            if k != 1:
                return False
        elif k != 2:
            return False
    return True


def is_refinement(F2: Fan, F1: Fan) -> bool:
    """Every maximal cone of ``F2`` lies in one of ``F1`` and the supports agree."""
    if F2.dim != F1.dim:
        return False
    for c in F2.max_cones:
        if not any(all(in_cone(F1, s, F2.ray(i)) for i in c) for s in F1.max_cones):
            return False
    if any(len(s) < F1.dim or rank(transpose(F1.rays(s))) < F1.dim for s in F1.max_cones):
        raise FanError("support comparison needs full-dimensional maximal cones")
    return all(_covers(F2, F1, s) for s in F1.max_cones)


def restrict_fan(F: Fan, keep: Sequence[int]) -> Fan:
    """Fan on the columns ``keep`` whose maximal cones are those avoiding the other rays."""
    keep = list(keep)
    pos = {j: k for k, j in enumerate(keep)}
    cones = [[pos[i] for i in c] for c in F.max_cones if all(i in pos for i in c)]
    return Fan(select_columns([list(r) for r in F.P], keep), cones)
