"""Compatibly embedded Mori dream spaces and the algorithms managing their embeddings."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .ideal import Ideal, eliminate, minimal_generators, saturate_by_product
from .intlinalg import (Grading, gale_dual, gale_dual_inverse, mat, rank, select_columns,
                        solve_integer, transpose)
from .polynomial import Exponent, Polynomial
from .toric import (Fan, FanError, fan_from_ample, find_ample_class, is_refinement,
                    pullback_ample)

VERIFIED = "verified"
WEAK = "weak"
ES = "unverified-ES"
STATUSES = (VERIFIED, WEAK, ES)


class CEMDSError(ValueError):
    """Invalid input to one of the embedding algorithms."""


@dataclass(frozen=True)
class CEMDS:
    """Ray matrix ``P``, fan over its columns, relations, degree map and ample class.

    ``status`` records how much of the defining property has been checked:
    ``verified`` (all checks proved), ``weak`` (relations generate only after
    passing to the Laurent ring, or some check is undecided) and
    ``unverified-ES`` (a check was refuted).
    """

    P: Tuple[Tuple[int, ...], ...]
    fan: Fan
    relations: Tuple[Polynomial, ...]
    grading: Grading
    ample: Optional[Tuple[int, ...]] = None
    status: str = WEAK
    report: Optional[object] = field(default=None, compare=False)

    @classmethod
    def create(cls, P, fan: Fan, relations: Sequence[Polynomial] = (),
               grading: Optional[Grading] = None, ample=None, status: str = WEAK,
               report=None, check: bool = True) -> "CEMDS":
        P = tuple(tuple(int(x) for x in row) for row in P)
        r = len(P[0]) if P else (grading.arity if grading is not None else fan.nrays)
        if grading is None:
            grading = gale_dual([list(row) for row in P], r)
        rels = tuple(g.primitive() for g in relations if not g.is_zero())
        out = cls(P, fan, rels, grading, tuple(ample) if ample is not None else None,
                  status, report)
        if check:
            out.validate()
        return out

    @property
    def r(self) -> int:
        return self.grading.arity

    @property
    def n(self) -> int:
        return len(self.P)

    def ideal(self) -> Ideal:
        return Ideal(self.relations, self.r)

    def validate(self) -> None:
        if self.status not in STATUSES:
            raise CEMDSError(f"unknown status {self.status!r}")
        if [list(r) for r in self.fan.P] != [list(r) for r in self.P]:
            raise CEMDSError("fan rays differ from the columns of P")
        for g in self.relations:
            if g.arity != self.r:
                raise CEMDSError("relation arity differs from the number of variables")
            if homogeneous_degree(g, self.grading) is None:
                raise CEMDSError(f"relation {g} is not homogeneous")
        if self.P:
            prod = [[sum(row[j] * p[j] for j in range(self.r)) for p in self.P]
                    for row in self.grading.matrix]
            for k, row in enumerate(prod):
                if k < self.grading.free:
                    bad = any(row)
                else:
                    d = self.grading.torsion[k - self.grading.free]
                    bad = any(x % d for x in row)
                if bad:
                    raise CEMDSError("degree map does not annihilate the rows of P")

    def with_status(self, status: str, report=None) -> "CEMDS":
        return replace(self, status=status, report=report if report is not None else self.report)

    def degree(self, p: Polynomial) -> Optional[Tuple[int, ...]]:
        return homogeneous_degree(p, self.grading)


def homogeneous_degree(p: Polynomial, Q: Grading) -> Optional[Tuple[int, ...]]:
    deg = None
    for e in p.terms:
        d = Q.degree(e)
        if deg is None:
            deg = d
        elif d != deg:
            return None
    return deg if deg is not None else tuple(0 for _ in Q.matrix)


# ---------------------------------------------------------------- constructors
def projective_space(n: int) -> CEMDS:
    """``P^n`` with rays ``e0 = -(e1+...+en), e1, ..., en`` and ample class 1."""
    P = [[-1] + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    return toric_cemds(P, [1])


def toric_cemds(P, ample: Sequence[int]) -> CEMDS:
    """A toric variety as a CEMDS without relations, fan taken from the ample class."""
    P = mat(P)
    Q = gale_dual(P)
    fan = fan_from_ample(P, Q, ample)
    return CEMDS.create(P, fan, (), Q, ample, VERIFIED)


def with_ample_fan(P, relations, Q: Grading, ample, status=WEAK) -> CEMDS:
    fan = fan_from_ample(P, Q, ample)
    return CEMDS.create(P, fan, relations, Q, ample, status)


# ---------------------------------------------------------------- transfer
@dataclass(frozen=True)
class MonomialMap:
    """The monomial map ``T^r -> T^n`` given by an ``n x r`` integer matrix."""

    matrix: Tuple[Tuple[int, ...], ...]

    def __init__(self, matrix):
        m = tuple(tuple(int(x) for x in row) for row in matrix)
        if m and rank([list(r) for r in m]) != len(m):
            raise CEMDSError("monomial map needs a matrix of full row rank")
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return len(self.matrix)

    @property
    def r(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0


def _coprime_laurent(terms: Dict[Tuple[int, ...], mpq], arity: int) -> Polynomial:
    if not terms:
        return Polynomial.zero(arity)
    low = [min(e[i] for e in terms) for i in range(arity)]
    shifted = {}
    for e, c in terms.items():
        k = tuple(a - b for a, b in zip(e, low))
        shifted[k] = shifted.get(k, 0) + c
    return Polynomial(arity, shifted).primitive()


def sharp_pullback(m, g: Polynomial) -> Polynomial:
    """Substitute ``S^x -> T^(P^T x)`` and clear denominators to coprime monomials."""
    m = m if isinstance(m, MonomialMap) else MonomialMap(m)
    if g.is_zero():
        raise CEMDSError("cannot pull back the zero polynomial")
    if g.arity != m.n:
        raise CEMDSError("polynomial arity differs from the torus dimension")
    terms: Dict[Tuple[int, ...], mpq] = {}
    for x, c in g.items():
        u = tuple(sum(m.matrix[i][j] * x[i] for i in range(m.n)) for j in range(m.r))
        terms[u] = terms.get(u, 0) + c
    return _coprime_laurent({k: v for k, v in terms.items() if v}, m.r)


def sharp_pushforward(m, h: Polynomial) -> Polynomial:
    """Write the monomials of ``h`` as ``T^u0`` times characters ``P^T x`` and keep ``S^x``."""
    m = m if isinstance(m, MonomialMap) else MonomialMap(m)
    if h.is_zero():
        raise CEMDSError("cannot push forward the zero polynomial")
    if h.arity != m.r:
        raise CEMDSError("polynomial arity differs from the number of variables")
    PT = transpose([list(r) for r in m.matrix], m.r) if m.matrix else [[] for _ in range(m.r)]
    items = sorted(h.items())
    u0 = items[0][0]
    terms: Dict[Tuple[int, ...], mpq] = {}
    for u, c in items:
        diff = [a - b for a, b in zip(u, u0)]
        if m.n == 0:
            if any(diff):
                raise CEMDSError("polynomial is not homogeneous for the torus action")
            x = []
        else:
            x = solve_integer(PT, diff)
            if x is None:
                raise CEMDSError("polynomial is not homogeneous for the torus action")
        terms[tuple(x)] = terms.get(tuple(x), 0) + c
    return _coprime_laurent(terms, m.n)


def transfer(P1, P2, g: Polynomial) -> Polynomial:
    """Push ``g`` forward along ``P1`` and pull it back along ``P2``."""
    return sharp_pullback(P2, sharp_pushforward(P1, g))


# ---------------------------------------------------------------- stretch/compress
def _is_associated_to_variable(f: Polynomial) -> Optional[int]:
    if len(f) == 1:
        e = next(iter(f.terms))
        if sum(e) == 1:
            return e.index(1)
    return None


def stretch(X: CEMDS, fs: Sequence[Polynomial], attested: bool = False) -> CEMDS:
    """Add one variable per ``f`` with relation ``T_new - f``; the fan comes from the ample class."""
    if X.ample is None:
        raise CEMDSError("stretch needs an ample class to rebuild the fan")
    fs = [f.primitive() for f in fs]
    degs = []
    for f in fs:
        if f.arity != X.r:
            raise CEMDSError("stretch polynomial has the wrong arity")
        if f.is_constant():
            raise CEMDSError("cannot stretch by a constant")
        d = X.degree(f)
        if d is None:
            raise CEMDSError(f"{f} is not homogeneous")
        j = _is_associated_to_variable(f)
        if j is not None:
            raise CEMDSError(f"{f} is associated to the generator T{j + 1}")
        degs.append(list(d))
    for a in range(len(fs)):
        for b in range(a):
            if fs[a].is_associated_to(fs[b]):
                raise CEMDSError("stretch polynomials must be pairwise non-associated")
    r, l = X.r, len(fs)
    Q2 = X.grading.extend(degs)
    P2 = gale_dual_inverse(Q2)
    rels = [g.extend(r + l) for g in X.relations]
    for i, f in enumerate(fs):
        rels.append(Polynomial.var(r + i, r + l) - f.extend(r + l))
    fan = fan_from_ample(P2, Q2, X.ample)
    status = X.status if (attested and X.status == VERIFIED) else WEAK
    if X.status == ES:
        status = ES
    return CEMDS.create(P2, fan, rels, Q2, X.ample, status)


def _fake_variable(g: Polynomial, allowed: Optional[Sequence[int]] = None) -> Optional[int]:
    """Largest ``i`` with ``g = c*T_i + h`` and ``T_i`` absent from ``h``."""
    cands = []
    for e, c in g.items():
        if sum(e) == 1:
            i = e.index(1)
            if allowed is not None and i not in allowed:
                continue
            if all(f[i] == 0 for f in g.terms if f != e):
                cands.append(i)
    return max(cands) if cands else None


def _solve_fake(g: Polynomial, i: int) -> Polynomial:
    e = tuple(1 if k == i else 0 for k in range(g.arity))
    c = g.terms[e]
    h = g - Polynomial.monomial(e, c)
    return h.scale(-1 / c)


def compress(X: CEMDS, l: int, verify: bool = False, tier: int = 0, oracle=None,
             timeout: float = 30.0) -> CEMDS:
    """Eliminate the last ``l`` relations ``c*T_i - h_i`` by substituting ``T_i = h_i``."""
    if l < 0 or l > len(X.relations):
        raise CEMDSError("invalid number of fake relations")
    rels = list(X.relations)
    body, fake = rels[:len(rels) - l], rels[len(rels) - l:]
    removed: List[int] = []
    for k in range(len(fake)):
        g = fake[k]
        i = _fake_variable(g)
        if i is None:
            raise CEMDSError(f"relation {g} is not fake")
        h = _solve_fake(g, i)
        sub = {i: h}
        body = [p.substitute(sub) for p in body]
        fake = [p.substitute(sub) if j > k else p for j, p in enumerate(fake)]
        removed.append(i)
    keep = [j for j in range(X.r) if j not in set(removed)]
    mapping = {j: k for k, j in enumerate(keep)}
    new_rels = []
    for p in body:
        if p.is_zero():
            continue
        if any(e[j] for e in p.terms for j in removed):
            raise CEMDSError("substitution left an eliminated variable behind")
        new_rels.append(p.reindex(len(keep), mapping))
    if l:
        Q2 = X.grading.select(keep)
        P2 = gale_dual_inverse(Q2)
        if X.ample is None:
            raise CEMDSError("compress needs an ample class to rebuild the fan")
        fan = fan_from_ample(P2, Q2, X.ample)
    else:
        Q2, P2, fan = X.grading, [list(r) for r in X.P], X.fan
    out = CEMDS.create(P2, fan, new_rels, Q2, X.ample, X.status)
    if verify:
        from .verify import verify_compress
        report = verify_compress(out, tier=tier, oracle=oracle, timeout=timeout)
        out = out.with_status(_merge_status(X.status, report.overall), report)
    return out


def _merge_status(prior: str, overall: str) -> str:
    if prior == ES or overall == "failed":
        return ES
    if overall == "verified":
        return VERIFIED
    return WEAK


def find_fake_relations(rels: Sequence[Polynomial], arity: int,
                        allowed: Optional[Sequence[int]] = None) -> Tuple[List[Polynomial], List[Polynomial]]:
    """Split relations into (ordinary, fake) with fake ones of the form ``c*T_i + h``.

    Fake relations are picked greedily by descending variable index; each pick
    is substituted into the remaining relations so that later picks stay
    fake after the earlier substitutions.
    """
    work = [g for g in rels if not g.is_zero()]
    fake: List[Polynomial] = []
    used: List[int] = []
    while True:
        best = None
        for idx, g in enumerate(work):
            i = _fake_variable(g, allowed)
            if i is not None and i not in used and (best is None or i > best[1]):
                best = (idx, i)
        if best is None:
            break
        idx, i = best
        g = work.pop(idx)
        h = _solve_fake(g, i)
        work = [p.substitute({i: h}) for p in work]
        work = [p for p in work if not p.is_zero()]
        fake.append(g)
        used.append(i)
    # fake relations are applied in reverse pick order by compress; keep the
    # original (unsubstituted) form so that the substitution chain is replayed
    return work, fake


# ---------------------------------------------------------------- contract / modify
def _check_prefix(P1, P2) -> int:
    P1 = mat(P1)
    P2 = mat(P2)
    if len(P1) != len(P2):
        raise CEMDSError("ray matrices live in lattices of different rank")
    r1 = len(P1[0]) if P1 else 0
    if any(P2[i][:r1] != P1[i] for i in range(len(P1))):
        raise CEMDSError("ray matrix is not of the form [P1, B]")
    return r1


def contract(X2: CEMDS, P1, fan1: Fan, ample=None, verify: bool = False,
             tier: int = 0, oracle=None, timeout: float = 30.0) -> CEMDS:
    """Remove the rays beyond ``P1``: set their variables to 1, saturate, compress."""
    r1 = _check_prefix(P1, X2.P)
    r2 = X2.r
    if [list(r) for r in fan1.P] != mat(P1):
        raise CEMDSError("target fan rays differ from P1")
    if r1 == r2:
        return X2
    sub = {j: 1 for j in range(r1, r2)}
    hs = []
    for g in X2.relations:
        h = g.substitute(sub)
        hs.append(Polynomial(r1, {e[:r1]: c for e, c in h.items()}))
    I1 = saturate_by_product(Ideal(hs, r1))
    if I1.is_unit():
        raise CEMDSError("contraction produced the unit ideal")
    gens = _nice_generators(I1)
    ordinary, fake = find_fake_relations(gens, r1)
    Q1 = gale_dual(mat(P1), r1)
    if ample is None:
        ample = find_ample_class(fan1, Q1)
        if ample is None:
            raise CEMDSError("target fan is not projective")
    status = VERIFIED if X2.status in (VERIFIED, WEAK) else ES
    mid = CEMDS.create(P1, fan1, list(ordinary) + list(fake), Q1, ample, status)
    return compress(mid, len(fake), verify=verify, tier=tier, oracle=oracle, timeout=timeout)


def _nice_generators(I: Ideal) -> List[Polynomial]:
    if I.weights() is not None:
        try:
            return minimal_generators(I)
        except ValueError:
            pass
    return [g.primitive() for g in I.groebner().polys]


def modify(X1: CEMDS, P2, fan2: Fan, verify: bool = False, tier: int = 0, oracle=None,
           timeout: float = 30.0, check_refinement: bool = True, ample=None) -> CEMDS:
    """Transfer the relations to the ray matrix ``[P1, B]`` and saturate by the new variables."""
    r1 = _check_prefix(X1.P, P2)
    P2 = mat(P2)
    r2 = len(P2[0])
    if [list(r) for r in fan2.P] != P2:
        raise CEMDSError("fan rays differ from the columns of P2")
    if check_refinement and not is_refinement(fan2, X1.fan):
        raise CEMDSError("target fan does not refine the source fan")
    Q2 = gale_dual(P2, r2)
    if r1 == r2:
        hs = list(X1.relations)
        I2 = X1.ideal()
        gens = hs
    else:
        hs = [transfer(X1.P, P2, g) for g in X1.relations]
        I = Ideal(hs, r2)
        I2 = saturate_by_product(I, range(r1, r2))
        gens = hs if I2 is I else _nice_generators(I2)
    if ample is None:
        ample = _track_ample(X1, fan2, Q2)
    status = WEAK if X1.status != ES else ES
    out = CEMDS.create(P2, fan2, gens, Q2, ample, status)
    if verify:
        from .verify import verify_modify
        report = verify_modify(X1, out, tier=tier, oracle=oracle, timeout=timeout)
        out = out.with_status(_merge_status(X1.status, report.overall), report)
    return out


def _track_ample(X1: CEMDS, fan2: Fan, Q2: Grading, lp_limit: int = 120):
    """Ample class for a refinement: pull back when possible, otherwise solve the LP."""
    if X1.ample is not None:
        try:
            w = pullback_ample(X1.fan, X1.grading, X1.ample, fan2, Q2)
        except FanError:
            w = None
        if w is not None:
            return w
    if len(fan2.max_cones) * Q2.free > lp_limit:
        return None
    try:
        return find_ample_class(fan2, Q2)
    except FanError:
        return None


# ---------------------------------------------------------------- models
def proj_model(X: CEMDS, gens: Sequence[Polynomial]) -> Ideal:
    """Ideal of the image closure of ``z -> (f_1(z), ..., f_s(z))`` in ``s`` variables."""
    if not gens:
        raise CEMDSError("no generators given")
    degs = {X.degree(f) for f in gens}
    if None in degs or len(degs) != 1:
        raise CEMDSError("generators must share one degree")
    r, s = X.r, len(gens)
    rels = [g.extend(r + s) for g in X.relations]
    for j, f in enumerate(gens):
        rels.append(Polynomial.var(r + j, r + s) - f.extend(r + s))
    return eliminate(Ideal(rels, r + s), range(r))
