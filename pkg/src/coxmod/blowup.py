"""Blow-ups of Mori dream spaces through saturated Rees algebras and stellar subdivisions."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .cemds import (CEMDS, ES, VERIFIED, WEAK, CEMDSError, _track_ample, compress,
                    find_fake_relations, modify, stretch, transfer)
from .ideal import (Ideal, ideal_dim, ideal_power, minimal_generators, saturate,
                    saturate_by_product, saturate_ideal)
from .intlinalg import (Grading, gale_dual, hermite_rows, is_primitive, kernel_vectors, mat,
                        matvec, transpose)
from .polynomial import Polynomial, monomial_product, rational
from .toric import (Fan, FanError, irrelevant_ideal, is_regular_cone,
                    orbit_cone, stellar_subdivision)
from .verify import (PROVED, REFUTED, UNKNOWN, CheckStatus, VerificationReport,
                     check_dim_pairs, check_K_prime)


class BlowupError(ValueError):
    """The center violates a hypothesis that makes the construction meaningless."""


# ---------------------------------------------------------------- lattice ideal
def lattice_ideal_point(P, z: Sequence[object]) -> Ideal:
    """Vanishing ideal of the closure of the orbit through ``z`` (Cox coordinates)."""
    P = mat(P)
    r = len(P[0])
    z = [rational(x) for x in z]
    if len(z) != r:
        raise ValueError("point has the wrong number of coordinates")
    if all(x == 0 for x in z):
        raise ValueError("the point must be nonzero")
    S = [i for i in range(r) if z[i] != 0]
    off = [i for i in range(r) if z[i] == 0]
    n = len(P)
    # x with (P^T x)_j = 0 for j outside S, then nu = P^T x
    if off:
        M = [[P[k][j] for k in range(n)] for j in off]
        xs = kernel_vectors(M, n)
    else:
        xs = [[1 if i == k else 0 for i in range(n)] for k in range(n)]
    PT = transpose(P, r)
    nus = [matvec(PT, x) for x in xs]
    nus = hermite_rows(nus) if nus else []
    gens = []
    for nu in nus:
        pos = [max(v, 0) for v in nu]
        neg = [max(-v, 0) for v in nu]
        cp = mpq(1)
        cn = mpq(1)
        for i in S:
            cp *= z[i] ** (-pos[i]) if pos[i] else 1
            cn *= z[i] ** (-neg[i]) if neg[i] else 1
        gens.append(Polynomial.monomial(tuple(pos), cp) - Polynomial.monomial(tuple(neg), cn))
    I = saturate_by_product(Ideal(gens, r), S) if gens else Ideal.zero(r)
    I = I + Ideal([Polynomial.var(j, r) for j in off], r)
    return Ideal(minimal_generators(I), r) if not I.is_zero() else I


# ---------------------------------------------------------------- Rees layers
@dataclass(frozen=True)
class ReesLayer:
    k: int
    ideal: Ideal


def rees_component(I1: Ideal, I: Ideal, J: Ideal, k: int) -> ReesLayer:
    """``A_k = (I^k + I1) : J^infinity`` in the presentation ``Q[T]/I1``."""
    if k <= 0:
        return ReesLayer(k, Ideal.unit(I1.arity))
    return ReesLayer(k, saturate_ideal(ideal_power(I, k) + I1, J))


# ---------------------------------------------------------------- blow-up
@dataclass
class BlowupResult:
    cemds: CEMDS
    report: VerificationReport
    vector: Tuple[int, ...]
    stretched: CEMDS


def _center_positions(X1: CEMDS, gens: Sequence[Polynomial]):
    """Split center generators into existing variables (up to scalar) and those to stretch."""
    direct: Dict[int, int] = {}
    to_stretch: List[Tuple[int, Polynomial]] = []
    for idx, f in enumerate(gens):
        if f.arity != X1.r:
            raise BlowupError("center generator has the wrong arity")
        if len(f) == 1:
            e = next(iter(f.terms))
            if sum(e) == 1:
                direct[idx] = e.index(1)
                continue
        to_stretch.append((idx, f))
    return direct, to_stretch


def tnu_variables(X1: CEMDS, gens: Sequence[Polynomial]) -> List[int]:
    """Indices ``i`` with ``T_i`` outside ``<center> + I1``: divisors missing the center."""
    J = X1.ideal() + Ideal(list(gens), X1.r)
    return [i for i in range(X1.r) if not J.contains(Polynomial.var(i, X1.r))]


def blowup_cemds(X1: CEMDS, gens: Sequence[Polynomial], mults: Sequence[int],
                 tier: int = 0, oracle=None, timeout: float = 30.0) -> BlowupResult:
    """Blow up along ``<gens>`` with multiplicities ``mults`` by stretch, subdivision and transfer."""
    gens = [g.primitive() for g in gens]
    mults = [int(d) for d in mults]
    if len(gens) != len(mults) or not gens:
        raise BlowupError("need one positive multiplicity per center generator")
    if any(d <= 0 for d in mults):
        raise BlowupError("multiplicities must be positive")
    g0 = 0
    for d in mults:
        g0 = gcd(g0, d)
    if g0 != 1:
        raise BlowupError("multiplicities must be coprime")
    r1 = X1.r
    direct, to_stretch = _center_positions(X1, gens)
    X1s = stretch(X1, [f for _, f in to_stretch], attested=True) if to_stretch else X1
    r1s = X1s.r
    v = [0] * r1s
    for idx, i in direct.items():
        v[i] = mults[idx]
    for pos, (idx, _) in enumerate(to_stretch):
        v[r1 + pos] = mults[idx]
    ray = matvec([list(row) for row in X1s.P], v)
    if not is_primitive(ray):
        raise BlowupError(f"P'v = {ray} is not primitive")
    support = [i for i in range(r1s) if v[i]]
    checks: List[CheckStatus] = []
    reg = is_regular_cone(support, X1s.P)
    checks.append(CheckStatus("regular_cone", PROVED if reg else REFUTED,
                              f"cone on {[i + 1 for i in support]} "
                              + ("is regular" if reg else "is not regular")))
    fan2 = stellar_subdivision(X1s.fan, ray)
    P2 = [list(row) for row in fan2.P]
    X2 = modify(X1s, P2, fan2, verify=True, tier=tier, oracle=oracle, timeout=timeout,
                check_refinement=False)
    checks.extend(c for c in X2.report.checks if c.name != "gale_dual")
    r2 = X2.r
    I2 = X2.ideal()
    tnu = tnu_variables(X1, gens)
    E = Polynomial.var(r2 - 1, r2)
    base = I2 + E
    d1 = ideal_dim(base)
    d2 = ideal_dim(base + monomial_product(tnu, r2)) if tnu else d1
    ok = d1 > d2
    checks.append(CheckStatus("tnu_dimension", PROVED if ok else REFUTED,
                              f"dim(I2+<E>) = {d1}, dim(I2+<E,T^nu>) = {d2}"))
    ordinary, fake = find_fake_relations(list(X2.relations), r2,
                                         allowed=range(r2 - 1))
    if fake:
        mid = CEMDS.create(X2.P, X2.fan, list(ordinary) + list(fake), X2.grading, X2.ample, WEAK)
        X2 = compress(mid, len(fake))
    report = VerificationReport(tuple(checks))
    if report.overall == "verified" and X1.status == VERIFIED:
        status = VERIFIED
    elif report.overall == "failed" or X1.status == ES:
        status = ES
    else:
        status = WEAK
    return BlowupResult(X2.with_status(status, report), report, tuple(v), X1s)


# ---------------------------------------------------------------- automatic centers
@dataclass
class AutoResult:
    status: str                      # "verified" or "exhausted"
    k: int
    gens: List[Polynomial]
    mults: List[int]
    result: Optional[BlowupResult] = None
    layers: Dict[int, Ideal] = field(default_factory=dict)


def _round_candidates(I1: Ideal, Ak: Ideal, weights) -> List[Polynomial]:
    gb = sorted(Ak.groebner().polys, key=lambda g: (g.degree(weights), str(g)))
    kept: List[Polynomial] = []
    for g in gb:
        if not (I1 + Ideal(kept, I1.arity)).contains(g):
            kept.append(g)
    return [g.primitive() for g in kept]


def _associated_mod(I1: Ideal, a: Polynomial, b: Polynomial) -> bool:
    if I1.is_zero():
        return a.is_associated_to(b)
    gb = I1.groebner()
    na, nb = gb.normal_form(a), gb.normal_form(b)
    if na.is_zero() or nb.is_zero():
        return na.is_zero() and nb.is_zero()
    return na.is_associated_to(nb)


def blowup_auto(X1: CEMDS, I: Ideal, max_k: int, tier: int = 0, oracle=None) -> AutoResult:
    """Grow the center data round by round until the blow-up verifies or ``max_k`` is hit."""
    I1 = X1.ideal()
    J = irrelevant_ideal(X1.fan)
    layers: Dict[int, Ideal] = {}

    def layer(k: int) -> Ideal:
        if k not in layers:
            layers[k] = rees_component(I1, I, J, k).ideal
        return layers[k]

    weights = (I1 + I).weights() or [1] * X1.r
    F: List[Polynomial] = []
    D: List[int] = []
    last = None
    for k in range(1, max_k + 1):
        Ak = layer(k)
        prod = I1
        for i in range(1, k):
            prod = prod + layer(i) * layer(k - i)
        for f in _round_candidates(I1, Ak, weights):
            if k > 1 and prod.contains(f):
                continue
            if any(_associated_mod(I1, f, g) for g in F):
                continue
            d = k
            for kk in range(max_k, k, -1):
                if layer(kk).contains(f):
                    d = kk
                    break
            F.append(f)
            D.append(d)
        try:
            res = blowup_cemds(X1, F, D, tier=tier, oracle=oracle)
        except (BlowupError, CEMDSError, FanError):
            continue
        last = res
        if res.cemds.status == VERIFIED:
            return AutoResult("verified", k, list(F), list(D), res, layers)
    return AutoResult("exhausted", max_k, list(F), list(D), last, layers)


# ---------------------------------------------------------------- finite generation variant
@dataclass
class FGCertificate:
    dim_pairs: str
    localized_prime: str
    normalization_pending: bool
    witnesses: Dict[str, Optional[str]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.dim_pairs == PROVED and self.localized_prime == PROVED

    def to_dict(self) -> dict:
        return {"dim_pairs": self.dim_pairs, "localized_prime": self.localized_prime,
                "normalization_pending": self.normalization_pending, "passed": self.passed,
                "witnesses": dict(self.witnesses)}


def blowup_fg(X1: CEMDS, gens: Sequence[Polynomial], mults: Sequence[int],
              partial: Optional[Sequence[Polynomial]] = None,
              tier: int = 0, oracle=None, timeout: float = 30.0) -> Tuple[CEMDS, FGCertificate]:
    """Transfer without full saturation and certify finite generation up to normalization."""
    gens = [g.primitive() for g in gens]
    r1 = X1.r
    direct, to_stretch = _center_positions(X1, gens)
    X1s = stretch(X1, [f for _, f in to_stretch], attested=True) if to_stretch else X1
    v = [0] * X1s.r
    for idx, i in direct.items():
        v[i] = int(mults[idx])
    for pos, (idx, _) in enumerate(to_stretch):
        v[r1 + pos] = int(mults[idx])
    ray = matvec([list(row) for row in X1s.P], v)
    if not is_primitive(ray):
        raise BlowupError(f"P'v = {ray} is not primitive")
    fan2 = stellar_subdivision(X1s.fan, ray)
    P2 = [list(row) for row in fan2.P]
    r2 = len(P2[0])
    if partial is not None:
        I2 = Ideal(list(partial), r2)
    else:
        hs = [transfer(X1s.P, P2, g) for g in X1s.relations]
        I2 = saturate(Ideal(hs, r2), Polynomial.var(r2 - 1, r2))
    dp = check_dim_pairs(I2)
    loc = saturate_by_product(I2, range(r2 - 1))
    kp = check_K_prime(loc, None, Polynomial.var(r2 - 1, r2), tier, oracle, timeout,
                       name=f"K_prime_localized(T{r2})")
    Q2 = gale_dual(P2, r2)
    ample = _track_ample(X1s, fan2, Q2)
    passed = dp.outcome == PROVED and kp.outcome == PROVED
    ideal_is_saturated = passed and (saturate_by_product(I2) == I2)
    pending = not (passed and ideal_is_saturated and X1.status == VERIFIED
                   and X1.grading.is_free())
    cert = FGCertificate(dp.outcome, kp.outcome, pending,
                         {"dim_pairs": dp.witness, "localized_prime": kp.witness})
    status = ES if not passed else WEAK
    X2 = CEMDS.create(P2, fan2, list(I2.generators), Q2, ample, status)
    return X2, cert


# ---------------------------------------------------------------- certificate
def blowup_point_certificate(X1: CEMDS, z: Sequence[object], cone: Optional[Sequence[int]] = None) -> bool:
    """Localized comparison of the point ideal with the ideal of the orbit through the cone."""
    if cone is None:
        cone = orbit_cone(X1.fan, z)
    cone = sorted(cone)
    if not is_regular_cone(cone, X1.P):
        raise BlowupError("the cone is not regular")
    r = X1.r
    zeros = Ideal([Polynomial.var(i, r) for i in range(r) if rational(z[i]) == 0], r)
    lhs = zeros + lattice_ideal_point(X1.P, z)
    rhs = Ideal([Polynomial.var(i, r) for i in cone], r) + X1.ideal()
    outside = [i for i in range(r) if i not in cone]
    return saturate_by_product(lhs, outside) == saturate_by_product(rhs, outside)
