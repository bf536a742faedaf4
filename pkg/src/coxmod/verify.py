"""Checks that a presented ring is the Cox ring it claims to be."""

from __future__ import annotations

import shlex
import subprocess
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .ideal import Ideal, ideal_dim, saturate, saturate_by_product
from .intlinalg import Grading, graded_positive_weights, is_surjective, smith_normal_form
from .polynomial import Polynomial

PROVED = "proved"
REFUTED = "refuted"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class CheckStatus:
    name: str
    outcome: str
    witness: Optional[str] = None

    def __post_init__(self):
        if self.outcome not in (PROVED, REFUTED, UNKNOWN):
            raise ValueError(f"bad outcome {self.outcome!r}")
        if self.outcome != UNKNOWN and not self.witness:
            raise ValueError("proved and refuted checks need a witness")

    def to_dict(self) -> dict:
        return {"name": self.name, "outcome": self.outcome, "witness": self.witness}


@dataclass(frozen=True)
class VerificationReport:
    checks: Tuple[CheckStatus, ...] = field(default_factory=tuple)

    @property
    def overall(self) -> str:
        if any(c.outcome == REFUTED for c in self.checks):
            return "failed"
        if all(c.outcome == PROVED for c in self.checks):
            return "verified"
        return "weak"

    def __add__(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(self.checks + other.checks)

    def to_dict(self) -> dict:
        return {"overall": self.overall, "checks": [c.to_dict() for c in self.checks]}

    def get(self, name: str) -> Optional[CheckStatus]:
        for c in self.checks:
            if c.name == name:
                return c
        return None


def _degree(p: Polynomial, Q: Grading):
    deg = None
    for e in p.terms:
        d = Q.degree(e)
        if deg is None:
            deg = d
        elif d != deg:
            return None
    return deg


# ---------------------------------------------------------------- simple checks
def check_nonassociated(ideal: Ideal, Q: Grading, elems: Sequence[Polynomial],
                        name: str = "nonassociated") -> CheckStatus:
    gb = ideal.groebner() if not ideal.is_zero() else None
    nfs = [gb.normal_form(e) if gb else e for e in elems]
    for i, f in enumerate(nfs):
        if f.is_zero():
            return CheckStatus(name, REFUTED, f"element {i + 1} lies in the ideal")
    degs = [_degree(e, Q) for e in elems]
    if any(d is None for d in degs):
        return CheckStatus(name, UNKNOWN, None)
    pointed = graded_positive_weights(Q) is not None if Q.free else False
    undecided = []
    for i, j in combinations(range(len(elems)), 2):
        if degs[i] != degs[j]:
            continue
        a, b = nfs[i], nfs[j]
        exp, c = next(iter(b.items()))
        lam = a.terms.get(exp)
        if lam is not None and a == b.scale(lam / c):
            return CheckStatus(name, REFUTED, f"elements {i + 1} and {j + 1} are scalar multiples")
        undecided.append((i, j))
    if not pointed:
        return CheckStatus(name, UNKNOWN, None)
    return CheckStatus(name, PROVED,
                       "degrees differ" if not undecided else
                       "degrees differ or normal forms are not proportional")


def check_dim_pairs(ideal: Ideal, name: str = "dim_pairs") -> CheckStatus:
    r = ideal.arity
    d = ideal_dim(ideal)
    for i, j in combinations(range(r), 2):
        J = ideal + Ideal([Polynomial.var(i, r), Polynomial.var(j, r)], r)
        dj = ideal_dim(J)
        if d - dj < 2:
            return CheckStatus(name, REFUTED, f"pair (T{i + 1}, T{j + 1}): dim drops {d} -> {dj}")
    return CheckStatus(name, PROVED, f"dim {d}; every pair drops by at least 2")


def check_generation(Q: Grading, name: str = "generation") -> CheckStatus:
    """Any ``r - 1`` of the variable degrees generate ``K``."""
    for j in range(Q.arity):
        rest = [k for k in range(Q.arity) if k != j]
        if not is_surjective(Q.select(rest)):
            return CheckStatus(name, REFUTED, f"degrees without T{j + 1} do not generate K")
    return CheckStatus(name, PROVED, "every r-1 degrees generate K")


# ---------------------------------------------------------------- primality
def _variable_split(J: Ideal) -> Tuple[Optional[Ideal], List[int]]:
    """Repeatedly set variables lying in ``J`` to zero; returns the reduced ideal."""
    r = J.arity
    zero: List[int] = []
    cur = J
    while True:
        gb = cur.groebner()
        if gb.is_unit():
            return None, zero
        lin = [g for g in gb.polys if len(g) == 1 and sum(next(iter(g.terms))) == 1]
        if not lin:
            return cur, zero
        sub = {}
        for g in lin:
            i = next(iter(g.terms)).index(1)
            zero.append(i)
            sub[i] = 0
        gens = [g.substitute(sub) for g in gb.polys]
        cur = Ideal([g for g in gens if not g.is_zero()], r)


def _tier0(ideal: Ideal, elem: Polynomial) -> Tuple[str, Optional[str]]:
    r = ideal.arity
    if not ideal.is_zero() and saturate(ideal, elem) != ideal:
        return REFUTED, "element is a zero divisor modulo the ideal"
    J = ideal + elem
    rest, zero = _variable_split(J)
    if rest is None:
        return REFUTED, "element is a unit"
    gens = list(rest.groebner().polys) if not rest.is_zero() else []
    for g in gens:
        if len(g) == 1:
            e = next(iter(g.terms))
            if sum(e) > 1:
                return REFUTED, f"monomial {g} lies in the ideal but none of its variables does"
    if not gens:
        return PROVED, "quotient is a polynomial ring" + (
            f" after setting {_names(zero)} to zero" if zero else "")
    if all(len(g) == 2 for g in gens):
        rows = []
        for g in gens:
            (a, _), (b, _) = sorted(g.items())
            rows.append([x - y for x, y in zip(a, b)])
        S = smith_normal_form(rows)
        bad = [d for d in S.diagonal if d > 1]
        if bad:
            return REFUTED, f"exponent lattice has Smith invariants {S.diagonal} (not saturated)"
        sat = saturate_by_product(rest)
        if sat != rest:
            return REFUTED, "binomial ideal is not saturated by the variables"
        form = "[E%d|0]" % S.rank
        return PROVED, f"binomial ideal with Smith form {form}, fixed by variable saturation"
    return _torus_elimination(rest, gens)


def _eliminable(g: Polynomial) -> Optional[Tuple[int, Polynomial, Polynomial]]:
    """``g = u*T_j + h`` with ``u`` a monomial term and ``T_j`` absent from ``h``."""
    best = None
    for e, c in g.items():
        for j, k in enumerate(e):
            if k != 1 or any(f[j] for f in g.terms if f != e):
                continue
            u = tuple(0 if i == j else x for i, x in enumerate(e))
            unit = Polynomial.monomial(u, c)
            h = g - Polynomial.monomial(e, c)
            if best is None or j > best[0]:
                best = (j, unit, h)
    return best


def _torus_elimination(rest: Ideal, gens: List[Polynomial]) -> Tuple[str, Optional[str]]:
    # Inverting the used variables is harmless once they are non zero divisors;
    # over the torus, relations linear in some variable solve for it.
    r = rest.arity
    used = sorted({i for g in gens for i in g.support()})
    if saturate_by_product(rest, used) != rest:
        return UNKNOWN, None
    work = [g.strip_monomial() for g in gens]
    gone: List[int] = []
    while work:
        pick = None
        for idx, g in enumerate(sorted(work, key=len)):
            found = _eliminable(g)
            if found is not None:
                pick = (g, found)
                break
        if pick is None:
            break
        g, (j, unit, h) = pick
        work.remove(g)
        value = -h
        nxt = []
        for p in work:
            D = p.degree_in(j)
            if D <= 0:
                nxt.append(p)
                continue
            q = Polynomial.zero(r)
            for e, c in p.items():
                k = e[j]
                rest_e = tuple(0 if i == j else x for i, x in enumerate(e))
                q = q + Polynomial.monomial(rest_e, c) * value ** k * unit ** (D - k)
            if q.is_zero():
                continue
            q = q.strip_monomial()
            if q.is_constant():
                return UNKNOWN, None
            nxt.append(q)
        work = [q.strip_monomial() for q in Ideal(nxt, r).groebner().polys] if nxt else []
        if any(q.is_constant() for q in work):
            return UNKNOWN, None
        gone.append(j)
    if not work:
        return PROVED, (f"over the torus the relations solve for {_names(gone)}, "
                        "leaving a Laurent polynomial ring")
    if all(len(g) == 2 for g in work):
        rows = []
        for g in work:
            (a, _), (b, _) = sorted(g.items())
            rows.append([x - y for x, y in zip(a, b)])
        S = smith_normal_form(rows)
        if all(d in (0, 1) for d in S.diagonal):
            return PROVED, (f"over the torus the relations solve for {_names(gone)}, "
                            f"leaving a binomial ideal with Smith form [E{S.rank}|0]")
    return UNKNOWN, None


def _names(idx: Sequence[int]) -> str:
    return ", ".join(f"T{i + 1}" for i in sorted(set(idx)))


def _tier1(ideal: Ideal, elem: Polynomial) -> Tuple[str, Optional[str]]:
    J = ideal + elem
    rest, zero = _variable_split(J)
    if rest is None:
        return REFUTED, "element is a unit"
    if rest.is_zero():
        return PROVED, "quotient is a polynomial ring"
    sat = saturate_by_product(rest)
    if sat != rest:
        return REFUTED, "ideal plus element is not saturated by the variables"
    return UNKNOWN, None


def ask_oracle(command: str, ideal: Ideal, elem: Polynomial, timeout: float = 30.0) -> str:
    """Ask an external process whether ``ideal + <elem>`` is prime."""
    gens = [str(g) for g in ideal.generators]
    lines = [f"ISPRIME {ideal.arity} {len(gens)}"] + gens + [f"QUERY {elem}", ""]
    try:
        proc = subprocess.run(shlex.split(command), input="\n".join(lines), text=True,
                              capture_output=True, timeout=timeout)
    except (subprocess.TimeoutExpired, OSError):
        return "UNKNOWN"
    out = proc.stdout.strip().splitlines()
    answer = out[-1].strip() if out else ""
    return answer if answer in ("PRIME", "NOTPRIME", "UNKNOWN") else "UNKNOWN"


def check_K_prime(ideal: Ideal, Q: Optional[Grading], elem: Polynomial, tier: int = 0,
                  oracle: Optional[str] = None, timeout: float = 30.0,
                  name: Optional[str] = None) -> CheckStatus:
    """Tiered primality test of ``elem`` in ``Q[T]/I``.

    Tier 0 handles ideals that become binomial after removing variables;
    tier 1 adds necessary conditions; tier 2 consults the external oracle.
    Higher tiers run the lower ones first, so raising the tier never loses
    a proof.
    """
    name = name or f"K_prime({elem})"
    if Q is not None and _degree(elem, Q) is None:
        return CheckStatus(name, UNKNOWN, None)
    outcome, wit = _tier0(ideal, elem)
    if outcome != UNKNOWN or tier < 1:
        return CheckStatus(name, outcome, wit)
    outcome, wit = _tier1(ideal, elem)
    if outcome != UNKNOWN or tier < 2 or not oracle:
        return CheckStatus(name, outcome, wit)
    answer = ask_oracle(oracle, ideal, elem, timeout)
    if answer == "PRIME":
        return CheckStatus(name, PROVED, "external oracle answered PRIME")
    if answer == "NOTPRIME":
        return CheckStatus(name, REFUTED, "external oracle answered NOTPRIME")
    return CheckStatus(name, UNKNOWN, None)


def check_normal(normal_before: bool, K_free: bool, new_variable_checks: Sequence[CheckStatus],
                 name: str = "normal") -> CheckStatus:
    """Sufficient condition: normal source, free class group, new variables prime."""
    if any(c.outcome == REFUTED for c in new_variable_checks):
        return CheckStatus(name, REFUTED, "a new variable is not prime")
    if normal_before and K_free and all(c.outcome == PROVED for c in new_variable_checks):
        return CheckStatus(name, PROVED, "source ring normal, K free, new variables prime")
    return CheckStatus(name, UNKNOWN, None)


# ---------------------------------------------------------------- batteries
def verify_modify(X1, X2, tier: int = 0, oracle=None, timeout: float = 30.0) -> VerificationReport:
    from .intlinalg import rank as _rank
    checks = []
    P2 = [list(r) for r in X2.P]
    full = (not P2) or _rank(P2) == len(P2)
    checks.append(CheckStatus("gale_dual", PROVED if full else REFUTED,
                              "P2 has full row rank" if full else "P2 is rank deficient"))
    I2 = X2.ideal()
    checks.append(check_dim_pairs(I2))
    new = range(X1.r, X2.r)
    prime = [check_K_prime(I2, X2.grading, Polynomial.var(i, X2.r), tier, oracle, timeout,
                           name=f"K_prime(T{i + 1})") for i in new]
    checks.extend(prime)
    checks.append(check_normal(X1.status == "verified", X1.grading.is_free(), prime))
    return VerificationReport(tuple(checks))


def verify_compress(X, tier: int = 0, oracle=None, timeout: float = 30.0) -> VerificationReport:
    checks = [check_generation(X.grading)]
    I = X.ideal()
    checks.append(check_dim_pairs(I))
    for i in range(X.r):
        checks.append(check_K_prime(I, X.grading, Polynomial.var(i, X.r), tier, oracle, timeout,
                                    name=f"K_prime(T{i + 1})"))
    return VerificationReport(tuple(checks))


def verify_cemds(X, tier: int = 0, oracle=None, timeout: float = 30.0) -> VerificationReport:
    """Generation, dimension pairs, variable primality and non-association."""
    rep = verify_compress(X, tier, oracle, timeout)
    I = X.ideal()
    variables = [Polynomial.var(i, X.r) for i in range(X.r)]
    return rep + VerificationReport((check_nonassociated(I, X.grading, variables),))
