"""Ideals of polynomial rings over the rationals and the usual operations on them."""

from __future__ import annotations

from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .groebner import GroebnerBasis, groebner_basis
from .intlinalg import Grading, finest_grading, graded_positive_weights
from .polynomial import MonomialOrder, Polynomial, default_order, rational


def positive_weights(polys: Sequence[Polynomial], arity: int) -> Optional[List[int]]:
    """Positive weights making every polynomial homogeneous, if such weights exist."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return [1] * arity
    return graded_positive_weights(finest_grading(polys, arity))


class Ideal:
    """Ideal of ``Q[T1..Tr]`` given by generators; Groebner bases are cached per order."""

    __slots__ = ("arity", "generators", "_gb", "_weights")

    def __init__(self, generators: Iterable[Polynomial] = (), arity: Optional[int] = None):
        gens = [g for g in generators]
        if arity is None:
            if not gens:
                raise ValueError("arity needed for an ideal without generators")
            arity = gens[0].arity
        for g in gens:
            if g.arity != arity:
                raise ValueError("all generators must share the ring arity")
        uniq: List[Polynomial] = []
        seen = set()
        for g in gens:
            if g.is_zero():
                continue
            g = g.monic()
            if g not in seen:
                seen.add(g)
                uniq.append(g)
        self.arity = int(arity)
        self.generators: Tuple[Polynomial, ...] = tuple(uniq)
        self._gb: Dict[MonomialOrder, GroebnerBasis] = {}
        self._weights = False

    @classmethod
    def parse(cls, texts: Iterable[str], arity: int) -> "Ideal":
        return cls([Polynomial.parse(t, arity) for t in texts], arity)

    @classmethod
    def unit(cls, arity: int) -> "Ideal":
        return cls([Polynomial.constant(1, arity)], arity)

    @classmethod
    def zero(cls, arity: int) -> "Ideal":
        return cls([], arity)

    # ---- Groebner data
    def weights(self) -> Optional[List[int]]:
        """Positive weights under which all generators are homogeneous (cached)."""
        if self._weights is False:
            self._weights = positive_weights(self.generators, self.arity)
        return self._weights

    def groebner(self, order: Optional[MonomialOrder] = None) -> GroebnerBasis:
        if order is None:
            w = self.weights()
            order = MonomialOrder.degrevlex(self.arity, w) if w else default_order(self.arity)
        gb = self._gb.get(order)
        if gb is None:
            gb = groebner_basis(list(self.generators), order, self.arity)
            self._gb[order] = gb
        return gb

    def any_groebner(self) -> GroebnerBasis:
        if self._gb:
            return next(iter(self._gb.values()))
        return self.groebner()

    def contains(self, p: Polynomial) -> bool:
        if p.is_zero():
            return True
        if not self.generators:
            return False
        return self.any_groebner().reduces_to_zero(p)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def is_unit(self) -> bool:
        return bool(self.generators) and self.any_groebner().is_unit()

    def is_zero(self) -> bool:
        return not self.generators

    def __eq__(self, other):
        if not isinstance(other, Ideal) or other.arity != self.arity:
            return NotImplemented
        return self.contains_ideal(other) and other.contains_ideal(self)

    __hash__ = None

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Polynomial):
            other = Ideal([other], self.arity)
        return Ideal(self.generators + other.generators, self.arity)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal([a * b for a in self.generators for b in other.generators], self.arity)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def reduced(self) -> "Ideal":
        """The ideal generated by its reduced Groebner basis."""
        out = Ideal(self.groebner().polys, self.arity)
        return out

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"


def _as_ideal(x, arity: Optional[int] = None) -> Ideal:
    if isinstance(x, Ideal):
        return x
    return Ideal(list(x), arity)


def groebner(ideal: Ideal, order: Optional[MonomialOrder] = None) -> GroebnerBasis:
    if order is not None and order.arity != ideal.arity:
        raise ValueError("order arity does not match the ideal")
    return ideal.groebner(order)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(p)


# ---------------------------------------------------------------- saturation
def _saturate_variable(ideal: Ideal, i: int) -> Ideal:
    """``I : T_i^infinity``, via weighted degrevlex with ``T_i`` smallest when possible."""
    if ideal.is_zero():
        return ideal
    w = ideal.weights()
    if w is None:
        return _saturate_rabinowitsch(ideal, Polynomial.var(i, ideal.arity))
    order = MonomialOrder.degrevlex(ideal.arity, w, last=i)
    gb = ideal.groebner(order)
    out = []
    changed = False
    for g in gb.polys:
        k = g.monomial_gcd()[i]
        if k:
            changed = True
            e = [0] * ideal.arity
            e[i] = k
            g = g.divide_monomial(tuple(e))
        out.append(g)
    if not changed:
        return ideal
    return Ideal(out, ideal.arity)


def _saturate_rabinowitsch(ideal: Ideal, f: Polynomial) -> Ideal:
    r = ideal.arity
    y = Polynomial.var(r, r + 1)
    gens = [g.extend(r + 1) for g in ideal.generators]
    gens.append(y * f.extend(r + 1) - 1)
    return eliminate(Ideal(gens, r + 1), [r])


def _saturate_homogeneous(ideal: Ideal, f: Polynomial) -> Optional[Ideal]:
    """``I : f^infinity`` through ``(I + <y - f>) : y^infinity`` followed by ``y -> f``."""
    r = ideal.arity
    y = Polynomial.var(r, r + 1)
    gens = [g.extend(r + 1) for g in ideal.generators] + [y - f.extend(r + 1)]
    big = Ideal(gens, r + 1)
    if big.weights() is None:
        return None
    sat = _saturate_variable(big, r)
    back = [g.substitute({r: f.extend(r + 1)}) for g in sat.generators]
    return Ideal([_drop_last(g, r) for g in back], r)


def _drop_last(p: Polynomial, r: int) -> Polynomial:
    return Polynomial._raw(r, {e[:r]: c for e, c in p.items()})


def saturate(ideal: Ideal, f: Polynomial, method: str = "auto") -> Ideal:
    """``I : f^infinity``.

    Monomials are handled one variable at a time with the weighted
    degrevlex trick; other elements go through an auxiliary variable.
    ``method="rabinowitsch"`` forces the elimination route, which serves as
    an independent cross-check.
    """
    if f.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    if f.arity != ideal.arity:
        raise ValueError("arity mismatch in saturation")
    if ideal.is_zero() or f.is_constant():
        return ideal
    if method == "rabinowitsch":
        return _saturate_rabinowitsch(ideal, f)
    if method != "auto":
        raise ValueError(f"unknown saturation method {method!r}")
    if f.is_monomial():
        exp = next(iter(f.terms))
        out = ideal
        for i, e in enumerate(exp):
            if e:
                out = _saturate_variable(out, i)
        return out
    out = _saturate_homogeneous(ideal, f)
    if out is None:
        out = _saturate_rabinowitsch(ideal, f)
    return out


def saturate_by_product(ideal: Ideal, indices: Optional[Iterable[int]] = None) -> Ideal:
    """``I : (prod T_i)^infinity`` over the chosen variables (all by default)."""
    idx = range(ideal.arity) if indices is None else indices
    out = ideal
    for i in idx:
        out = _saturate_variable(out, i)
    return out


def saturate_ideal(ideal: Ideal, J: Ideal) -> Ideal:
    """``I : J^infinity`` as the intersection of the saturations by generators of ``J``."""
    parts = [saturate(ideal, g) for g in J.generators]
    if not parts:
        return ideal
    parts = [p for p in parts if not p.is_unit()]
    if not parts:
        return Ideal.unit(ideal.arity)
    out = parts[0]
    for p in parts[1:]:
        if out.contains_ideal(p):
            out = p
        elif not p.contains_ideal(out):
            out = intersect(out, p)
    return out


# ---------------------------------------------------------------- elimination
def eliminate(ideal: Ideal, variables: Iterable[int]) -> Ideal:
    """``I`` intersected with the subring of the remaining variables, in the smaller arity."""
    elim = sorted(set(variables))
    r = ideal.arity
    if any(v < 0 or v >= r for v in elim):
        raise ValueError("variable index out of range")
    keep = [v for v in range(r) if v not in set(elim)]
    if not elim:
        return ideal
    mapping = {v: k for k, v in enumerate(keep)}
    if ideal.is_zero():
        return Ideal.zero(len(keep))
    order = MonomialOrder.elimination(r, elim, ideal.weights())
    gb = ideal.groebner(order)
    out = []
    for g in gb.polys:
        if all(e[v] == 0 for e in g.terms for v in elim):
            out.append(g.reindex(len(keep), mapping))
    return Ideal(out, len(keep))


def intersect(a: Ideal, b: Ideal) -> Ideal:
    if a.arity != b.arity:
        raise ValueError("arity mismatch in intersection")
    r = a.arity
    if a.is_zero() or b.is_zero():
        return Ideal.zero(r)
    if a.is_unit():
        return b
    if b.is_unit():
        return a
    t = Polynomial.var(r, r + 1)
    one_minus = Polynomial.constant(1, r + 1) - t
    gens = [t * g.extend(r + 1) for g in a.generators] + \
        [one_minus * g.extend(r + 1) for g in b.generators]
    return eliminate(Ideal(gens, r + 1), [r])


def divide_exact(p: Polynomial, f: Polynomial) -> Polynomial:
    """Exact quotient ``p / f``; raises if ``f`` does not divide ``p``."""
    order = default_order(p.arity)
    lm_f, lc_f = f.leading_term(order)
    q = Polynomial.zero(p.arity)
    rem = p
    while not rem.is_zero():
        lm, lc = rem.leading_term(order)
        diff = tuple(a - b for a, b in zip(lm, lm_f))
        if any(x < 0 for x in diff):
            raise ValueError("polynomial division is not exact")
        t = Polynomial.monomial(diff, lc / lc_f)
        q = q + t
        rem = rem - t * f
    return q


def quotient(ideal: Ideal, f: Polynomial) -> Ideal:
    """``I : f``."""
    if f.is_zero():
        return Ideal.unit(ideal.arity)
    inter = intersect(ideal, Ideal([f], ideal.arity))
    return Ideal([divide_exact(g, f) for g in inter.generators], ideal.arity)


# ---------------------------------------------------------------- misc
def ideal_power(ideal: Ideal, k: int) -> Ideal:
    """All ``k``-fold products of generators; the unit ideal for ``k <= 0``."""
    if k <= 0:
        return Ideal.unit(ideal.arity)
    gens = list(ideal.generators)
    out = {Polynomial.constant(1, ideal.arity)}
    for _ in range(k):
        out = {a * g for a in out for g in gens}
    return Ideal(sorted(out, key=str), ideal.arity)


def ideal_dim(ideal: Ideal) -> int:
    """Krull dimension of ``Q[T]/I``; ``-1`` for the unit ideal."""
    r = ideal.arity
    if ideal.is_zero():
        return r
    gb = ideal.groebner()
    if gb.is_unit():
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in gb.leading_monomials()]
    supports = [s for s in supports if s]

    def ok(chosen: frozenset) -> bool:
        return not any(s <= chosen for s in supports)

    # search larger subsets first so the first hit is maximal
    for size in range(r, -1, -1):
        for sub in combinations(range(r), size):
            if ok(frozenset(sub)):
                return size
    return 0


def is_homogeneous(p: Polynomial, grading: Grading) -> Optional[Tuple[int, ...]]:
    """Common degree of all terms of ``p``, or ``None`` if the terms disagree."""
    if grading.arity != p.arity:
        raise ValueError("grading arity does not match the polynomial")
    deg = None
    for e in p.terms:
        d = grading.degree(e)
        if deg is None:
            deg = d
        elif d != deg:
            return None
    if deg is None:
        return tuple(0 for _ in grading.matrix)
    return deg


def minimal_generators(ideal: Ideal, weights: Optional[Sequence[int]] = None) -> List[Polynomial]:
    """A minimal homogeneous generating set (for positively graded ideals)."""
    w = list(weights) if weights is not None else ideal.weights()
    if w is None:
        raise ValueError("minimal generators need a positive grading")
    gens = sorted(ideal.groebner().polys, key=lambda g: (g.degree(w), str(g)))
    kept: List[Polynomial] = []
    for g in gens:
        if kept and Ideal(kept, ideal.arity).contains(g):
            continue
        kept.append(g)
    # second pass: drop any element generated by the others of lower or equal degree
    changed = True
    while changed:
        changed = False
        for i in range(len(kept)):
            rest = kept[:i] + kept[i + 1:]
            if rest and Ideal(rest, ideal.arity).contains(kept[i]):
                kept = rest
                changed = True
                break
    return [g.primitive() for g in kept]
