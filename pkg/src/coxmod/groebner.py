"""Buchberger's algorithm over the rationals.

Inside a computation every monomial is encoded as one Python integer whose
natural ordering *is* the monomial order.  For a block with variables
``v_1 > ... > v_m`` and weights ``w`` the encoding stores, from the most
significant end, the weighted degree and then ``MAXE - e(v_m), ...,
MAXE - e(v_1)`` in fixed-width fields, so comparing the integers compares
``(deg, -e(v_m), ..., -e(v_1))`` lexicographically.  The encoding is affine
in the exponent vector, which gives

* product:      ``key(a*b) = key(a) + key(b) - C``
* divisibility: ``a | b``  iff  ``(F(a) - F(b)) & GUARD == 0``

where ``F`` masks out the degree fields and ``GUARD`` holds the top bit of
every exponent field.  Pair handling follows Gebauer and Moeller; pairs
are selected by sugar degree.
"""

from __future__ import annotations

import contextvars
import heapq
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .polynomial import Exponent, MonomialOrder, Polynomial, default_order

FIELD_BITS = 20
MAXE = (1 << (FIELD_BITS - 1)) - 1
DEG_BITS = 48


class GroebnerBudgetExceeded(RuntimeError):
    """Raised when a computation processes more S-pairs than allowed."""


_budget: contextvars.ContextVar = contextvars.ContextVar("gb_step_budget", default=None)


class step_budget:
    """Context manager limiting the number of S-pair reductions per basis."""

    def __init__(self, steps: Optional[int]):
        self.steps = steps
        self._token = None

    def __enter__(self):
        self._token = _budget.set(self.steps)
        return self

    def __exit__(self, *exc):
        _budget.reset(self._token)
        return False


class _Packer:
    __slots__ = ("arity", "pos", "deg_pos", "blocks", "const", "field_mask", "guard")

    def __init__(self, order: MonomialOrder):
        self.arity = order.arity
        self.pos = [0] * order.arity
        self.deg_pos = []
        self.blocks = order.blocks
        shift = 0
        positions = []
        for variables, weights in reversed(order.blocks):
            for v in variables:          # first variable gets the lowest field
                self.pos[v] = shift
                shift += FIELD_BITS
            positions.append(shift)
            shift += DEG_BITS
        self.deg_pos = list(reversed(positions))
        self.const = sum(MAXE << p for p in self.pos)
        self.field_mask = sum(((1 << FIELD_BITS) - 1) << p for p in self.pos)
        self.guard = sum(1 << (p + FIELD_BITS - 1) for p in self.pos)

    def pack(self, exp: Exponent) -> int:
        key = 0
        for (variables, weights), dp in zip(self.blocks, self.deg_pos):
            key += sum(w * exp[v] for v, w in zip(variables, weights)) << dp
        for v, e in enumerate(exp):
            if e > MAXE:
                raise OverflowError("exponent too large for packed monomials")
            key += (MAXE - e) << self.pos[v]
        return key

    def unpack(self, key: int) -> Exponent:
        m = (1 << FIELD_BITS) - 1
        return tuple(MAXE - ((key >> p) & m) for p in self.pos)

    def degree(self, key: int) -> int:
        m = (1 << DEG_BITS) - 1
        return sum((key >> dp) & m for dp in self.deg_pos)

    def to_dict(self, p: Polynomial) -> Dict[int, mpq]:
        return {self.pack(e): c for e, c in p.items()}

    def to_poly(self, d: Dict[int, mpq]) -> Polynomial:
        return Polynomial._raw(self.arity, {self.unpack(k): c for k, c in d.items()})


class _Element:
    __slots__ = ("lm", "fm", "tail", "sugar", "exp")

    def __init__(self, lm, tail, sugar, exp, field_mask):
        self.lm = lm
        self.fm = lm & field_mask
        self.tail = tail
        self.sugar = sugar
        self.exp = exp


def _reduce(h: Dict[int, mpq], reducers: Sequence[_Element], pk: _Packer,
            full: bool = True) -> Dict[int, mpq]:
    """Reduce the dict-polynomial ``h`` (consumed) modulo monic ``reducers``."""
    if not h:
        return h
    fmask, guard = pk.field_mask, pk.guard
    heap = [-k for k in h]
    heapq.heapify(heap)
    rem: Dict[int, mpq] = {}
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        k = -pop(heap)
        c = h.pop(k, None)
        if c is None:
            continue
        kf = k & fmask
        red = None
        for g in reducers:
            if not ((g.fm - kf) & guard):
                red = g
                break
        if red is None:
            rem[k] = c
            if not full:
                for kk, cc in h.items():
                    rem[kk] = cc
                return rem
            continue
        d = k - red.lm
        for tk, tc in red.tail:
            nk = tk + d
            old = h.get(nk)
            if old is None:
                h[nk] = -c * tc
                push(heap, -nk)
            else:
                v = old - c * tc
                if v:
                    h[nk] = v
                else:
                    del h[nk]
    return rem


def _make_element(d: Dict[int, mpq], sugar: int, pk: _Packer) -> _Element:
    lm = max(d)
    inv = 1 / d[lm]
    tail = sorted(((k, c * inv) for k, c in d.items() if k != lm), reverse=True)
    return _Element(lm, tail, sugar, pk.unpack(lm), pk.field_mask)


def _lcm_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: Exponent, b: Exponent) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _buchberger(inputs: List[Dict[int, mpq]], pk: _Packer) -> List[_Element]:
    budget = _budget.get()
    steps = 0
    basis: List[_Element] = []
    active: List[int] = []
    pairs: List[Tuple[int, int, int, int]] = []   # (sugar, lcm key, i, j)
    lcm_cache: Dict[Tuple[int, int], Exponent] = {}

    def lcm(i, j):
        key = (i, j) if i < j else (j, i)
        v = lcm_cache.get(key)
        if v is None:
            v = _lcm_exp(basis[i].exp, basis[j].exp)
            lcm_cache[key] = v
        return v

    def pair_entry(i, j):
        e = lcm(i, j)
        L = pk.pack(e)
        s = max(basis[i].sugar + pk.degree(L) - pk.degree(basis[i].lm),
                basis[j].sugar + pk.degree(L) - pk.degree(basis[j].lm))
        return (s, L, i, j)

    def update(h: int):
        nonlocal pairs, active
        he = basis[h].exp
        cands = list(active)
        kept = []
        while cands:
            g = cands.pop()
            l1 = lcm(h, g)
            if _coprime(he, basis[g].exp):
                kept.append(g)
                continue
            dominated = any(_divides(lcm(h, g2), l1) for g2 in cands) or \
                any(_divides(lcm(h, g2), l1) for g2 in kept)
            if not dominated:
                kept.append(g)
        new_pairs = [g for g in kept if not _coprime(he, basis[g].exp)]
        filtered = []
        for entry in pairs:
            _, _, i, j = entry
            lij = lcm(i, j)
            if _divides(he, lij) and lcm(i, h) != lij and lcm(j, h) != lij:
                continue
            filtered.append(entry)
        filtered.extend(pair_entry(g, h) for g in new_pairs)
        heapq.heapify(filtered)
        pairs = filtered
        active = [g for g in active if not _divides(he, basis[g].exp)] + [h]

    def add(d: Dict[int, mpq], sugar: int):
        basis.append(_make_element(d, sugar, pk))
        update(len(basis) - 1)

    for d in sorted(inputs, key=lambda d: max(d)):
        sugar = max(pk.degree(k) for k in d)
        r = _reduce(dict(d), [basis[i] for i in active], pk)
        if r:
            add(r, sugar)

    while pairs:
        s, L, i, j = heapq.heappop(pairs)
        steps += 1
        if budget is not None and steps > budget:
            raise GroebnerBudgetExceeded(f"Groebner basis exceeded {budget} S-pair steps")
        fi, fj = basis[i], basis[j]
        di, dj = L - fi.lm, L - fj.lm
        h: Dict[int, mpq] = {}
        for tk, tc in fi.tail:
            h[tk + di] = tc
        for tk, tc in fj.tail:
            nk = tk + dj
            v = h.get(nk, 0) - tc
            if v:
                h[nk] = v
            else:
                h.pop(nk, None)
        r = _reduce(h, [basis[a] for a in active], pk)
        if r:
            add(r, s)
    return [basis[i] for i in active]


def _interreduce(elements: List[_Element], pk: _Packer) -> List[Dict[int, mpq]]:
    # minimal basis first: drop elements whose leading monomial is divisible by another
    elements = sorted(elements, key=lambda e: e.lm)
    minimal: List[_Element] = []
    for e in elements:
        if not any(_divides(m.exp, e.exp) for m in minimal):
            minimal.append(e)
    out = []
    for idx, e in enumerate(minimal):
        others = [m for m in minimal if m is not e]
        tail = _reduce(dict(e.tail), others, pk)
        tail[e.lm] = mpq(1)
        out.append(tail)
    out.sort(key=lambda d: max(d))
    return out


class GroebnerBasis:
    """A reduced, monic Groebner basis together with its monomial order."""

    __slots__ = ("order", "polys", "_pk", "_elements")

    def __init__(self, order: MonomialOrder, polys: Sequence[Polynomial]):
        self.order = order
        self.polys = tuple(polys)
        self._pk = _Packer(order)
        self._elements = None

    @property
    def arity(self) -> int:
        return self.order.arity

    def _reducers(self) -> List[_Element]:
        if self._elements is None:
            pk = self._pk
            self._elements = [_make_element(pk.to_dict(p), 0, pk) for p in self.polys]
        return self._elements

    def is_unit(self) -> bool:
        return any(p.is_constant() and not p.is_zero() for p in self.polys)

    def leading_monomials(self) -> List[Exponent]:
        return [p.leading_monomial(self.order) for p in self.polys]

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.arity != self.arity:
            raise ValueError("arity mismatch in normal form")
        if p.is_zero():
            return p
        pk = self._pk
        return pk.to_poly(_reduce(pk.to_dict(p), self._reducers(), pk))

    def reduces_to_zero(self, p: Polynomial) -> bool:
        if p.is_zero():
            return True
        pk = self._pk
        return not _reduce(pk.to_dict(p), self._reducers(), pk)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __repr__(self):
        return f"GroebnerBasis({[str(p) for p in self.polys]})"


def groebner_basis(polys: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
                   arity: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``polys``."""
    if arity is None:
        if not polys:
            raise ValueError("arity needed for an empty generating set")
        arity = polys[0].arity
    order = order or default_order(arity)
    if order.arity != arity:
        raise ValueError("order arity does not match the ring")
    pk = _Packer(order)
    inputs = []
    for p in polys:
        if p.arity != arity:
            raise ValueError("generators must share one arity")
        if not p.is_zero():
            inputs.append(pk.to_dict(p))
    if any(len(d) == 1 and pk.unpack(next(iter(d))) == (0,) * arity for d in inputs):
        return GroebnerBasis(order, [Polynomial.constant(1, arity)])
    elements = _buchberger(inputs, pk)
    reduced = _interreduce(elements, pk)
    return GroebnerBasis(order, [pk.to_poly(d) for d in reduced])
