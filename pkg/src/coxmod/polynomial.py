"""Sparse multivariate polynomials over the rationals.

Exponents are tuples of naturals of fixed length (the ring arity) and
coefficients are ``gmpy2.mpq`` values, which are always reduced with a
positive denominator.  Variables print as ``T1 .. Tr`` (one-based).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

import gmpy2
from gmpy2 import mpq

Exponent = Tuple[int, ...]

ZERO = mpq(0)
ONE = mpq(1)


def rational(x) -> mpq:
    """Coerce ints, Fractions, decimal-free strings and mpq values to ``mpq``."""
    if isinstance(x, type(ZERO)):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, (int, type(gmpy2.mpz(0)))):
        return mpq(x)
    if isinstance(x, str):
        return mpq(Fraction(x).numerator, Fraction(x).denominator)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def to_fraction(q) -> Fraction:
    q = rational(q)
    return Fraction(int(q.numerator), int(q.denominator))


def format_rational(q) -> str:
    q = rational(q)
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


class MonomialOrder:
    """A block order whose blocks are weighted degree reverse lexicographic.

    ``blocks`` is a sequence of ``(variables, weights)``.  Variables inside a
    block are listed from largest to smallest, so the last variable of a
    block decides reverse-lexicographic ties first.  Earlier blocks dominate
    later ones, which is what elimination needs.
    """

    __slots__ = ("arity", "blocks", "_hash")

    def __init__(self, arity: int, blocks: Sequence[Tuple[Sequence[int], Sequence[int]]]):
        seen = []
        norm = []
        for variables, weights in blocks:
            variables = tuple(int(v) for v in variables)
            weights = tuple(int(w) for w in weights)
            if len(variables) != len(weights):
                raise ValueError("each block needs one weight per variable")
            if any(w <= 0 for w in weights):
                raise ValueError("weights must be positive")
            seen.extend(variables)
            norm.append((variables, weights))
        if sorted(seen) != list(range(arity)):
            raise ValueError("blocks must partition the variables")
        self.arity = arity
        self.blocks = tuple(norm)
        self._hash = hash((arity, self.blocks))

    @classmethod
    def degrevlex(cls, arity: int, weights: Optional[Sequence[int]] = None,
                  last: Optional[int] = None) -> "MonomialOrder":
        """Weighted degrevlex with ``T1 > T2 > ...``; ``last`` becomes the smallest variable."""
        weights = tuple(weights) if weights is not None else (1,) * arity
        variables = list(range(arity))
        if last is not None:
            variables.remove(last)
            variables.append(last)
        return cls(arity, [(variables, [weights[v] for v in variables])])

    @classmethod
    def elimination(cls, arity: int, eliminate: Iterable[int],
                    weights: Optional[Sequence[int]] = None) -> "MonomialOrder":
        """Two-block order eliminating the variables ``eliminate``."""
        weights = tuple(weights) if weights is not None else (1,) * arity
        first = sorted(set(eliminate))
        rest = [v for v in range(arity) if v not in set(first)]
        blocks = []
        if first:
            blocks.append((first, [weights[v] for v in first]))
        if rest:
            blocks.append((rest, [weights[v] for v in rest]))
        return cls(arity, blocks)

    def key(self, exp: Exponent) -> tuple:
        out = []
        for variables, weights in self.blocks:
            out.append(sum(w * exp[v] for v, w in zip(variables, weights)))
            out.extend(-exp[v] for v in reversed(variables))
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.arity == other.arity \
            and self.blocks == other.blocks

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"MonomialOrder({self.arity}, {self.blocks!r})"


def default_order(arity: int) -> MonomialOrder:
    return MonomialOrder.degrevlex(arity)


class Polynomial:
    """Immutable sparse polynomial in ``arity`` variables."""

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Optional[Mapping[Exponent, object]] = None):
        self.arity = int(arity)
        clean: Dict[Exponent, mpq] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != self.arity:
                    raise ValueError(f"exponent {exp} does not have length {self.arity}")
                if any(e < 0 for e in exp):
                    raise ValueError("negative exponents are not allowed")
                c = rational(c)
                if c:
                    c = clean.get(exp, ZERO) + c
                    if c:
                        clean[exp] = c
                    else:
                        clean.pop(exp, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, arity: int, terms: Dict[Exponent, mpq]) -> "Polynomial":
        p = cls.__new__(cls)
        p.arity = arity
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, arity: int) -> "Polynomial":
        return cls._raw(arity, {})

    @classmethod
    def constant(cls, c, arity: int) -> "Polynomial":
        c = rational(c)
        return cls._raw(arity, {(0,) * arity: c} if c else {})

    @classmethod
    def var(cls, i: int, arity: int) -> "Polynomial":
        """The variable ``T_{i+1}`` (zero-based index ``i``)."""
        if not 0 <= i < arity:
            raise IndexError(f"variable index {i} out of range for arity {arity}")
        exp = [0] * arity
        exp[i] = 1
        return cls._raw(arity, {tuple(exp): ONE})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> "Polynomial":
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def parse(cls, text: str, arity: Optional[int] = None) -> "Polynomial":
        from .textio import parse_polynomial
        return parse_polynomial(text, arity)

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> Mapping[Exponent, mpq]:
        return self._terms

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Exponent, mpq]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_term(self) -> mpq:
        return self._terms.get((0,) * self.arity, ZERO)

    def support(self) -> frozenset:
        """Indices of variables that occur."""
        s = set()
        for exp in self._terms:
            s.update(i for i, e in enumerate(exp) if e)
        return frozenset(s)

    def degree(self, weights: Optional[Sequence[int]] = None) -> int:
        if not self._terms:
            return -1
        if weights is None:
            return max(sum(e) for e in self._terms)
        return max(sum(w * e for w, e in zip(weights, exp)) for exp in self._terms)

    def degree_in(self, i: int) -> int:
        return max((exp[i] for exp in self._terms), default=-1)

    def sorted_terms(self, order: Optional[MonomialOrder] = None):
        order = order or default_order(self.arity)
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: Optional[MonomialOrder] = None):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        order = order or default_order(self.arity)
        return max(self._terms.items(), key=lambda t: order.key(t[0]))

    def leading_monomial(self, order=None) -> Exponent:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order=None) -> mpq:
        return self.leading_term(order)[1]

    def monomial_gcd(self) -> Exponent:
        if not self._terms:
            return (0,) * self.arity
        it = iter(self._terms)
        g = list(next(it))
        for exp in it:
            g = [min(a, b) for a, b in zip(g, exp)]
        return tuple(g)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.arity)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp, ZERO) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return Polynomial._raw(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.arity, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = rational(c)
        if not c:
            return Polynomial.zero(self.arity)
        return Polynomial._raw(self.arity, {e: v * c for e, v in self._terms.items()})

    def mul_monomial(self, exp: Exponent, c=ONE) -> "Polynomial":
        c = rational(c)
        if not c:
            return Polynomial.zero(self.arity)
        return Polynomial._raw(self.arity, {tuple(a + b for a, b in zip(e, exp)): v * c
                                            for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        if len(other._terms) == 1:
            (exp, c), = other._terms.items()
            return self.mul_monomial(exp, c)
        if len(self._terms) == 1:
            (exp, c), = self._terms.items()
            return other.mul_monomial(exp, c)
        out: Dict[Exponent, mpq] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, ZERO) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._raw(self.arity, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(1, self.arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divide_monomial(self, exp: Exponent) -> "Polynomial":
        out = {}
        for e, c in self._terms.items():
            q = tuple(a - b for a, b in zip(e, exp))
            if any(x < 0 for x in q):
                raise ValueError("monomial does not divide every term")
            out[q] = c
        return Polynomial._raw(self.arity, out)

    def strip_monomial(self) -> "Polynomial":
        """Divide by the largest monomial dividing every term."""
        g = self.monomial_gcd()
        return self.divide_monomial(g) if any(g) else self

    # -- normalisations -----------------------------------------------
    def monic(self, order: Optional[MonomialOrder] = None) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def primitive(self, order: Optional[MonomialOrder] = None) -> "Polynomial":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self._terms:
            return self
        den = 1
        for c in self._terms.values():
            den = gmpy2.lcm(den, c.denominator)
        num = 0
        for c in self._terms.values():
            num = gmpy2.gcd(num, (c * den).numerator)
        scale = mpq(den, num)
        if self.leading_coefficient(order) < 0:
            scale = -scale
        return self.scale(scale)

    # -- structural maps ----------------------------------------------
    def substitute(self, values: Mapping[int, object]) -> "Polynomial":
        """Replace variables by polynomials or scalars, keyed by zero-based index."""
        subs = {}
        for i, v in values.items():
            subs[i] = v if isinstance(v, Polynomial) else Polynomial.constant(v, self.arity)
            if subs[i].arity != self.arity:
                raise ValueError("substituted polynomial must live in the same ring")
        powers: Dict[Tuple[int, int], Polynomial] = {}
        out = Polynomial.zero(self.arity)
        for exp, c in self._terms.items():
            keep = tuple(0 if i in subs else e for i, e in enumerate(exp))
            term = Polynomial._raw(self.arity, {keep: c})
            for i, p in subs.items():
                if exp[i]:
                    key = (i, exp[i])
                    if key not in powers:
                        powers[key] = p ** exp[i]
                    term = term * powers[key]
            out = out + term
        return out

    def evaluate(self, point: Sequence[object]):
        point = [rational(x) for x in point]
        total = ZERO
        for exp, c in self._terms.items():
            v = c
            for x, e in zip(point, exp):
                if e:
                    v *= x ** e
            total += v
        return total

    def reindex(self, arity: int, mapping: Mapping[int, int]) -> "Polynomial":
        """Move variable ``i`` to ``mapping[i]`` in a ring of the given arity.

        Variables absent from ``mapping`` must not occur in the polynomial.
        """
        out = {}
        for exp, c in self._terms.items():
            new = [0] * arity
            for i, e in enumerate(exp):
                if e:
                    if i not in mapping:
                        raise ValueError(f"variable T{i + 1} has no image")
                    new[mapping[i]] += e
            new = tuple(new)
            out[new] = out.get(new, ZERO) + c
        return Polynomial(arity, out)

    def extend(self, arity: int) -> "Polynomial":
        """Embed into a ring with more variables appended at the end."""
        if arity < self.arity:
            raise ValueError("cannot shrink arity with extend")
        pad = (0,) * (arity - self.arity)
        return Polynomial._raw(arity, {e + pad: c for e, c in self._terms.items()})

    def is_associated_to(self, other: "Polynomial") -> bool:
        """True when the two polynomials differ by a nonzero scalar."""
        if set(self._terms) != set(other._terms) or not self._terms:
            return False
        it = iter(self._terms.items())
        e0, c0 = next(it)
        ratio = other._terms[e0] / c0
        return all(other._terms[e] == c * ratio for e, c in it)

    # -- comparison and printing --------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.arity == other.arity and self._terms == other._terms
        if isinstance(other, (int, Fraction, type(ZERO))):
            return self == Polynomial.constant(other, self.arity)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        from .textio import format_polynomial
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self.arity}, {str(self)!r})"


def variables(arity: int) -> Tuple[Polynomial, ...]:
    return tuple(Polynomial.var(i, arity) for i in range(arity))


def monomial_product(indices: Iterable[int], arity: int) -> Polynomial:
    exp = [0] * arity
    for i in indices:
        exp[i] += 1
    return Polynomial._raw(arity, {tuple(exp): ONE})
