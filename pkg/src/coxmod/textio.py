"""Text form of polynomials.

Grammar (whitespace is ignored)::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := rational | var ('^' nat)? | '(' expr ')'
    rational := int ('/' posint)?
    var      := 'T' nat

A leading sign is accepted on the first term.  Printing emits terms in
descending degrevlex order so that ``parse(format(p)) == p``.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from gmpy2 import mpq

from .polynomial import Polynomial, default_order, format_rational


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        caret = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {caret}")


class _Parser:
    def __init__(self, text: str, arity: int):
        self.text = text
        self.arity = arity
        self.pos = 0

    def error(self, message: str):
        raise PolynomialSyntaxError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def digits(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        acc = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if c == "T":
            self.pos += 1
            if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
                self.error("expected a variable index after 'T'")
            idx = self.digits()
            if idx < 1 or idx > self.arity:
                self.pos -= len(str(idx))
                self.error(f"variable T{idx} outside T1..T{self.arity}")
            power = 1
            if self.peek() == "^":
                self.pos += 1
                power = self.digits()
            exp = [0] * self.arity
            exp[idx - 1] = power
            return Polynomial._raw(self.arity, {tuple(exp): mpq(1)})
        if c.isdigit():
            num = self.digits()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.digits()
                if den == 0:
                    self.error("zero denominator")
            return Polynomial.constant(mpq(num, den), self.arity)
        if not c:
            self.error("unexpected end of input")
        self.error(f"unexpected character {c!r}")


def max_variable_index(text: str) -> int:
    best = 0
    i = 0
    while i < len(text):
        if text[i] == "T":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j > i + 1:
                best = max(best, int(text[i + 1:j]))
            i = j
        else:
            i += 1
    return best


def parse_polynomial(text: str, arity: Optional[int] = None) -> Polynomial:
    if arity is None:
        arity = max_variable_index(text)
    p = _Parser(text, arity)
    if not p.peek():
        p.error("empty polynomial")
    out = p.expr()
    if p.peek():
        p.error(f"unexpected character {p.peek()!r}")
    return out


def format_monomial(exp) -> str:
    parts = []
    for i, e in enumerate(exp):
        if e == 1:
            parts.append(f"T{i + 1}")
        elif e > 1:
            parts.append(f"T{i + 1}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    chunks: List[Tuple[bool, str]] = []
    for exp, c in p.sorted_terms(default_order(p.arity)):
        neg = c < 0
        mag = -c if neg else c
        mono = format_monomial(exp)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        chunks.append((neg, body))
    first_neg, first = chunks[0]
    out = ("-" if first_neg else "") + first
    for neg, body in chunks[1:]:
        out += (" - " if neg else " + ") + body
    return out
