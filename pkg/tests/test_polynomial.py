import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from coxmod.polynomial import MonomialOrder, Polynomial, monomial_product
from coxmod.textio import PolynomialSyntaxError, format_polynomial, parse_polynomial

R = 4


@st.composite
def polys(draw, arity=R, max_terms=5, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_exp)) for _ in range(arity))
        num = draw(st.integers(-9, 9))
        den = draw(st.integers(1, 4))
        terms[e] = terms.get(e, 0) + mpq(num, den)
    return Polynomial(arity, terms)


def test_parse_basic():
    p = Polynomial.parse("T1^2*T2 - 3/2*T3 + 1", 3)
    assert p.terms[(2, 1, 0)] == 1
    assert p.terms[(0, 0, 1)] == mpq(-3, 2)
    assert p.constant_term() == 1


def test_parse_parentheses_expand():
    p = Polynomial.parse("(T1 - T2)*(T1 + T2)", 2)
    assert p == Polynomial.parse("T1^2 - T2^2", 2)


def test_parse_error_reports_position():
    with pytest.raises(PolynomialSyntaxError) as exc:
        parse_polynomial("T1 + * T2", 2)
    assert exc.value.position == 5


def test_parse_rejects_variable_out_of_range():
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial("T5", 3)


@given(polys())
def test_print_parse_round_trip(p):
    assert parse_polynomial(format_polynomial(p), R) == p


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Polynomial.zero(R)


@given(polys())
def test_primitive_has_integer_coprime_coefficients(p):
    q = p.primitive()
    if p.is_zero():
        assert q.is_zero()
        return
    assert all(c.denominator == 1 for c in q.terms.values())
    from math import gcd
    g = 0
    for c in q.terms.values():
        g = gcd(g, int(c))
    assert g == 1
    assert q.leading_coefficient() > 0
    assert q.is_associated_to(p)


def test_strip_monomial():
    p = Polynomial.parse("T1^2*T2 + T1*T2^3", 2)
    assert p.strip_monomial() == Polynomial.parse("T1 + T2^2", 2)


def test_substitute_and_evaluate():
    p = Polynomial.parse("T1*T2 - T3", 3)
    q = p.substitute({2: Polynomial.parse("T1*T2", 3)})
    assert q.is_zero()
    assert p.evaluate([2, 3, 1]) == 5


def test_reindex_moves_variables():
    p = Polynomial.parse("T1 - T2^2", 2)
    assert p.reindex(3, {0: 2, 1: 0}) == Polynomial.parse("T3 - T1^2", 3)


def test_monomial_product():
    assert monomial_product([0, 2], 3) == Polynomial.parse("T1*T3", 3)


def test_degrevlex_orders_by_degree_then_reverse_lex():
    order = MonomialOrder.degrevlex(3)
    p = Polynomial.parse("T1*T3 + T2^2 + T1^3", 3)
    assert p.leading_monomial(order) == (3, 0, 0)
    q = Polynomial.parse("T1*T3 + T2^2", 3)
    # in degrevlex the monomial with the smaller last exponent wins
    assert q.leading_monomial(order) == (0, 2, 0)


def test_weighted_order_respects_weights():
    order = MonomialOrder.degrevlex(2, weights=[1, 5])
    p = Polynomial.parse("T1^4 + T2", 2)
    assert p.leading_monomial(order) == (0, 1)
