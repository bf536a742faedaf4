import sys
import textwrap

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from coxmod.cemds import VERIFIED
from coxmod.ideal import Ideal
from coxmod.intlinalg import Grading
from coxmod.polynomial import Polynomial
from coxmod.verify import (CheckStatus, VerificationReport, check_dim_pairs, check_K_prime,
                           check_nonassociated, check_normal, verify_cemds)

from fixtures import p345
from oracles import symbols, to_sympy


def P(text, r):
    return Polynomial.parse(text, r)


def test_report_overall():
    ok = CheckStatus("a", "proved", "w")
    bad = CheckStatus("b", "refuted", "w")
    unk = CheckStatus("c", "unknown")
    assert VerificationReport((ok,)).overall == "verified"
    assert VerificationReport((ok, unk)).overall == "weak"
    assert VerificationReport((ok, unk, bad)).overall == "failed"
    with pytest.raises(ValueError):
        CheckStatus("d", "proved")


def test_nonassociated():
    Q = Grading.from_rows([[1, 1]])
    assert check_nonassociated(Ideal.zero(2), Q, [P("T1", 2), P("2*T1", 2)]).outcome == "refuted"
    assert check_nonassociated(Ideal.zero(2), Q, [P("T1", 2), P("T2", 2)]).outcome == "proved"


def test_nonassociated_modulo_ideal():
    Q = Grading.from_rows([[1, 1]])
    I = Ideal([P("T1 - 3*T2", 2)], 2)
    assert check_nonassociated(I, Q, [P("T1", 2), P("T2", 2)]).outcome == "refuted"


def test_dim_pairs():
    assert check_dim_pairs(Ideal.zero(3)).outcome == "proved"
    c = check_dim_pairs(Ideal([P("T1 - T2", 2)], 2))
    assert c.outcome == "refuted" and "(T1, T2)" in c.witness


def test_variable_in_trinomial_ring():
    I = Ideal([P("T1*T2 + T3*T4 + T5*T6", 6)], 6)
    assert check_K_prime(I, None, P("T1", 6)).outcome == "proved"
    # in a single binomial ring the same variable cuts out T3*T4 = 0
    J = Ideal([P("T1*T2 - T3*T4", 4)], 4)
    assert check_K_prime(J, None, P("T1", 4)).outcome == "refuted"


def test_variable_dividing_a_product_is_not_prime():
    I = Ideal([P("T1*T2", 2)], 2)
    assert check_K_prime(I, None, P("T1", 2)).outcome == "refuted"


def test_torsion_exponent_row_is_refuted():
    c = check_K_prime(Ideal.zero(2), None, P("T1^2 - T2^2", 2))
    assert c.outcome == "refuted" and "Smith" in c.witness


def test_dense_cubic_without_oracle_is_unknown():
    f = P("T1^3 + T2^3 + T3^3 + T1*T2*T3", 3)
    assert check_K_prime(Ideal.zero(3), None, f, tier=2).outcome == "unknown"


def test_inhomogeneous_element_is_unknown():
    Q = Grading.from_rows([[1, 1]])
    assert check_K_prime(Ideal.zero(2), Q, P("T1 - T2^2", 2)).outcome == "unknown"


def test_external_oracle_protocol(tmp_path):
    script = tmp_path / "oracle.py"
    script.write_text(textwrap.dedent("""
        import sys
        lines = sys.stdin.read().splitlines()
        assert lines[0].startswith("ISPRIME 3 0")
        print("PRIME")
    """))
    f = P("T1^3 + T2^3 + T3^3 + T1*T2*T3", 3)
    cmd = f"{sys.executable} {script}"
    assert check_K_prime(Ideal.zero(3), None, f, tier=2, oracle=cmd).outcome == "proved"
    assert check_K_prime(Ideal.zero(3), None, f, tier=1, oracle=cmd).outcome == "unknown"


def test_normality_rule():
    good = CheckStatus("K_prime(T5)", "proved", "w")
    bad = CheckStatus("K_prime(T5)", "refuted", "w")
    assert check_normal(True, True, [good]).outcome == "proved"
    assert check_normal(True, False, [good]).outcome == "unknown"
    assert check_normal(True, True, [bad]).outcome == "refuted"


def test_verify_toric_and_blown_up():
    assert verify_cemds(p345()).overall == "verified"


# ------------------------------------------------------------ soundness and monotonicity
@st.composite
def small_polys(draw):
    n = draw(st.integers(2, 4))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, 3)) for _ in range(3))
        terms[e] = draw(st.integers(-3, 3))
    return Polynomial(3, {e: c for e, c in terms.items() if c})


@settings(max_examples=120)
@given(small_polys())
def test_tier0_proofs_are_sound_and_monotone(f):
    if f.is_constant():
        return
    c0 = check_K_prime(Ideal.zero(3), None, f, tier=0)
    c1 = check_K_prime(Ideal.zero(3), None, f, tier=1)
    if c0.outcome != "unknown":
        assert c1.outcome == c0.outcome
    if c0.outcome == "proved":
        # a principal prime ideal needs an irreducible generator (over Q already)
        _, factors = sympy.factor_list(to_sympy(f, symbols(3)))
        assert len(factors) == 1 and factors[0][1] == 1
