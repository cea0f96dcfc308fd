import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import exprs
from extplane.algebra import Expr, Gen
from extplane.laurent import P, Q
from extplane.sampling import random_expr
from extplane.syntax import (NEGATIVE_EXPONENT_MSG, ParseError, expr_from_json, expr_to_json,
                             format_expr, laurent_from_json, laurent_to_json, parse_expr)

t, f, T, F = Gen.theta, Gen.phi, Gen.Theta, Gen.Phi


def test_parse_examples():
    assert parse_expr("theta*phi + p^-1 * phi*theta") == Expr.word(t, f) + P ** -1 * Expr.word(f, t)
    assert parse_expr("(1 - p*q) * Phi * theta") == (1 - P * Q) * Expr.word(F, t)
    assert parse_expr("theta^2") == Expr.word(t, t)
    assert parse_expr("2/3 theta phi") == Expr.word(t, f, coeff=Fraction(2, 3))


def test_juxtaposition_and_powers():
    assert parse_expr("p q theta") == parse_expr("p*q*theta")
    assert parse_expr("(p*q)^-1") == Expr.scalar((P * Q) ** -1)
    assert parse_expr("q^(-2)") == Expr.scalar(Q ** -2)
    assert parse_expr("theta^0") == Expr.scalar(1)


def test_negative_exponent_on_generator():
    with pytest.raises(ParseError, match="negative exponents are parameter-only") as info:
        parse_expr("theta^-1")
    assert NEGATIVE_EXPONENT_MSG in str(info.value)
    with pytest.raises(ParseError):
        parse_expr("(1 + p)^-1")


def test_syntax_error_location():
    with pytest.raises(ParseError) as info:
        parse_expr("theta +\n  * phi")
    assert (info.value.line, info.value.col) == (2, 3)
    assert info.value.expected
    with pytest.raises(ParseError, match="unknown name"):
        parse_expr("chi")
    with pytest.raises(ParseError, match="zero denominator"):
        parse_expr("1/0")


def test_format_examples():
    assert format_expr(Expr()) == "0"
    assert format_expr(parse_expr("-theta")) == "-theta"
    assert format_expr(parse_expr("phi*theta - 2*p*theta*phi")) == "-2*p*theta*phi + phi*theta"
    assert format_expr(parse_expr("p*Theta*phi"), unicode=True) == "p·Θφ"
    assert format_expr(parse_expr("q^-1*d_theta"), unicode=True) == "q⁻¹·∂θ"


def test_json_shapes():
    data = expr_to_json(parse_expr("p^-1*theta*phi"))
    assert data == {"terms": [{"coeff": {"terms": [{"p_exp": -1, "q_exp": 0, "num": 1, "den": 1}]},
                               "word": ["theta", "phi"]}]}
    assert format_expr(parse_expr("theta"), mode="json") == expr_to_json(parse_expr("theta"))
    c = 1 - P * Q / 3
    assert laurent_from_json(laurent_to_json(c)) == c


@given(exprs())
def test_round_trip(e):
    assert parse_expr(format_expr(e)) == e
    assert expr_from_json(expr_to_json(e)) == e


def test_round_trip_seeded():
    rng = random.Random(11)
    for _ in range(300):
        e = random_expr(rng)
        assert parse_expr(format_expr(e)) == e
