from fractions import Fraction

import pytest
from hypothesis import given

from conftest import laurents, points, units
from extplane.laurent import ONE, P, Q, ZERO, Laurent


def test_printing():
    assert str(1 - (P * Q) ** -1) == "1 - p^-1*q^-1"
    assert str(Laurent.monomial(Fraction(2, 3), 1, 0)) == "2/3*p"
    assert str(ZERO) == "0"
    assert str(1 - P * Q) == "1 - p*q"


def test_units_and_inverse():
    u = -P ** 2 * Q ** -1
    assert u.is_unit()
    assert u * u.inverse() == ONE
    assert (P ** -3) * (P ** 3) == 1
    with pytest.raises(ZeroDivisionError):
        (1 + P).inverse()
    with pytest.raises(ZeroDivisionError):
        (1 + P) ** -1


def test_evaluate_rejects_zero():
    with pytest.raises(ValueError, match="nonunital evaluation point"):
        P.evaluate(0, 1)
    with pytest.raises(ValueError):
        ONE.evaluate(1, 0)


def test_substitute():
    e = 1 - P * Q ** -1
    assert e.substitute(p=(0, 1)) == 0
    assert (1 - P * Q).substitute(p=(0, 0), q=(0, 0)) == 0
    assert P.substitute(p=(0, -1)) == Q ** -1


def test_leading_term():
    assert (3 * P ** 2 - Q).leading_term() == ((2, 0), 3)


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(laurents, laurents, points)
def test_evaluation_is_a_homomorphism(a, b, pt):
    p, q = pt
    assert abs((a * b).evaluate(p, q) - a.evaluate(p, q) * b.evaluate(p, q)) < 1e-9
    assert abs((a + b).evaluate(p, q) - a.evaluate(p, q) - b.evaluate(p, q)) < 1e-9


@given(units)
def test_unit_inverse(u):
    assert u * u.inverse() == ONE
    assert u / u == ONE


@given(laurents)
def test_hash_matches_equality(a):
    assert hash(a + 0) == hash(a)
    assert {a: 1}[a + ZERO] == 1
