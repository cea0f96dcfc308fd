import itertools
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import exprs, words
from extplane.algebra import Expr, Gen
from extplane.laurent import P, Q
from extplane.rewrite import (CalculusType, RewriteRule, apply_derivative, build_ruleset,
                              check_confluence, check_consistency, classical_ruleset,
                              critical_pairs, exterior_d, normal_basis_words, normalize,
                              normalize_product, plane_relation, reachable_normal_forms)
from extplane.syntax import format_expr, parse_expr

T, F, t, f, dt, df = Gen.Theta, Gen.Phi, Gen.theta, Gen.phi, Gen.d_theta, Gen.d_phi
I, II = CalculusType.TYPE_I, CalculusType.TYPE_II
RS = {ct: build_ruleset(ct) for ct in CalculusType}
w = Expr.word

# Θ^a Φ^b θ^c φ^d ∂θ^e ∂φ^f with c, d, e, f in {0, 1}
NORMAL_WORD = re.compile(r"^(T)*(F)*(t)?(f)?(D)?(E)?$")
CODE = {T: "T", F: "F", t: "t", f: "f", dt: "D", df: "E"}


def code(word):
    return "".join(CODE[g] for g in word)


def test_rule_examples():
    assert RS[I][(f, T)] == P * w(T, f) + (1 - P * Q) * w(F, t)
    assert RS[I][(f, t)] == -P * w(t, f)
    assert RS[II][(f, T)] == Q ** -1 * w(T, f)
    assert len(RS[I].rules) == len(RS[II].rules) == 19


def test_rule_validation():
    with pytest.raises(ValueError):
        RewriteRule((t, f), w(f, t))          # right side not smaller
    with pytest.raises(ValueError):
        RewriteRule((f, t), w(T, f))          # parity changes


def test_normalize_examples():
    assert normalize(plane_relation(), RS[I]) == 0
    assert normalize(w(t, F), RS[I]) == Q * w(F, t)
    assert normalize(plane_relation() * w(T), RS[I]) == 0
    for rs in RS.values():
        assert normalize(w(F, T), rs) == Q ** -1 * w(T, F)
    assert format_expr(normalize(parse_expr("phi*Theta"), RS[I])) == "p*Theta*phi + (1 - p*q)*Phi*theta"


def test_exterior_d_examples():
    assert exterior_d(w(t)) == w(T)
    assert exterior_d(w(t, f)) == w(T, f) - w(t, F)
    assert exterior_d(exterior_d(w(t, f), RS[I]), RS[I]) == 0
    assert exterior_d(w(T, F)) == 0
    with pytest.raises(ValueError, match="d undefined on derivative generators"):
        exterior_d(w(dt, t))


def test_apply_derivative_examples():
    assert apply_derivative(1, w(t, f), RS[I]) == w(f)
    assert apply_derivative(2, w(t, f), RS[I]) == -Q * w(t)
    assert apply_derivative(1, w(f), RS[I]) == 0
    assert apply_derivative(1, w(t), RS[II]) == 1
    # derivatives see through differentials
    assert apply_derivative(1, w(T, t), RS[I]) == w(T)


def test_normalize_product_is_right_fold():
    factors = [w(t), w(f), w(T)]
    assert normalize_product(factors, RS[I]) == normalize(w(t, f, T), RS[I])


def test_critical_pair_examples():
    pairs = {cp.word: cp for cp in critical_pairs(RS[I])}
    for word in [(f, t, t), (t, t, t), (df, f, t)]:
        cp = pairs[word]
        assert normalize(cp.left, RS[I]) == normalize(cp.right, RS[I])
    assert normalize(pairs[(t, t, t)].left, RS[I]) == 0
    # θφ is already normal, so ∂θθφ is not an overlap; its two groupings still agree
    assert (dt, t, f) not in pairs
    assert (normalize(normalize(w(dt, t), RS[I]) * w(f), RS[I])
            == normalize(w(dt) * normalize(w(t, f), RS[I]), RS[I]))


def test_critical_pairs_exhaustive_over_triples():
    rs = RS[I]
    expected = sum(1 for x, y, z in itertools.product(Gen, repeat=3) if (x, y) in rs and (y, z) in rs)
    assert len(critical_pairs(rs)) == expected == 44


@pytest.mark.parametrize("ct", list(CalculusType))
def test_confluence(ct):
    report = check_confluence(RS[ct])
    assert report.ok and report.overlaps_checked == 44


def test_minus_sign_variant_is_not_confluent():
    report = check_confluence(build_ruleset(II, theta_Phi_sign=-1))
    assert not report.ok
    assert {w for w, _, _ in report.failures} == {(dt, t, F), (df, t, F)}
    # the flag does nothing for type I, whose Θφ coefficient is zero
    assert build_ruleset(I, theta_Phi_sign=-1) == RS[I]


@pytest.mark.parametrize("ct", list(CalculusType))
def test_consistency(ct):
    report = check_consistency(RS[ct])
    assert report.ok, [(i.name, format_expr(i.residual)) for i in report.failures]
    assert {i.group for i in report.items} == {"products", "leibniz", "d-squared", "derivatives"}


def test_minus_sign_variant_is_inconsistent():
    report = check_consistency(build_ruleset(II, theta_Phi_sign=-1))
    failing = {i.name: i.residual for i in report.failures}
    assert failing["d(theta*phi + p^-1*phi*theta)"] == (2 - 2 * (P * Q) ** -1) * w(T, f)


def test_p_equal_q_equal_one_is_classical():
    for rs in RS.values():
        assert rs.substitute(p=(0, 0), q=(0, 0)) == classical_ruleset()


def test_normal_basis_pattern():
    for word in normal_basis_words(5, alphabet=tuple(Gen), rs=RS[I]):
        assert NORMAL_WORD.match(code(word)), word


@settings(max_examples=60, deadline=None)
@given(words(max_len=8), st.sampled_from(list(CalculusType)))
def test_normalization_terminates_and_lands_in_basis(word, ct):
    result = normalize(w(*word), RS[ct], max_steps=10 ** 6)
    for nw in result.terms:
        assert NORMAL_WORD.match(code(nw))


@settings(max_examples=60, deadline=None)
@given(exprs(max_len=3, max_terms=2), exprs(max_len=3, max_terms=2), exprs(max_len=3, max_terms=2),
       st.sampled_from(list(CalculusType)))
def test_associativity_and_idempotence(a, b, c, ct):
    rs = RS[ct]
    left = normalize(normalize(a * b, rs) * c, rs)
    right = normalize(a * normalize(b * c, rs), rs)
    assert left == right == normalize(a * b * c, rs)
    assert normalize(left, rs) == left


COORD_DIFF = (T, F, t, f)


@settings(max_examples=60, deadline=None)
@given(words(COORD_DIFF, 3), words(COORD_DIFF, 3), st.sampled_from(list(CalculusType)))
def test_d_is_graded_derivation(u, v, ct):
    rs = RS[ct]
    a, b = w(*u), w(*v)
    sign = -1 if a.parity() else 1
    lhs = exterior_d(a * b, rs)
    rhs = normalize(exterior_d(a) * b + sign * a * exterior_d(b), rs)
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(exprs(COORD_DIFF, 4, 3), st.sampled_from(list(CalculusType)))
def test_d_is_well_defined_on_the_quotient(e, ct):
    rs = RS[ct]
    assert exterior_d(normalize(e, rs), rs) == exterior_d(e, rs)


@pytest.mark.parametrize("ct", list(CalculusType))
def test_d_squared_vanishes_up_to_length_four(ct):
    rs = RS[ct]
    for word in normal_basis_words(4, rs=rs):
        assert exterior_d(exterior_d(w(*word), rs), rs) == 0, word


@pytest.mark.parametrize("ct", list(CalculusType))
def test_derivatives_are_nilpotent(ct):
    rs = RS[ct]
    for word in normal_basis_words(3, rs=rs):
        for i in (1, 2):
            assert apply_derivative(i, apply_derivative(i, w(*word), rs), rs) == 0


def test_step_limit():
    with pytest.raises(RuntimeError):
        normalize(w(df, f, F, t, T), RS[I].substitute(), max_steps=2)


@settings(max_examples=40, deadline=None)
@given(words(max_len=4), st.sampled_from(list(CalculusType)))
def test_every_rewrite_order_reaches_the_same_form(word, ct):
    # exhaustive search over redex choices, independent of the heap strategy
    forms = reachable_normal_forms(w(*word), RS[ct])
    assert forms == {normalize(w(*word), RS[ct])}
