import dataclasses
import random

import numpy as np
import pytest

from extplane.fock import (SIGMA_MINUS, adjoint, anticommutators, build_rep, expr_to_matrix,
                           number_operators, symbolic_residuals, verify_osc_relations)
from extplane.rewrite import CalculusType
from extplane.sampling import random_q
from extplane.syntax import parse_expr

I, II = CalculusType.TYPE_I, CalculusType.TYPE_II


def fock_state(n1, n2):
    v = np.zeros(4, dtype=complex)
    v[2 * n1 + n2] = 1
    return v


def test_zero_parameter_rejected():
    with pytest.raises(ValueError, match="deformation parameter must be nonzero"):
        build_rep(I, 0)


def test_star_structure():
    rep = build_rep(I, 2j)
    assert rep.p_val == -2j
    assert np.array_equal(rep.B1d, adjoint(rep.B1))


def test_annihilators_lower_occupation():
    rep = build_rep(I, 1)
    assert np.allclose(rep.B1 @ fock_state(1, 0), fock_state(0, 0))
    assert np.allclose(rep.B2 @ fock_state(0, 1), fock_state(0, 0))
    assert np.allclose(rep.B1 @ fock_state(0, 1), 0)


@pytest.mark.parametrize("ct", [I, II])
def test_nilpotency_is_exact(ct):
    rep = build_rep(ct, 0.3 - 1.7j)
    for m in (rep.B1, rep.B2, rep.B1d, rep.B2d):
        assert not np.any(m @ m)


def test_undeformed_point():
    rep = build_rep(I, 1)
    for m in anticommutators(rep).values():
        assert np.allclose(m, np.eye(4), atol=1e-12)


def test_type_i_anticommutator_at_2i():
    rep = build_rep(I, 2j)
    assert np.allclose(anticommutators(rep)["{B2, B2+}"], np.diag([1, 1, 4, 4]), atol=1e-12)


def test_type_ii_anticommutator_at_2i():
    rep = build_rep(II, 2j)
    assert np.allclose(anticommutators(rep)["{B1, B1+}"], np.diag([1, 0.25, 1, 0.25]), atol=1e-12)


def test_number_operators():
    n1, n2 = number_operators(build_rep(I, 2j))
    assert np.allclose(n1, np.diag([0, 0, 1, 1]))
    assert np.allclose(n2, np.diag([0, 1, 0, 4]))
    _, n2 = number_operators(build_rep(II, 2j))
    assert np.allclose(n2, np.diag([0, 1, 0, 1]))
    for ct in (I, II):
        for n in number_operators(build_rep(ct, 0.4 + 2.2j)):
            assert np.allclose(n, adjoint(n))
            assert np.all(np.linalg.eigvalsh(n) >= -1e-12)


@pytest.mark.parametrize("ct, q", [(I, 2j), (II, 0.5 + 0.5j), (I, 3), (II, 3), (I, 0.5 + 0.5j), (II, 2j)])
def test_relations_hold(ct, q):
    assert verify_osc_relations(build_rep(ct, q)).max_residual < 1e-12


@pytest.mark.parametrize("ct", [I, II])
def test_random_annulus(ct):
    rng = random.Random(7)
    for _ in range(20):
        q = random_q(rng)
        assert 0.1 <= abs(q) <= 10
        assert verify_osc_relations(build_rep(ct, q)).max_residual < 1e-12


@pytest.mark.parametrize("ct", [I, II])
def test_unit_circle_is_canonical(ct):
    rng = random.Random(3)
    for _ in range(10):
        rep = build_rep(ct, random_q(rng, 1, 1))
        for m in anticommutators(rep).values():
            assert np.allclose(m, np.eye(4), atol=1e-12)


def test_missing_sign_matrix_breaks_the_algebra():
    rep = build_rep(I, 2j)
    broken = dataclasses.replace(rep, B2=np.kron(np.eye(2), SIGMA_MINUS))
    report = verify_osc_relations(broken)
    assert report.residual("B1 B2 + q B2 B1 = 0") == pytest.approx(abs(1 + 2j), abs=1e-12)


@pytest.mark.parametrize("ct", [I, II])
def test_symbolic_layer_agrees(ct):
    for q in (2j, 0.5 + 0.5j, 3, 1.7 - 0.2j):
        rows = symbolic_residuals(build_rep(ct, q))
        assert len(rows) == 10
        assert all(r.agrees for r in rows)
        assert max(r.rule_residual for r in rows) < 1e-12


def test_symbolic_layer_agrees_on_a_broken_rep():
    rep = build_rep(I, 2j)
    broken = dataclasses.replace(rep, B2=np.kron(np.eye(2), SIGMA_MINUS))
    rows = symbolic_residuals(broken)
    assert all(r.agrees for r in rows)
    assert max(r.osc_residual for r in rows) > 1


def test_expr_to_matrix():
    rep = build_rep(I, 2j)
    m = expr_to_matrix(parse_expr("d_theta*theta + theta*d_theta"), rep)
    assert np.allclose(m, np.eye(4))
