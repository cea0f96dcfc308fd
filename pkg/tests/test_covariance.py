import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import exprs
from extplane.algebra import Expr, Gen, QGLetter
from extplane.covariance import (QGNormalizer, TensorExpr, check_covariance, classical_point, coact,
                                 covariant_relations, tensor_normalize)
from extplane.rewrite import CalculusType, build_ruleset, normalize

a, b, c, d = QGLetter
T, F, t, f = Gen.Theta, Gen.Phi, Gen.theta, Gen.phi
COORD_DIFF = (T, F, t, f)


def test_coaction_on_generators():
    assert coact(Expr.word(t)) == TensorExpr.simple((a,), (t,)) + TensorExpr.simple((b,), (f,))
    assert coact(Expr.word(F)) == TensorExpr.simple((c,), (T,)) + TensorExpr.simple((d,), (F,))
    with pytest.raises(ValueError, match="coaction defined on coordinates and differentials only"):
        coact(Expr.word(Gen.d_theta))


@settings(max_examples=40, deadline=None)
@given(exprs(COORD_DIFF, 3, 2), exprs(COORD_DIFF, 3, 2))
def test_coaction_is_multiplicative(x, y):
    assert coact(x * y) == coact(x) * coact(y)


def test_quantum_group_normalizer_is_confluent():
    for ct in CalculusType:
        assert QGNormalizer.from_rmatrix(ct).confluent
    assert QGNormalizer.commutative().confluent


@pytest.mark.parametrize("ct", list(CalculusType))
def test_covariance(ct):
    report = check_covariance(ct)
    assert report.ok, [(i.name, str(i.residual)) for i in report.failures]
    assert len(report.items) == 8


@pytest.mark.parametrize("ct", list(CalculusType))
def test_commutative_entries_break_covariance(ct):
    report = check_covariance(ct, qg=QGNormalizer.commutative())
    assert not report.ok
    first = report.failures[0]
    assert first.name == "p*theta*phi + phi*theta = 0"
    assert not first.residual.is_zero()


@pytest.mark.parametrize("ct", list(CalculusType))
def test_classical_point_is_covariant_for_commuting_entries(ct):
    rs = classical_point(build_ruleset(ct))
    assert check_covariance(rs=rs, qg=QGNormalizer.commutative()).ok


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(list(CalculusType)), st.integers(0, 7),
       st.lists(st.sampled_from(COORD_DIFF), max_size=2).map(tuple),
       st.lists(st.sampled_from(COORD_DIFF), max_size=2).map(tuple))
def test_ideal_maps_to_zero(ct, k, left, right):
    # coact is multiplicative, so u*rel*v must also reduce to zero
    rs = build_ruleset(ct)
    qg = QGNormalizer.from_rmatrix(ct)
    rel = covariant_relations(rs)[k]
    element = Expr.word(*left) * rel * Expr.word(*right)
    assert tensor_normalize(coact(element), qg, rs).is_zero()


def test_tensor_normalize_matches_plane_normal_form():
    rs = build_ruleset(CalculusType.TYPE_I)
    qg = QGNormalizer.from_rmatrix(CalculusType.TYPE_I)
    e = Expr.word(f, T)
    lifted = TensorExpr.simple((), (f, T))
    groups = tensor_normalize(lifted, qg, rs).by_plane_word()
    assert {w: g.coeff(()) for w, g in groups.items()} == normalize(e, rs).terms
