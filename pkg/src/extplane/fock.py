"""Two-mode fermionic Fock space representations of the deformed oscillators.

Basis order is |00>, |01>, |10>, |11> (index 2*n1 + n2).  The coordinates act
as creators and the derivatives as annihilators:

    theta -> B1+,  phi -> B2+,  d_theta -> B1,  d_phi -> B2

and the star structure forces p = conj(q).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import Expr, Gen
from .laurent import Laurent
from .rewrite import CalculusType, RuleSet, build_ruleset
from .syntax import parse_expr

CMatrix4 = np.ndarray  # shape (4, 4), complex128

TOLERANCE = 1e-12

SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |1> -> |0>
I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)


def adjoint(m: CMatrix4) -> CMatrix4:
    return m.conj().T


def max_entry(m: CMatrix4) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


@dataclass(frozen=True)
class OscillatorRep:
    B1: CMatrix4
    B2: CMatrix4
    q_val: complex
    p_val: complex
    calculus_type: CalculusType

    @property
    def B1d(self) -> CMatrix4:
        return adjoint(self.B1)

    @property
    def B2d(self) -> CMatrix4:
        return adjoint(self.B2)

    def image(self, g: Gen) -> CMatrix4:
        return {Gen.theta: self.B1d, Gen.phi: self.B2d,
                Gen.d_theta: self.B1, Gen.d_phi: self.B2}[g]


def build_rep(calculus_type: CalculusType, q_val: complex) -> OscillatorRep:
    q_val = complex(q_val)
    if q_val == 0:
        raise ValueError("deformation parameter must be nonzero")
    ct = CalculusType.parse(calculus_type)
    if ct is CalculusType.TYPE_I:
        K = np.diag([1, -q_val]).astype(complex)
        B1 = np.kron(SIGMA_MINUS, I2)
        B2 = np.kron(K, SIGMA_MINUS)
    else:
        D = np.diag([-q_val, 1]).astype(complex) / abs(q_val)
        B1 = np.kron(SIGMA_MINUS, D)
        B2 = np.kron(I2, SIGMA_MINUS)
    return OscillatorRep(B1, B2, q_val, q_val.conjugate(), ct)


def number_operators(rep: OscillatorRep) -> tuple[CMatrix4, CMatrix4]:
    return rep.B1d @ rep.B1, rep.B2d @ rep.B2


# each relation is written as "left side minus right side"
Relation = Callable[[OscillatorRep], CMatrix4]


def _shared() -> list[tuple[str, Relation]]:
    return [
        ("B1 B2 + q B2 B1 = 0", lambda r: r.B1 @ r.B2 + r.q_val * r.B2 @ r.B1),
        ("B1^2 = 0", lambda r: r.B1 @ r.B1),
        ("B1+^2 = 0", lambda r: r.B1d @ r.B1d),
        ("B1+ B2+ + p^-1 B2+ B1+ = 0", lambda r: r.B1d @ r.B2d + r.B2d @ r.B1d / r.p_val),
        ("B2^2 = 0", lambda r: r.B2 @ r.B2),
        ("B2+^2 = 0", lambda r: r.B2d @ r.B2d),
    ]


def _type_i() -> list[tuple[str, Relation]]:
    return [
        ("B1 B2+ + p B2+ B1 = 0", lambda r: r.B1 @ r.B2d + r.p_val * r.B2d @ r.B1),
        ("B2 B1+ + q B1+ B2 = 0", lambda r: r.B2 @ r.B1d + r.q_val * r.B1d @ r.B2),
        ("{B1, B1+} = 1", lambda r: r.B1 @ r.B1d + r.B1d @ r.B1 - I4),
        ("{B2, B2+} = 1 + (pq - 1) B1+ B1",
         lambda r: r.B2 @ r.B2d + r.B2d @ r.B2 - I4 - (r.p_val * r.q_val - 1) * r.B1d @ r.B1),
    ]


def _type_ii() -> list[tuple[str, Relation]]:
    return [
        ("B1 B2+ + q^-1 B2+ B1 = 0", lambda r: r.B1 @ r.B2d + r.B2d @ r.B1 / r.q_val),
        ("B2 B1+ + p^-1 B1+ B2 = 0", lambda r: r.B2 @ r.B1d + r.B1d @ r.B2 / r.p_val),
        ("{B1, B1+} = 1 + (p^-1 q^-1 - 1) B2+ B2",
         lambda r: r.B1 @ r.B1d + r.B1d @ r.B1 - I4 - (1 / (r.p_val * r.q_val) - 1) * r.B2d @ r.B2),
        ("{B2, B2+} = 1", lambda r: r.B2 @ r.B2d + r.B2d @ r.B2 - I4),
    ]


def oscillator_relations(calculus_type: CalculusType) -> list[tuple[str, Relation]]:
    ct = CalculusType.parse(calculus_type)
    return _shared() + (_type_i() if ct is CalculusType.TYPE_I else _type_ii())


@dataclass(frozen=True)
class OscReport:
    per_relation: list[tuple[str, float]]

    @property
    def max_residual(self) -> float:
        return max(v for _, v in self.per_relation)

    def ok(self, tol: float = TOLERANCE) -> bool:
        return self.max_residual < tol

    def residual(self, name: str) -> float:
        return dict(self.per_relation)[name]


def verify_osc_relations(rep: OscillatorRep) -> OscReport:
    return OscReport([(name, max_entry(rel(rep)))
                      for name, rel in oscillator_relations(rep.calculus_type)])


def anticommutators(rep: OscillatorRep) -> dict[str, CMatrix4]:
    return {"{B1, B1+}": rep.B1 @ rep.B1d + rep.B1d @ rep.B1,
            "{B2, B2+}": rep.B2 @ rep.B2d + rep.B2d @ rep.B2}


# -- agreement with the symbolic calculus --------------------------------------

# the oscillator relations in generator language, paired with the rewrite
# rule whose relation they are a unit multiple of
_SYMBOLIC = {
    CalculusType.TYPE_I: [
        ("B1 B2 + q B2 B1 = 0", "d_theta*d_phi + q*d_phi*d_theta", (Gen.d_phi, Gen.d_theta)),
        ("B1^2 = 0", "d_theta*d_theta", (Gen.d_theta, Gen.d_theta)),
        ("B1+^2 = 0", "theta*theta", (Gen.theta, Gen.theta)),
        ("B1+ B2+ + p^-1 B2+ B1+ = 0", "theta*phi + p^-1*phi*theta", (Gen.phi, Gen.theta)),
        ("B2^2 = 0", "d_phi*d_phi", (Gen.d_phi, Gen.d_phi)),
        ("B2+^2 = 0", "phi*phi", (Gen.phi, Gen.phi)),
        ("B1 B2+ + p B2+ B1 = 0", "d_theta*phi + p*phi*d_theta", (Gen.d_theta, Gen.phi)),
        ("B2 B1+ + q B1+ B2 = 0", "d_phi*theta + q*theta*d_phi", (Gen.d_phi, Gen.theta)),
        ("{B1, B1+} = 1", "d_theta*theta + theta*d_theta - 1", (Gen.d_theta, Gen.theta)),
        ("{B2, B2+} = 1 + (pq - 1) B1+ B1",
         "d_phi*phi + phi*d_phi - 1 - (p*q - 1)*theta*d_theta", (Gen.d_phi, Gen.phi)),
    ],
}
_SYMBOLIC[CalculusType.TYPE_II] = _SYMBOLIC[CalculusType.TYPE_I][:6] + [
    ("B1 B2+ + q^-1 B2+ B1 = 0", "d_theta*phi + q^-1*phi*d_theta", (Gen.d_theta, Gen.phi)),
    ("B2 B1+ + p^-1 B1+ B2 = 0", "d_phi*theta + p^-1*theta*d_phi", (Gen.d_phi, Gen.theta)),
    ("{B1, B1+} = 1 + (p^-1 q^-1 - 1) B2+ B2",
     "d_theta*theta + theta*d_theta - 1 - (p^-1*q^-1 - 1)*phi*d_phi", (Gen.d_theta, Gen.theta)),
    ("{B2, B2+} = 1", "d_phi*phi + phi*d_phi - 1", (Gen.d_phi, Gen.phi)),
]


def expr_to_matrix(e: Expr, rep: OscillatorRep) -> CMatrix4:
    """Evaluate a coordinate/derivative expression at (p, q) = (conj q, q)."""
    out = np.zeros((4, 4), dtype=complex)
    for w, c in e.terms.items():
        m = I4.copy()
        for g in w:
            m = m @ rep.image(g)
        out = out + c.evaluate(rep.p_val, rep.q_val) * m
    return out


def unit_multiple(e: Expr, f: Expr) -> Laurent | None:
    """The unit u with e = u*f, or None."""
    if f.is_zero():
        return None
    w = f.leading_word()
    u = e.coeff(w) * f.coeff(w).inverse() if f.coeff(w).is_unit() else None
    if u is None or not u.is_unit() or e != u * f:
        return None
    return u


@dataclass(frozen=True)
class SymbolicAgreement:
    name: str
    unit: Laurent | None    # oscillator relation = unit * rule relation
    rule_residual: float    # |unit(p,q)| * max-entry of the rule relation's matrix
    osc_residual: float

    @property
    def agrees(self) -> bool:
        return self.unit is not None and abs(self.rule_residual - self.osc_residual) < TOLERANCE


def symbolic_residuals(rep: OscillatorRep, rs: RuleSet | None = None) -> list[SymbolicAgreement]:
    """Compare each oscillator residual with the matrix of the matching rewrite rule."""
    rs = rs if rs is not None else build_ruleset(rep.calculus_type)
    osc = verify_osc_relations(rep)
    out = []
    for name, text, lhs in _SYMBOLIC[rep.calculus_type]:
        rule_rel = Expr.word(*lhs) - rs[lhs]
        u = unit_multiple(parse_expr(text), rule_rel)
        scale = abs(u.evaluate(rep.p_val, rep.q_val)) if u is not None else float("nan")
        out.append(SymbolicAgreement(name, u, scale * max_entry(expr_to_matrix(rule_rel, rep)),
                                     osc.residual(name)))
    return out


__all__ = [
    "CMatrix4", "OscillatorRep", "OscReport", "build_rep", "verify_osc_relations",
    "number_operators", "anticommutators", "oscillator_relations", "expr_to_matrix",
    "symbolic_residuals", "SymbolicAgreement", "adjoint", "max_entry", "TOLERANCE",
]
