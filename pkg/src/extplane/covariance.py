"""Covariance of the plane and of both calculi under the GL_{p,q}(2) coaction.

Elements of the tensor product are stored as ``{(qg_word, plane_word): c}``.
The matrix entries a, b, c, d are even and commute with every plane letter,
so a product just concatenates the two components separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .algebra import Expr, Gen, QGLetter, Word, word_key
from .laurent import Laurent
from .rewrite import (CalculusType, RewriteRule, RuleSet, build_ruleset, check_confluence,
                      normalize, reachable_normal_forms)
from .rmatrix import QuantumGroupRelations, hat, r_of, rtt_relations

Key = tuple[Word, Word]


class TensorExpr:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Key, Laurent] | None = None):
        out: dict[Key, Laurent] = {}
        for (qw, pw), c in (terms or {}).items():
            k = (tuple(qw), tuple(pw))
            out[k] = out[k] + c if k in out else Laurent.coerce(c)
        self._terms = {k: c for k, c in out.items() if c}

    @classmethod
    def simple(cls, qword: Word, pword: Word, c=1) -> TensorExpr:
        return cls({(tuple(qword), tuple(pword)): Laurent.coerce(c)})

    @property
    def terms(self) -> dict[Key, Laurent]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Key, Laurent]]:
        return iter(sorted(self._terms.items(),
                           key=lambda kv: (word_key(kv[0][1]), word_key(kv[0][0]))))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: TensorExpr) -> TensorExpr:
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorExpr(out)

    def __neg__(self) -> TensorExpr:
        return TensorExpr({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: TensorExpr) -> TensorExpr:
        return self + (-other)

    def __mul__(self, other) -> TensorExpr:
        if not isinstance(other, TensorExpr):
            c = Laurent.coerce(other)
            return TensorExpr({k: v * c for k, v in self._terms.items()})
        out: dict[Key, Laurent] = {}
        for (q1, p1), c1 in self._terms.items():
            for (q2, p2), c2 in other._terms.items():
                k = (q1 + q2, p1 + p2)
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        return TensorExpr(out)

    __rmul__ = __mul__

    def by_plane_word(self) -> dict[Word, Expr]:
        """Collect the quantum-group coefficient of each plane word."""
        groups: dict[Word, dict[Word, Laurent]] = {}
        for (qw, pw), c in self._terms.items():
            groups.setdefault(pw, {})[qw] = c
        return {pw: Expr(g) for pw, g in groups.items()}

    @classmethod
    def from_plane_groups(cls, groups: Mapping[Word, Expr]) -> TensorExpr:
        return cls({(qw, pw): c for pw, e in groups.items() for qw, c in e.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorExpr):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        from .syntax import format_expr, format_word

        if not self._terms:
            return "0"
        parts = []
        for pw, e in sorted(self.by_plane_word().items(), key=lambda kv: word_key(kv[0])):
            parts.append(f"({format_expr(e)}) (x) {format_word(pw) or '1'}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TensorExpr({self})"


_A, _B, _C, _D = QGLetter.a, QGLetter.b, QGLetter.c, QGLetter.d


def _image(g: Gen) -> TensorExpr:
    if g.kind == "deriv":
        raise ValueError("coaction defined on coordinates and differentials only")
    first, second = (Gen.theta, Gen.phi) if g.kind == "coord" else (Gen.Theta, Gen.Phi)
    top, bottom = ((_A, _B) if g.index == 1 else (_C, _D))
    return TensorExpr.simple((top,), (first,)) + TensorExpr.simple((bottom,), (second,))


def coact(e: Expr) -> TensorExpr:
    """θ -> a⊗θ + b⊗φ, φ -> c⊗θ + d⊗φ and likewise for Θ, Φ; no normalization."""
    total = TensorExpr()
    for w, c in e.terms.items():
        term = TensorExpr.simple((), (), c)
        for g in w:
            term = term * _image(g)
        total = total + term
    return total


@dataclass
class QGNormalizer:
    """Oriented rewriting for the quantum-group letters (a < b < c < d)."""

    relations: tuple[Expr, ...]
    ruleset: RuleSet
    confluent: bool

    @classmethod
    def from_relations(cls, qg: QuantumGroupRelations) -> QGNormalizer:
        return cls(qg.relations, qg.ruleset, check_confluence(qg.ruleset).ok)

    @classmethod
    def from_rmatrix(cls, calculus_type: CalculusType) -> QGNormalizer:
        return cls.from_relations(rtt_relations(hat(r_of(calculus_type))))

    @classmethod
    def commutative(cls) -> QGNormalizer:
        """Ordinary commuting matrix entries, for the undeformed comparison."""
        letters = tuple(QGLetter)
        rules = [RewriteRule((y, x), Expr.word(x, y))
                 for i, x in enumerate(letters) for y in letters[i + 1:]]
        rels = tuple(r.relation() for r in rules)
        rs = RuleSet(rules, alphabet=letters)
        return cls(rels, rs, check_confluence(rs).ok)

    def normalize(self, e: Expr) -> Expr:
        return normalize(e, self.ruleset)

    def reduces_to_zero(self, e: Expr) -> bool:
        if self.confluent:
            return self.normalize(e).is_zero()
        # normal forms are strategy dependent; accept if some order reaches 0
        return any(f.is_zero() for f in reachable_normal_forms(e, self.ruleset))


def tensor_normalize(t: TensorExpr, qg: QGNormalizer, rs: RuleSet) -> TensorExpr:
    """Normalize the plane component with ``rs`` and the matrix component with ``qg``."""
    groups: dict[Word, Expr] = {}
    for (qw, pw), c in t.terms.items():
        for nw, nc in normalize(Expr.word(*pw), rs).terms.items():
            piece = Expr({qw: c * nc})
            groups[nw] = groups[nw] + piece if nw in groups else piece
    return TensorExpr.from_plane_groups({pw: qg.normalize(e) for pw, e in groups.items()})


@dataclass(frozen=True)
class CovarianceItem:
    name: str
    relation: Expr
    residual: TensorExpr
    passed: bool


@dataclass
class CovarianceReport:
    calculus_type: CalculusType | None
    items: list[CovarianceItem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(i.passed for i in self.items)

    @property
    def failures(self) -> list[CovarianceItem]:
        return [i for i in self.items if not i.passed]


def covariant_relations(rs: RuleSet) -> list[Expr]:
    """Plane, nilpotency, differential and coordinate/differential relations of ``rs``."""
    T, F, t, f = Gen.Theta, Gen.Phi, Gen.theta, Gen.phi
    lhss = [(f, t), (t, t), (f, f), (F, T), (t, T), (t, F), (f, T), (f, F)]
    return [Expr.word(*lhs) - rs[lhs] for lhs in lhss]


def check_covariance(calculus_type: CalculusType | None = None, *,
                     qg: QGNormalizer | None = None, rs: RuleSet | None = None) -> CovarianceReport:
    """Push every defining relation through the coaction and reduce it."""
    from .syntax import format_expr

    if rs is None:
        rs = build_ruleset(calculus_type)
    if qg is None:
        qg = QGNormalizer.from_rmatrix(calculus_type)
    report = CovarianceReport(calculus_type)
    for rel in covariant_relations(rs):
        residual = tensor_normalize(coact(rel), qg, rs)
        passed = residual.is_zero() or (
            not qg.confluent and all(qg.reduces_to_zero(e) for e in residual.by_plane_word().values()))
        report.items.append(CovarianceItem(f"{format_expr(rel)} = 0", rel, residual, passed))
    return report


def classical_point(rs: RuleSet) -> RuleSet:
    return rs.substitute(p=(0, 0), q=(0, 0))


__all__ = [
    "TensorExpr", "coact", "QGNormalizer", "tensor_normalize", "check_covariance",
    "CovarianceReport", "CovarianceItem", "covariant_relations", "classical_point",
]
