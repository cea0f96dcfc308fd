"""R-matrices of the two calculi: Yang-Baxter, R-matrix form of the calculus, RTT.

Composite indices are ordered 11, 12, 21, 22 and ``R[(i, j), (k, l)]`` is the
entry R^{ij}_{kl}.  The hat operation swaps the two upper indices, which is
the same as multiplying by the flip on the left.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .algebra import Expr, Gen, QGLetter, word_key
from .laurent import ONE, P, Q, Laurent
from .rewrite import (CalculusType, RuleSet, build_ruleset, normalize,
                      orient_quadratic_relations)

PAIRS = ((1, 1), (1, 2), (2, 1), (2, 2))


def pair_index(i: int, j: int) -> int:
    return 2 * (i - 1) + (j - 1)


class LMatrix:
    """Square matrix over the Laurent ring."""

    __slots__ = ("rows", "n")

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(tuple(Laurent.coerce(x) for x in row) for row in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def identity(cls, n: int) -> LMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> LMatrix:
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def flip(cls) -> LMatrix:
        """The 4x4 permutation P with P^{ij}_{kl} = δ^i_l δ^j_k."""
        m = [[0] * 4 for _ in range(4)]
        for i, j in PAIRS:
            m[pair_index(i, j)][pair_index(j, i)] = 1
        return cls(m)

    def __getitem__(self, key) -> Laurent:
        r, c = key
        if isinstance(r, tuple):
            r, c = pair_index(*r), pair_index(*c)
        return self.rows[r][c]

    def entry(self, i: int, j: int, k: int, l: int) -> Laurent:
        return self.rows[pair_index(i, j)][pair_index(k, l)]

    def __matmul__(self, other: LMatrix) -> LMatrix:
        n = self.n
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            nz = [(k, x) for k, x in enumerate(row) if x]
            out.append([sum((x * cols[j][k] for k, x in nz), Laurent()) for j in range(n)])
        return LMatrix(out)

    def __add__(self, other: LMatrix) -> LMatrix:
        return LMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: LMatrix) -> LMatrix:
        return LMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def scale(self, c) -> LMatrix:
        c = Laurent.coerce(c)
        return LMatrix([[x * c for x in row] for row in self.rows])

    def transpose(self) -> LMatrix:
        return LMatrix(zip(*self.rows))

    def kron(self, other: LMatrix) -> LMatrix:
        n, m = self.n, other.n
        return LMatrix([[self.rows[i // m][j // m] * other.rows[i % m][j % m]
                         for j in range(n * m)] for i in range(n * m)])

    def substitute(self, p=(1, 0), q=(0, 1)) -> LMatrix:
        return LMatrix([[x.substitute(p=p, q=q) for x in row] for row in self.rows])

    def det(self) -> Laurent:
        return _det([list(r) for r in self.rows])

    def inverse(self) -> LMatrix:
        """Inverse via the adjugate; the determinant must be a unit."""
        d = self.det()
        if not d.is_unit():
            raise ZeroDivisionError(f"determinant {d} is not a unit")
        inv_d = d.inverse()
        n = self.n
        adj = [[Laurent()] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [[self.rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
                sign = -1 if (i + j) % 2 else 1
                adj[j][i] = sign * _det(minor) * inv_d
        return LMatrix(adj)

    def nonzero_entries(self) -> list[tuple[int, int, Laurent]]:
        return [(i, j, x) for i, row in enumerate(self.rows) for j, x in enumerate(row) if x]

    def is_zero(self) -> bool:
        return not self.nonzero_entries()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LMatrix):
            return NotImplemented
        return self.rows == other.rows

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return "LMatrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"


def _det(m: list[list[Laurent]]) -> Laurent:
    n = len(m)
    if n == 0:
        return ONE
    if n == 1:
        return m[0][0]
    total = Laurent()
    for j, x in enumerate(m[0]):
        if x:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total = total + (-x if j % 2 else x) * _det(minor)
    return total


RMatrix4 = LMatrix


def r_of(calculus_type: CalculusType) -> LMatrix:
    pq = P * Q
    if calculus_type is CalculusType.TYPE_I:
        return LMatrix([[1, 0, 0, 0],
                        [0, P, 1 - pq, 0],
                        [0, 0, Q, 0],
                        [0, 0, 0, 1]])
    return LMatrix([[1, 0, 0, 0],
                    [0, Q ** -1, 0, 0],
                    [0, 1 - pq ** -1, P ** -1, 0],
                    [0, 0, 0, 1]])


def hat(R: LMatrix) -> LMatrix:
    """R̂^{ij}_{kl} = R^{ji}_{kl}."""
    return LMatrix([R.rows[pair_index(j, i)] for i, j in PAIRS])


# -- Yang-Baxter --------------------------------------------------------------

@dataclass
class YBEReport:
    plain_ybe: bool
    braid_ybe: bool
    residuals: dict[str, list[tuple[int, int, Laurent]]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.plain_ybe and self.braid_ybe


def embeddings(R: LMatrix) -> tuple[LMatrix, LMatrix, LMatrix]:
    """R12, R13, R23 acting on the threefold tensor product."""
    I2 = LMatrix.identity(2)
    R12 = R.kron(I2)
    R23 = I2.kron(R)
    P23 = I2.kron(LMatrix.flip())
    R13 = P23 @ R12 @ P23
    return R12, R13, R23


def ybe_check(R: LMatrix) -> YBEReport:
    R12, R13, R23 = embeddings(R)
    plain = R12 @ R13 @ R23 - R23 @ R13 @ R12
    H12, _, H23 = embeddings(hat(R))
    braid = H12 @ H23 @ H12 - H23 @ H12 @ H23
    return YBEReport(plain.is_zero(), braid.is_zero(),
                     {"plain": plain.nonzero_entries(), "braid": braid.nonzero_entries()})


# -- R-matrix form of the calculus --------------------------------------------

SCALING_CANDIDATES: dict[str, Laurent] = {
    "-(pq)^-1": -(P * Q) ** -1,
    "-pq": -(P * Q),
}


@dataclass
class RelationCheck:
    label: str
    lhs: Expr
    rhs: Expr
    ok: bool
    note: str = ""


@dataclass
class FamilyCheck:
    name: str
    checks: list[RelationCheck]
    scaling: str | None = None

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)


@dataclass
class RFormReport:
    calculus_type: CalculusType
    families: list[FamilyCheck]

    @property
    def ok(self) -> bool:
        return all(f.ok for f in self.families)

    @property
    def scalings(self) -> dict[str, str | None]:
        return {f.name: f.scaling for f in self.families if f.name in ("coordinate", "derivative")}

    def family(self, name: str) -> FamilyCheck:
        return next(f for f in self.families if f.name == name)


def unit_ratio(a: Expr, b: Expr) -> Laurent | None:
    """u with a = u*b and u a unit of the Laurent ring, if there is one."""
    if a.is_zero() or b.is_zero() or set(a.terms) != set(b.terms):
        return None
    w = a.leading_word()
    (ea, ra), (eb, rb) = a.coeff(w).leading_term(), b.coeff(w).leading_term()
    # a unit multiple shifts every exponent, so leading terms determine u
    u = Laurent.monomial(ra / rb, ea[0] - eb[0], ea[1] - eb[1])
    return u if a == b * u else None


def _explicit_family(name: str, rs: RuleSet, relations) -> FamilyCheck:
    checks = []
    for lhs, rhs in relations:
        expected = rs[lhs] if lhs in rs else None
        ok = expected is not None and expected == rhs
        checks.append(RelationCheck(_label(lhs), Expr.word(*lhs), rhs, ok,
                                    "" if ok else f"rule gives {expected!r}"))
    return FamilyCheck(name, checks)


def _label(word) -> str:
    from .syntax import format_word

    return format_word(word)


def _implicit_family(name: str, rs: RuleSet, letter, order, scalings: dict[str, Laurent]) -> FamilyCheck:
    """Relations x^i x^j = s * Σ R̂-coefficient * x x, tried for every candidate s.

    ``order(i, j)`` yields (coefficient, k_letter_index, l_letter_index, word)
    triples for the right side.  A candidate is accepted when every
    off-diagonal relation vanishes modulo ``rs`` and is a unit multiple of the
    rule for that pair, so that the R-matrix relation and the rule imply each
    other.  Diagonal relations read (1 - s) x^i x^i = 0 and give nilpotency
    only where 1 - s is nonzero.
    """
    per_candidate: dict[str, list[RelationCheck]] = {}
    for sname, s in scalings.items():
        checks = []
        for i, j in PAIRS:
            lhs = Expr.word(letter(i), letter(j))
            rhs = sum((c * Expr.word(*w) for c, w in order(i, j)), Expr()) * s
            rel = lhs - rhs
            if i == j:
                coeff = rel.coeff((letter(i), letter(i)))
                ok = normalize(rel, rs).is_zero() and set(rel.terms) <= {(letter(i), letter(i))}
                square = _label((letter(i), letter(i)))
                note = (f"({coeff})*{square} = 0; nilpotency needs {coeff} != 0" if coeff
                        else f"{square} unconstrained")
                checks.append(RelationCheck(f"{_label((letter(i), letter(j)))} [s={sname}]", lhs, rhs, ok, note))
                continue
            big = max(rel.terms, key=word_key)
            rule_rel = Expr.word(*big) - rs[big] if big in rs else None
            ok = normalize(rel, rs).is_zero() and rule_rel is not None and unit_ratio(rel, rule_rel) is not None
            checks.append(RelationCheck(f"{_label((letter(i), letter(j)))} [s={sname}]", lhs, rhs, ok))
        per_candidate[sname] = checks
    winners = [s for s, cs in per_candidate.items() if all(c.ok for c in cs)]
    scaling = winners[0] if len(winners) == 1 else None
    checks = per_candidate[scaling] if scaling else [c for cs in per_candidate.values() for c in cs]
    return FamilyCheck(name, checks, scaling)


def check_r_form_calculus(calculus_type: CalculusType, rs: RuleSet | None = None) -> RFormReport:
    """Compare the R-matrix presentation of the calculus with the rewrite rules."""
    rs = rs or build_ruleset(calculus_type)
    Rh = hat(r_of(calculus_type))
    Rh_inv = Rh.inverse()
    th, Th, dd = Gen.coord, Gen.diff, Gen.deriv

    def delta(a, b):
        return 1 if a == b else 0

    coord_diff = []
    deriv_coord = []
    deriv_diff = []
    for i, j in PAIRS:
        coord_diff.append(((th(i), Th(j)), sum(
            (Rh.entry(i, j, k, l) * Expr.word(Th(k), th(l)) for k, l in PAIRS), Expr())))
        deriv_coord.append(((dd(i), th(j)), Expr.scalar(delta(i, j)) - sum(
            (Rh.entry(j, k, i, l) * Expr.word(th(l), dd(k)) for k, l in PAIRS), Expr())))
        # upper pair (j, k), lower pair (i, l): the same placement as the
        # derivative/coordinate line, but with the inverse of R-hat
        deriv_diff.append(((dd(i), Th(j)), sum(
            (Rh_inv.entry(j, k, i, l) * Expr.word(Th(l), dd(k)) for k, l in PAIRS), Expr())))

    families = [
        _explicit_family("coordinate-differential", rs, coord_diff),
        _implicit_family("coordinate", rs, th,
                         lambda i, j: [(Rh.entry(i, j, k, l), (th(k), th(l))) for k, l in PAIRS],
                         SCALING_CANDIDATES),
        _implicit_family("differential", rs, Th,
                         lambda i, j: [(Rh.entry(i, j, k, l), (Th(k), Th(l))) for k, l in PAIRS],
                         {"1": ONE}),
        _explicit_family("derivative-coordinate", rs, deriv_coord),
        _explicit_family("derivative-differential", rs, deriv_diff),
        _implicit_family("derivative", rs, dd,
                         lambda i, j: [(Rh.entry(k, l, j, i), (dd(l), dd(k))) for k, l in PAIRS],
                         SCALING_CANDIDATES),
    ]
    return RFormReport(calculus_type, families)


# -- RTT relations ------------------------------------------------------------

T_ENTRIES = {(1, 1): QGLetter.a, (1, 2): QGLetter.b, (2, 1): QGLetter.c, (2, 2): QGLetter.d}


@dataclass
class QuantumGroupRelations:
    relations: tuple[Expr, ...]
    entry_equations: tuple[Expr, ...]
    ruleset: RuleSet

    def __len__(self) -> int:
        return len(self.relations)


def unit_canonical(e: Expr) -> Expr:
    """Scale by a unit so the leading term of the leading coefficient is 1."""
    c = e.coeff(e.leading_word())
    (a, b), r = c.leading_term()
    return e * Laurent.monomial(1 / r, -a, -b)


def rtt_entry_equations(Rhat: LMatrix) -> list[Expr]:
    """Entry (ij, kl) of R̂ T1 T2 - T1 T2 R̂ with T = [[a, b], [c, d]], as 16 expressions."""
    T = T_ENTRIES
    out = []
    for (i, j), (k, l) in itertools.product(PAIRS, PAIRS):
        lhs = sum((Rhat.entry(i, j, m, n) * Expr.word(T[m, k], T[n, l]) for m, n in PAIRS), Expr())
        rhs = sum((Rhat.entry(m, n, k, l) * Expr.word(T[i, m], T[j, n]) for m, n in PAIRS), Expr())
        out.append(lhs - rhs)
    return out


def rtt_relations(Rhat: LMatrix) -> QuantumGroupRelations:
    """Independent quadratic relations on a, b, c, d from R̂ T1 T2 = T1 T2 R̂.

    Entry equations are made unit-canonical and deduplicated; an equation
    that is a Laurent combination of the ones already kept is then dropped.
    """
    entries = rtt_entry_equations(Rhat)
    distinct: list[Expr] = []
    for e in entries:
        if e.is_zero():
            continue
        c = unit_canonical(e)
        if c not in distinct:
            distinct.append(c)
    kept, rs = orient_quadratic_relations(distinct, tuple(QGLetter))
    return QuantumGroupRelations(tuple(kept), tuple(entries), rs)


def transpose_inverse_mismatch(set_p_equal_q: bool = True) -> list[tuple[int, int, Laurent]]:
    """Entries where R_I and the transposed inverse of R_II differ."""
    r1, r2 = r_of(CalculusType.TYPE_I), r_of(CalculusType.TYPE_II)
    if set_p_equal_q:
        r1, r2 = r1.substitute(p=(0, 1)), r2.substitute(p=(0, 1))
    return (r1 - r2.inverse().transpose()).nonzero_entries()


def transpose_inverse_check(set_p_equal_q: bool = True) -> bool:
    """Whether R_I equals the transposed inverse of R_II (after p -> q by default)."""
    return not transpose_inverse_mismatch(set_p_equal_q)


def quadratic_identity_residual(Rhat: LMatrix, lam1: Laurent, lam2: Laurent) -> LMatrix:
    n = Rhat.n
    I = LMatrix.identity(n)
    return (Rhat - I.scale(lam1)) @ (Rhat - I.scale(lam2))


def central_block(R: LMatrix) -> tuple[tuple[Laurent, Laurent], tuple[Laurent, Laurent]]:
    a, b = pair_index(1, 2), pair_index(2, 1)
    return ((R.rows[a][a], R.rows[a][b]), (R.rows[b][a], R.rows[b][b]))

