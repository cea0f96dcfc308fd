"""Quadratic rewriting systems for the two calculi on the quantum exterior plane.

Every relation of the calculus has a two-letter left side, and every rule
moves a word strictly down the degree-lexicographic order induced by
Θ < Φ < θ < φ < ∂θ < ∂φ.  Rewriting therefore terminates, and when all
critical pairs join (see :func:`check_confluence`) the normal form of an
element is unique and is spanned by the words Θ^a Φ^b θ^c φ^d ∂θ^e ∂φ^f.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .algebra import Expr, Gen, Word, word_key, word_parity
from .laurent import ONE, P, Q, Laurent

MAX_STEPS = 10**6


class CalculusType(Enum):
    TYPE_I = 1
    TYPE_II = 2

    @classmethod
    def parse(cls, text: str | int | CalculusType) -> CalculusType:
        if isinstance(text, CalculusType):
            return text
        key = str(text).strip().upper()
        table = {"1": cls.TYPE_I, "I": cls.TYPE_I, "TYPE_I": cls.TYPE_I,
                 "2": cls.TYPE_II, "II": cls.TYPE_II, "TYPE_II": cls.TYPE_II}
        if key not in table:
            raise ValueError(f"unknown calculus type {text!r}")
        return table[key]

    @property
    def label(self) -> str:
        return "I" if self is CalculusType.TYPE_I else "II"


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Expr

    def __post_init__(self):
        lhs = tuple(self.lhs)
        object.__setattr__(self, "lhs", lhs)
        if len(lhs) != 2:
            raise ValueError(f"rule left side must have two letters, got {lhs}")
        for w in self.rhs.words():
            if word_key(w) >= word_key(lhs):
                raise ValueError(f"rule {lhs} -> {w} is not decreasing")
            if word_parity(w) != word_parity(lhs):
                raise ValueError(f"rule {lhs} -> {w} changes parity")

    def relation(self) -> Expr:
        """The element ``lhs - rhs`` that the rule sets to zero."""
        return Expr.word(*self.lhs) - self.rhs


class RuleSet:
    """Immutable collection of rewrite rules, at most one per two-letter word."""

    def __init__(self, rules: Iterable[RewriteRule],
                 calculus_type: CalculusType | None = None,
                 alphabet: Sequence = tuple(Gen)):
        table: dict[Word, RewriteRule] = {}
        for r in rules:
            if r.lhs in table:
                raise ValueError(f"two rules for {r.lhs}")
            table[r.lhs] = r
        self._rules = table
        self.calculus_type = calculus_type
        self.alphabet = tuple(alphabet)
        # word -> normal form; values are immutable so sharing is safe
        self._cache: dict[Word, Expr] = {}

    @property
    def rules(self) -> dict[Word, RewriteRule]:
        return dict(self._rules)

    def __iter__(self) -> Iterator[RewriteRule]:
        return iter(sorted(self._rules.values(), key=lambda r: word_key(r.lhs)))

    def __len__(self) -> int:
        return len(self._rules)

    def __contains__(self, lhs) -> bool:
        return tuple(lhs) in self._rules

    def __getitem__(self, lhs) -> Expr:
        return self._rules[tuple(lhs)].rhs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RuleSet):
            return NotImplemented
        return ({k: r.rhs for k, r in self._rules.items()}
                == {k: r.rhs for k, r in other._rules.items()})

    __hash__ = None  # type: ignore[assignment]

    def redex(self, word: Word) -> int | None:
        for i in range(len(word) - 1):
            if word[i:i + 2] in self._rules:
                return i
        return None

    def is_normal(self, word: Word) -> bool:
        return self.redex(word) is None

    def substitute(self, p=(1, 0), q=(0, 1)) -> RuleSet:
        """Rule set with a monomial substitution applied to every coefficient."""
        return RuleSet((RewriteRule(r.lhs, r.rhs.substitute(p=p, q=q)) for r in self),
                       self.calculus_type, self.alphabet)

    def with_rule(self, lhs: Word, rhs: Expr) -> RuleSet:
        rules = [r for r in self if r.lhs != tuple(lhs)] + [RewriteRule(lhs, rhs)]
        return RuleSet(rules, self.calculus_type, self.alphabet)

    def word_normal_form(self, word: Word, max_steps: int = MAX_STEPS) -> Expr:
        word = tuple(word)
        hit = self._cache.get(word)
        if hit is None:
            hit = _reduce({word: ONE}, self, max_steps)
            self._cache[word] = hit
        return hit


def _reduce(pending: dict[Word, Laurent], rs: RuleSet, max_steps: int) -> Expr:
    # Always rewrite the largest pending word.  Rewriting only produces
    # smaller words, so each word is visited once and like terms merge early.
    heap = [(_heap_key(w), w) for w in pending]
    heapq.heapify(heap)
    pending = dict(pending)
    out: dict[Word, Laurent] = {}
    steps = 0
    while heap:
        _, w = heapq.heappop(heap)
        c = pending.pop(w, None)
        if not c:
            continue
        pos = rs.redex(w)
        if pos is None:
            out[w] = c
            continue
        steps += 1
        if steps > max_steps:
            raise RuntimeError(f"normalization exceeded {max_steps} rewrite steps")
        for rw, rc in rs[w[pos:pos + 2]].terms.items():
            nw = w[:pos] + rw + w[pos + 2:]
            if nw in pending:
                pending[nw] = pending[nw] + c * rc
            else:
                pending[nw] = c * rc
                heapq.heappush(heap, (_heap_key(nw), nw))
    return Expr(out)


def _heap_key(word: Word) -> tuple:
    return (-len(word), tuple(-g.rank for g in word))


def normalize(e: Expr, rs: RuleSet, max_steps: int = MAX_STEPS) -> Expr:
    """Normal form of ``e``; unique whenever ``rs`` is confluent."""
    out: dict[Word, Laurent] = {}
    for w, c in e.terms.items():
        for nw, nc in rs.word_normal_form(w, max_steps).terms.items():
            out[nw] = out[nw] + c * nc if nw in out else c * nc
    return Expr(out)


def normalize_product(factors: Sequence[Expr], rs: RuleSet) -> Expr:
    """Normalize ``f1 * f2 * ... * fn`` by moving the rightmost factor left first.

    For a confluent rule set this equals ``normalize`` of the product; for a
    broken one it reproduces the hand computation that pushes the last factor
    through the others.
    """
    acc = normalize(factors[-1], rs)
    for f in reversed(factors[:-1]):
        acc = normalize(f * acc, rs)
    return acc


# -- the shipped rule sets ----------------------------------------------------

def _rule(lhs: tuple[Gen, Gen], rhs) -> RewriteRule:
    if not isinstance(rhs, Expr):
        rhs = Expr.scalar(rhs) if rhs else Expr()
    return RewriteRule(lhs, rhs)


def _w(*gens: Gen) -> Expr:
    return Expr.word(*gens)


def shared_rules() -> list[RewriteRule]:
    """Plane, differential and derivative-derivative rules common to both calculi."""
    T, F, t, f, dt, df = Gen.Theta, Gen.Phi, Gen.theta, Gen.phi, Gen.d_theta, Gen.d_phi
    return [
        _rule((f, t), -P * _w(t, f)),
        _rule((t, t), 0),
        _rule((f, f), 0),
        _rule((F, T), Q ** -1 * _w(T, F)),
        _rule((df, dt), -(Q ** -1) * _w(dt, df)),
        _rule((dt, dt), 0),
        _rule((df, df), 0),
    ]


def build_ruleset(calculus_type: CalculusType, *, theta_Phi_sign: int = 1) -> RuleSet:
    """Rule set of the type I or type II calculus, written out relation by relation.

    ``theta_Phi_sign=-1`` flips the sign of the Θφ term in the θΦ rule.  That
    term vanishes for type I, so the flag only changes the type II rule set;
    it exists to exhibit the sign error in the printed type II relation.
    """
    if theta_Phi_sign not in (1, -1):
        raise ValueError("theta_Phi_sign must be +1 or -1")
    T, F, t, f, dt, df = Gen.Theta, Gen.Phi, Gen.theta, Gen.phi, Gen.d_theta, Gen.d_phi
    pq = P * Q
    ipq = pq ** -1
    if calculus_type is CalculusType.TYPE_I:
        specific = [
            _rule((t, T), _w(T, t)),
            _rule((t, F), Q * _w(F, t)),
            _rule((f, F), _w(F, f)),
            _rule((f, T), P * _w(T, f) + (1 - pq) * _w(F, t)),
            _rule((dt, t), 1 - _w(t, dt)),
            _rule((dt, f), -P * _w(f, dt)),
            _rule((df, f), 1 - _w(f, df) + (pq - 1) * _w(t, dt)),
            _rule((df, t), -Q * _w(t, df)),
            _rule((dt, T), _w(T, dt) + (1 - ipq) * _w(F, df)),
            _rule((dt, F), Q ** -1 * _w(F, dt)),
            _rule((df, T), P ** -1 * _w(T, df)),
            _rule((df, F), _w(F, df)),
        ]
    else:
        specific = [
            _rule((t, T), _w(T, t)),
            _rule((t, F), P ** -1 * _w(F, t) + theta_Phi_sign * (1 - ipq) * _w(T, f)),
            _rule((f, F), _w(F, f)),
            _rule((f, T), Q ** -1 * _w(T, f)),
            _rule((dt, t), 1 - _w(t, dt) + (ipq - 1) * _w(f, df)),
            _rule((dt, f), -(Q ** -1) * _w(f, dt)),
            _rule((df, f), 1 - _w(f, df)),
            _rule((df, t), -(P ** -1) * _w(t, df)),
            _rule((dt, T), _w(T, dt)),
            _rule((dt, F), P * _w(F, dt)),
            _rule((df, T), Q * _w(T, df)),
            _rule((df, F), _w(F, df) + (1 - pq) * _w(T, dt)),
        ]
    return RuleSet(shared_rules() + specific, calculus_type)


def classical_ruleset() -> RuleSet:
    """The undeformed exterior calculus, written independently of p and q."""
    T, F, t, f, dt, df = Gen.Theta, Gen.Phi, Gen.theta, Gen.phi, Gen.d_theta, Gen.d_phi
    rules = [
        _rule((f, t), -_w(t, f)), _rule((t, t), 0), _rule((f, f), 0),
        _rule((F, T), _w(T, F)),
        _rule((df, dt), -_w(dt, df)), _rule((dt, dt), 0), _rule((df, df), 0),
        _rule((t, T), _w(T, t)), _rule((t, F), _w(F, t)),
        _rule((f, F), _w(F, f)), _rule((f, T), _w(T, f)),
        _rule((dt, t), 1 - _w(t, dt)), _rule((dt, f), -_w(f, dt)),
        _rule((df, f), 1 - _w(f, df)), _rule((df, t), -_w(t, df)),
        _rule((dt, T), _w(T, dt)), _rule((dt, F), _w(F, dt)),
        _rule((df, T), _w(T, df)), _rule((df, F), _w(F, df)),
    ]
    return RuleSet(rules)


def normal_basis_words(max_len: int, alphabet: Iterable[Gen] = (Gen.Theta, Gen.Phi, Gen.theta, Gen.phi),
                       rs: RuleSet | None = None) -> list[Word]:
    """All words up to ``max_len`` over ``alphabet`` that no rule of ``rs`` reduces."""
    rs = rs or build_ruleset(CalculusType.TYPE_I)
    alphabet = tuple(alphabet)
    out = []
    for n in range(max_len + 1):
        for w in itertools.product(alphabet, repeat=n):
            if rs.is_normal(w):
                out.append(w)
    return out


# -- confluence ---------------------------------------------------------------

@dataclass(frozen=True)
class CriticalPair:
    word: Word
    left: Expr   # rule applied to the first two letters
    right: Expr  # rule applied to the last two letters


@dataclass
class ConfluenceReport:
    overlaps_checked: int
    failures: list[tuple[Word, Expr, Expr]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def critical_pairs(rs: RuleSet) -> list[CriticalPair]:
    out = []
    for x, y, z in itertools.product(rs.alphabet, repeat=3):
        if (x, y) in rs and (y, z) in rs:
            out.append(CriticalPair((x, y, z), rs[(x, y)] * Expr.word(z),
                                    Expr.word(x) * rs[(y, z)]))
    return out


def check_confluence(rs: RuleSet) -> ConfluenceReport:
    pairs = critical_pairs(rs)
    report = ConfluenceReport(len(pairs))
    for cp in pairs:
        a, b = normalize(cp.left, rs), normalize(cp.right, rs)
        if a != b:
            report.failures.append((cp.word, a, b))
    return report


# -- exterior derivative and partial derivatives -------------------------------

def _has_derivative(e: Expr) -> bool:
    return any(isinstance(g, Gen) and g.kind == "deriv" for g in e.letters())


def exterior_d(e: Expr, rs: RuleSet | None = None) -> Expr:
    """Apply d by the graded Leibniz rule, with dθ = Θ, dφ = Φ, dΘ = dΦ = 0.

    Without a rule set the result lives in the free algebra; with one it is
    returned in normal form.
    """
    if _has_derivative(e):
        raise ValueError("d undefined on derivative generators")
    out: dict[Word, Laurent] = {}
    for w, c in e.terms.items():
        sign = 1
        for i, g in enumerate(w):
            if g.kind == "coord":
                nw = w[:i] + (Gen.diff(g.index),) + w[i + 1:]
                out[nw] = out.get(nw, Laurent()) + sign * c
            if g.parity:
                sign = -sign
    result = Expr(out)
    return normalize(result, rs) if rs is not None else result


def apply_derivative(i: int, f: Expr, rs: RuleSet) -> Expr:
    """Action of ∂θ (i=1) or ∂φ (i=2) on a function of coordinates and differentials.

    Moves the derivative to the right through ``f`` and discards whatever is
    still followed by a derivative, since derivatives annihilate constants.
    """
    if i not in (1, 2):
        raise ValueError("derivative index must be 1 or 2")
    if _has_derivative(f):
        raise ValueError("derivatives act on coordinates and differentials only")
    moved = normalize(Expr.word(Gen.deriv(i)) * f, rs)
    return Expr({w: c for w, c in moved.terms.items()
                 if not (w and w[-1].kind == "deriv")})


# -- consistency --------------------------------------------------------------

@dataclass(frozen=True)
class CheckItem:
    group: str
    name: str
    residual: Expr

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()


@dataclass
class ConsistencyReport:
    items: list[CheckItem]

    @property
    def ok(self) -> bool:
        return all(i.passed for i in self.items)

    @property
    def failures(self) -> list[CheckItem]:
        return [i for i in self.items if not i.passed]

    def group(self, name: str) -> list[CheckItem]:
        return [i for i in self.items if i.group == name]


def plane_relation() -> Expr:
    """θφ + p⁻¹φθ."""
    return _w(Gen.theta, Gen.phi) + P ** -1 * _w(Gen.phi, Gen.theta)


def check_consistency(rs: RuleSet) -> ConsistencyReport:
    """Check that d, the products with differentials and ∂∂ respect the relations.

    Groups:
      ``products``    d and right multiplication by Θ, Φ of θφ + p⁻¹φθ;
      ``leibniz``     d of every coordinate/differential rule lands in the ideal;
      ``d-squared``   d(d w) = 0 for every word of length <= 3;
      ``derivatives`` ∂θ∂φ + q∂φ∂θ, ∂θ∂θ and ∂φ∂φ kill the basis up to length 2.
    """
    from .syntax import format_expr, format_word

    T, F, t, f = Gen.Theta, Gen.Phi, Gen.theta, Gen.phi
    items: list[CheckItem] = []
    rel = plane_relation()
    label = format_expr(rel)
    items.append(CheckItem("products", f"d({label})", exterior_d(rel, rs)))
    for g in (T, F):
        residual = (normalize_product([_w(t), _w(f), _w(g)], rs)
                    + P ** -1 * normalize_product([_w(f), _w(t), _w(g)], rs))
        items.append(CheckItem("products", f"({label})*{g.name}", residual))

    for r in rs:
        if _has_derivative(Expr.word(*r.lhs)):
            continue
        items.append(CheckItem("leibniz", f"d({format_expr(r.relation())})",
                               exterior_d(r.relation(), rs)))

    for n in range(1, 4):
        for w in itertools.product((T, F, t, f), repeat=n):
            once = exterior_d(Expr.word(*w), rs)
            items.append(CheckItem("d-squared", f"d(d({format_word(w)}))",
                                   exterior_d(once, rs)))

    for w in normal_basis_words(2, rs=rs):
        fw = Expr.word(*w)
        name = format_word(w) or "1"
        mixed = (apply_derivative(1, apply_derivative(2, fw, rs), rs)
                 + Q * apply_derivative(2, apply_derivative(1, fw, rs), rs))
        items.append(CheckItem("derivatives", f"(d_theta*d_phi + q*d_phi*d_theta)({name})", mixed))
        for i, dname in ((1, "d_theta"), (2, "d_phi")):
            twice = apply_derivative(i, apply_derivative(i, fw, rs), rs)
            items.append(CheckItem("derivatives", f"{dname}^2({name})", twice))
    return ConsistencyReport(items)


# -- quadratic relations over an arbitrary alphabet ----------------------------

def orient_quadratic_relations(relations: Iterable[Expr], alphabet: Sequence
                               ) -> tuple[list[Expr], RuleSet]:
    """Row-reduce homogeneous quadratic relations into an oriented rule set.

    Each relation is reduced by the rules collected so far; if something
    survives, its largest word becomes a new rule (the leading coefficient
    must be a unit) and earlier right sides are reduced by it.  Returns the
    relations that contributed a rule, in input order, and the rule set.
    Relations dropped here are Laurent-linear combinations of kept ones.
    """
    rules: dict[Word, Expr] = {}
    kept: list[Expr] = []

    def reduce(e: Expr) -> Expr:
        out = Expr()
        for w, c in e.terms.items():
            out = out + (c * rules[w] if w in rules else Expr({w: c}))
        return out

    for rel in relations:
        if any(len(w) != 2 for w in rel.terms):
            raise ValueError("only homogeneous quadratic relations are supported")
        r = reduce(rel)
        if r.is_zero():
            continue
        lead = r.leading_word()
        c = r.coeff(lead)
        if not c.is_unit():
            raise ValueError(f"leading coefficient {c} of {lead} is not a unit")
        rhs = -(r - Expr({lead: c})) * c.inverse()
        rules = {k: Expr({w: v for w, v in _sub(rhs_k, lead, rhs).terms.items()})
                 for k, rhs_k in rules.items()}
        rules[lead] = rhs
        kept.append(rel)
    rs = RuleSet((RewriteRule(k, v) for k, v in rules.items()), alphabet=alphabet)
    return kept, rs


def _sub(e: Expr, word: Word, value: Expr) -> Expr:
    c = e.coeff(word)
    if not c:
        return e
    return e - Expr({word: c}) + c * value


def reachable_normal_forms(e: Expr, rs: RuleSet, limit: int = 10_000) -> set[Expr]:
    """Every normal form reachable from ``e`` by single-term rewrites in any order.

    Only needed for non-confluent systems, where the normal form depends on
    the strategy.  ``limit`` bounds the number of expressions explored.
    """
    seen = {e}
    frontier = [e]
    found: set[Expr] = set()
    while frontier:
        cur = frontier.pop()
        successors = []
        for w, c in cur.terms.items():
            for i in range(len(w) - 1):
                if w[i:i + 2] in rs:
                    rep = Expr.word(*w[:i]) * rs[w[i:i + 2]] * Expr.word(*w[i + 2:])
                    successors.append(cur - Expr({w: c}) + c * rep)
        if not successors:
            found.add(cur)
        for s in successors:
            if s not in seen:
                if len(seen) >= limit:
                    raise RuntimeError("rewrite exploration limit reached")
                seen.add(s)
                frontier.append(s)
    return found

