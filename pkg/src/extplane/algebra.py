"""Free graded algebra on the six calculus generators.

Words are plain tuples of letters.  Letters carry a ``rank`` (their place in
the normal-form ordering) and a ``parity``; the algebra code only looks at
those two attributes, so the same :class:`Expr` type also serves the four
quantum-matrix letters used by the covariance checks.
"""

from __future__ import annotations

import functools
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .laurent import ONE, Laurent, Scalar

EVEN, ODD = 0, 1


@functools.total_ordering
class Gen(Enum):
    """The six generators, declared in normal-form order Θ < Φ < θ < φ < ∂θ < ∂φ."""

    Theta = 0
    Phi = 1
    theta = 2
    phi = 3
    d_theta = 4
    d_phi = 5

    @property
    def rank(self) -> int:
        return self.value

    @property
    def kind(self) -> str:
        return ("diff", "coord", "deriv")[self.value // 2]

    @property
    def index(self) -> int:
        return self.value % 2 + 1

    @property
    def parity(self) -> int:
        return EVEN if self.kind == "diff" else ODD

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    @classmethod
    def coord(cls, i: int) -> Gen:
        return (cls.theta, cls.phi)[i - 1]

    @classmethod
    def diff(cls, i: int) -> Gen:
        return (cls.Theta, cls.Phi)[i - 1]

    @classmethod
    def deriv(cls, i: int) -> Gen:
        return (cls.d_theta, cls.d_phi)[i - 1]

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Gen):
            return NotImplemented
        return self.value < other.value


_SYMBOLS = {
    Gen.Theta: "Θ", Gen.Phi: "Φ", Gen.theta: "θ",
    Gen.phi: "φ", Gen.d_theta: "∂θ", Gen.d_phi: "∂φ",
}


@functools.total_ordering
class QGLetter(Enum):
    """Entries of the quantum matrix T = [[a, b], [c, d]]; all even."""

    a = 0
    b = 1
    c = 2
    d = 3

    @property
    def rank(self) -> int:
        return self.value

    @property
    def parity(self) -> int:
        return EVEN

    @property
    def symbol(self) -> str:
        return self.name

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, QGLetter):
            return NotImplemented
        return self.value < other.value


Letter = Union[Gen, QGLetter]
Word = tuple  # tuple[Letter, ...]


def word_parity(word: Iterable[Letter]) -> int:
    return sum(g.parity for g in word) % 2


def word_key(word: Word) -> tuple:
    """Degree-lexicographic key; rewriting always moves words down this order."""
    return (len(word), tuple(g.rank for g in word))


class Expr:
    """Finite sum of Laurent coefficients times words, with no relations applied."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, Laurent | Scalar] | None = None):
        clean: dict[Word, Laurent] = {}
        if terms:
            for w, c in terms.items():
                c = Laurent.coerce(c)
                if c:
                    w = tuple(w)
                    clean[w] = clean[w] + c if w in clean else c
        self._terms = {w: c for w, c in clean.items() if c}
        self._hash: int | None = None

    @classmethod
    def word(cls, *letters: Letter, coeff: Laurent | Scalar = 1) -> Expr:
        return cls({tuple(letters): coeff})

    @classmethod
    def scalar(cls, c: Laurent | Scalar) -> Expr:
        return cls({(): c})

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Laurent | Scalar, Word]]) -> Expr:
        out: dict[Word, Laurent] = {}
        for c, w in pairs:
            w = tuple(w)
            out[w] = out.get(w, Laurent()) + Laurent.coerce(c)
        return cls(out)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Word, Laurent]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Word, Laurent]]:
        """Terms sorted by word in normal-form order."""
        return iter(sorted(self._terms.items(), key=lambda kv: word_key(kv[0])))

    def words(self) -> list[Word]:
        return [w for w, _ in self.items()]

    def coeff(self, word: Iterable[Letter]) -> Laurent:
        return self._terms.get(tuple(word), Laurent())

    def letters(self) -> set:
        return {g for w in self._terms for g in w}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def parity(self) -> int | None:
        """Common parity of all terms, or None for an inhomogeneous sum."""
        parities = {word_parity(w) for w in self._terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else EVEN

    def leading_word(self) -> Word:
        return max(self._terms, key=word_key)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Expr | Laurent | Scalar) -> Expr:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out[w] + c if w in out else c
        return Expr(out)

    __radd__ = __add__

    def __neg__(self) -> Expr:
        return Expr({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: Expr | Laurent | Scalar) -> Expr:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Expr | Laurent | Scalar) -> Expr:
        return _coerce(other) - self

    def __mul__(self, other: Expr | Laurent | Scalar) -> Expr:
        if isinstance(other, (Laurent, int, Fraction)):
            c = Laurent.coerce(other)
            return Expr({w: v * c for w, v in self._terms.items()})
        if not isinstance(other, Expr):
            return NotImplemented
        out: dict[Word, Laurent] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                out[w] = out[w] + c1 * c2 if w in out else c1 * c2
        return Expr(out)

    def __rmul__(self, other: Laurent | Scalar) -> Expr:
        if isinstance(other, (Laurent, int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> Expr:
        if not isinstance(n, int) or n < 0:
            raise ValueError("expressions admit only non-negative integer powers")
        out = Expr.scalar(ONE)
        for _ in range(n):
            out = out * self
        return out

    def map_coeffs(self, fn) -> Expr:
        return Expr({w: fn(c) for w, c in self._terms.items()})

    def substitute(self, p=(1, 0), q=(0, 1)) -> Expr:
        return self.map_coeffs(lambda c: c.substitute(p=p, q=q))

    # -- comparison -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Expr):
            return self._terms == other._terms
        if isinstance(other, (Laurent, int, Fraction)):
            return self == Expr.scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        from .syntax import format_expr

        return f"Expr({format_expr(self)})"


def _coerce(x) -> Expr | None:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (Laurent, int, Fraction)):
        return Expr.scalar(x)
    return None


def expr_sum(a: Expr, b: Expr) -> Expr:
    return a + b


def expr_product(a: Expr, b: Expr) -> Expr:
    return a * b


def gen(g: Gen | QGLetter) -> Expr:
    return Expr.word(g)


ZERO_EXPR = Expr()
ONE_EXPR = Expr.scalar(1)
