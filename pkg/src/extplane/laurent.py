"""Sparse Laurent polynomials in two commuting parameters ``p`` and ``q``.

Values are immutable.  The canonical form drops zero coefficients, so two
values are equal exactly when their term dictionaries are equal.

    >>> P, Q = Laurent.p(), Laurent.q()
    >>> (1 - P * Q) * (-(P * Q) ** -1)
    Laurent(1 - p^-1*q^-1)
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterator, Mapping, Union

Exponent = tuple[int, int]
Scalar = Union[int, Fraction]


class Laurent:
    """An element of Q[p, 1/p, q, 1/q] stored as ``{(a, b): c}`` for ``c p^a q^b``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None):
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for (a, b), c in terms.items():
                c = Fraction(c)
                if c:
                    clean[(int(a), int(b))] = clean.get((int(a), int(b)), Fraction(0)) + c
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash: int | None = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, c: Scalar) -> Laurent:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c: Scalar = 1, p_exp: int = 0, q_exp: int = 0) -> Laurent:
        return cls({(p_exp, q_exp): c})

    @classmethod
    def p(cls) -> Laurent:
        return cls({(1, 0): 1})

    @classmethod
    def q(cls) -> Laurent:
        return cls({(0, 1): 1})

    @classmethod
    def coerce(cls, x: Laurent | Scalar) -> Laurent:
        if isinstance(x, Laurent):
            return x
        if isinstance(x, (int, Rational)):
            return cls.const(Fraction(x))
        raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Terms in display order: constant first, then by total exponent size."""
        return iter(sorted(self._terms.items(), key=lambda kv: _display_key(kv[0])))

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        # units of Q[p^±1, q^±1] are the nonzero rational multiples of monomials
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0)}

    def constant_value(self) -> Fraction:
        return self._terms.get((0, 0), Fraction(0))

    def leading_term(self) -> tuple[Exponent, Fraction]:
        """The term with the lexicographically largest exponent pair."""
        if not self._terms:
            raise ValueError("zero has no leading term")
        exp = max(self._terms)
        return exp, self._terms[exp]

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Laurent | Scalar) -> Laurent:
        try:
            other = Laurent.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self) -> Laurent:
        return Laurent({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: Laurent | Scalar) -> Laurent:
        try:
            other = Laurent.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Laurent | Scalar) -> Laurent:
        return Laurent.coerce(other) - self

    def __mul__(self, other: Laurent | Scalar) -> Laurent:
        try:
            other = Laurent.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Exponent, Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Laurent:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Laurent.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> Laurent:
        """Multiplicative inverse; only monomials are invertible."""
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit of the Laurent ring")
        ((a, b), c), = self._terms.items()
        return Laurent({(-a, -b): 1 / c})

    def __truediv__(self, other: Laurent | Scalar) -> Laurent:
        return self * Laurent.coerce(other).inverse()

    # -- comparison -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Laurent):
            return self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == Laurent.const(Fraction(other))._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution -----------------------------------------------------

    def evaluate(self, p: complex, q: complex) -> complex:
        """Numeric value at ``(p, q)``; both points must be nonzero."""
        if p == 0 or q == 0:
            raise ValueError("nonunital evaluation point")
        return sum((complex(c) * complex(p) ** a * complex(q) ** b
                    for (a, b), c in self._terms.items()), 0j)

    def substitute(self, p: Exponent = (1, 0), q: Exponent = (0, 1)) -> Laurent:
        """Monomial substitution ``p -> p^p[0] q^p[1]`` and ``q -> p^q[0] q^q[1]``.

        ``substitute(p=(0, 1))`` sets p = q; ``substitute(p=(0, 0), q=(0, 0))``
        sets p = q = 1.
        """
        out: dict[Exponent, Fraction] = {}
        for (a, b), c in self._terms.items():
            k = (a * p[0] + b * q[0], a * p[1] + b * q[1])
            out[k] = out.get(k, Fraction(0)) + c
        return Laurent(out)

    # -- display ----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for i, ((a, b), c) in enumerate(self.items()):
            body = _term_text(abs(c), a, b)
            if i == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"Laurent({self})"


def _display_key(exp: Exponent) -> tuple[int, int, int]:
    a, b = exp
    return (abs(a) + abs(b), -a, -b)


def _monomial_text(a: int, b: int) -> str:
    parts = []
    for name, e in (("p", a), ("q", b)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _term_text(c: Fraction, a: int, b: int) -> str:
    mono = _monomial_text(a, b)
    if not mono:
        return str(c)
    if c == 1:
        return mono
    return f"{c}*{mono}"


ZERO = Laurent()
ONE = Laurent.const(1)
P = Laurent.p()
Q = Laurent.q()
