"""Text and JSON forms of expressions.

Grammar (ASCII)::

    sum     := product (('+' | '-') product)*
    product := unary ('*'? unary)*          # juxtaposition multiplies
    unary   := ('-' | '+') unary | power
    power   := atom ('^' exponent)?
    exponent:= ('-' | '+')? INT | '(' ('-' | '+')? INT ')'
    atom    := NAME | INT ('/' INT)? | '(' sum ')'

Names are ``theta phi Theta Phi d_theta d_phi p q``.  Negative exponents are
accepted only on invertible scalars such as ``p``, ``q`` or ``(p*q)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .algebra import Expr, Gen, QGLetter, Word
from .laurent import Laurent, P, Q

NEGATIVE_EXPONENT_MSG = ("nilpotent generators admit only exponents 0 and 1 via ^; "
                         "negative exponents are parameter-only")

ATOMS: dict[str, Expr] = {g.name: Expr.word(g) for g in Gen}
ATOMS["p"] = Expr.scalar(P)
ATOMS["q"] = Expr.scalar(Q)

_ATOM_START = {"NAME", "INT", "("}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int, expected: frozenset[str] = frozenset()):
        self.line, self.col, self.expected = line, col, expected
        where = f"line {line}, column {col}"
        if expected:
            message = f"{message}; expected one of: {', '.join(sorted(expected))}"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class Token:
    kind: str   # NAME, INT, EOF or the operator character itself
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"\s+|(?P<NAME>[A-Za-z_][A-Za-z_0-9]*)|(?P<INT>\d+)|(?P<OP>[-+*/^()])")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        if m.lastgroup == "NAME":
            tokens.append(Token("NAME", m.group(), line, col))
        elif m.lastgroup == "INT":
            tokens.append(Token("INT", m.group(), line, col))
        elif m.lastgroup == "OP":
            tokens.append(Token(m.group(), m.group(), line, col))
        else:
            chunk = m.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message: str, expected: set[str]) -> ParseError:
        t = self.tok
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        return ParseError(f"{message} (found {found})", t.line, t.col, frozenset(expected))

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            raise self.error("syntax error", {kind})
        return self.advance()

    def parse(self) -> Expr:
        e = self.sum()
        if self.tok.kind != "EOF":
            raise self.error("unexpected token", {"+", "-", "*", "^", "end of input"})
        return e

    def sum(self) -> Expr:
        e = self.product()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.product()
            e = e + rhs if op == "+" else e - rhs
        return e

    def product(self) -> Expr:
        e = self.unary()
        while True:
            if self.tok.kind == "*":
                self.advance()
                e = e * self.unary()
            elif self.tok.kind in _ATOM_START:
                e = e * self.unary()
            else:
                return e

    def unary(self) -> Expr:
        if self.tok.kind == "-":
            self.advance()
            return -self.unary()
        if self.tok.kind == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        start = self.tok
        base = self.atom()
        if self.tok.kind != "^":
            return base
        self.advance()
        n = self.exponent()
        if n >= 0:
            return base ** n
        c = _as_scalar(base)
        if c is None or not c.is_unit():
            raise ParseError(NEGATIVE_EXPONENT_MSG, start.line, start.col)
        return Expr.scalar(c ** n)

    def exponent(self) -> int:
        paren = self.tok.kind == "("
        if paren:
            self.advance()
        sign = 1
        if self.tok.kind in ("-", "+"):
            sign = -1 if self.advance().kind == "-" else 1
        if self.tok.kind != "INT":
            raise self.error("exponent must be an integer", {"INT", "-"})
        n = sign * int(self.advance().text)
        if paren:
            self.expect(")")
        return n

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "NAME":
            if t.text not in ATOMS:
                raise self.error(f"unknown name {t.text!r}", set(ATOMS))
            self.advance()
            return ATOMS[t.text]
        if t.kind == "INT":
            self.advance()
            value = Fraction(int(t.text))
            if self.tok.kind == "/":
                self.advance()
                den = self.expect("INT")
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.line, den.col)
                value /= int(den.text)
            return Expr.scalar(value)
        if t.kind == "(":
            self.advance()
            e = self.sum()
            self.expect(")")
            return e
        raise self.error("syntax error", set(ATOMS) | {"INT", "("})


def _as_scalar(e: Expr) -> Laurent | None:
    if e.is_zero():
        return Laurent()
    if set(e.terms) == {()}:
        return e.coeff(())
    return None


def parse_expr(text: str) -> Expr:
    """Parse text into a free-algebra expression (no relations applied)."""
    return _Parser(text).parse()


# -- printing -----------------------------------------------------------------

_SUPERSCRIPT = str.maketrans("-0123456789", "⁻⁰¹²³⁴⁵⁶⁷⁸⁹")


def format_word(word: Word, unicode: bool = False) -> str:
    if unicode:
        return "".join(g.symbol for g in word)
    return "*".join(g.name for g in word)


def format_laurent(c: Laurent, unicode: bool = False) -> str:
    text = str(c)
    if unicode:
        text = re.sub(r"\^(-?\d+)", lambda m: m.group(1).translate(_SUPERSCRIPT), text)
        text = text.replace("*", "")
    return text


def _term(c: Laurent, word: Word, unicode: bool, alone: bool) -> tuple[bool, str]:
    """(negative, body) for one term of a printed sum."""
    w = format_word(word, unicode)
    sep = "·" if unicode else "*"
    if c.is_unit():
        ((a, b), r), = c.terms.items()
        mag = Laurent.monomial(abs(r), a, b)
        if not w:
            return r < 0, format_laurent(mag, unicode)
        if mag == 1:
            return r < 0, w
        return r < 0, f"{format_laurent(mag, unicode)}{sep}{w}"
    text = format_laurent(c, unicode)
    if not w:
        return False, text if alone else f"({text})"
    return False, f"({text}){sep}{w}"


def format_expr(e: Expr, mode: str = "text", unicode: bool = False) -> Any:
    """Deterministic rendering: terms in normal-form word order.

    ``mode="json"`` returns the JSON-ready dict instead of a string.
    """
    if mode == "json":
        return expr_to_json(e)
    if mode != "text":
        raise ValueError(f"unknown format mode {mode!r}")
    items = list(e.items())
    if not items:
        return "0"
    out = ""
    for i, (w, c) in enumerate(items):
        neg, body = _term(c, w, unicode, alone=len(items) == 1)
        if i == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


def laurent_to_json(c: Laurent) -> dict:
    return {"terms": [{"p_exp": a, "q_exp": b, "num": r.numerator, "den": r.denominator}
                      for (a, b), r in c.items()]}


def laurent_from_json(data: dict) -> Laurent:
    return Laurent({(t["p_exp"], t["q_exp"]): Fraction(t["num"], t["den"]) for t in data["terms"]})


_LETTERS = {g.name: g for g in Gen} | {l.name: l for l in QGLetter}


def expr_to_json(e: Expr) -> dict:
    return {"terms": [{"coeff": laurent_to_json(c), "word": [g.name for g in w]}
                      for w, c in e.items()]}


def expr_from_json(data: dict) -> Expr:
    return Expr.from_terms((laurent_from_json(t["coeff"]), tuple(_LETTERS[n] for n in t["word"]))
                           for t in data["terms"])
