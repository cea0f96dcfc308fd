"""Seeded random laurent polynomials, words and expressions for property checks."""

from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction
from typing import Sequence

from .algebra import Expr, Gen
from .laurent import Laurent


def random_laurent(rng: random.Random, max_terms: int = 3, max_exp: int = 2) -> Laurent:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        key = (rng.randint(-max_exp, max_exp), rng.randint(-max_exp, max_exp))
        terms[key] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return Laurent(terms)


def random_word(rng: random.Random, max_len: int = 4, alphabet: Sequence[Gen] = tuple(Gen)) -> tuple[Gen, ...]:
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def random_expr(rng: random.Random, max_terms: int = 4, max_len: int = 4,
                alphabet: Sequence[Gen] = tuple(Gen)) -> Expr:
    return Expr.from_terms((random_laurent(rng), random_word(rng, max_len, alphabet))
                           for _ in range(rng.randint(0, max_terms)))


def random_q(rng: random.Random, r_min: float = 0.1, r_max: float = 10.0) -> complex:
    """Point of the annulus r_min <= |q| <= r_max, log-uniform in the radius."""
    r = math.exp(rng.uniform(math.log(r_min), math.log(r_max)))
    return cmath.rect(r, rng.uniform(-math.pi, math.pi))
