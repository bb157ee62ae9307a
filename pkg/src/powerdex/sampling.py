"""Seeded random game generators for test suites and the axiom CLI."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .stepfun import Discretization, StepGame, make_regular_step


def random_discretization(rng: random.Random, p: int,
                          denominator: int = 24) -> Discretization:
    if p < 1:
        raise ValueError("need p >= 1")
    cuts = rng.sample(range(1, denominator), p - 1) if p > 1 else []
    alpha = [Fraction(0)] + sorted(Fraction(c, denominator) for c in cuts) + [Fraction(1)]
    return Discretization(tuple(alpha))


def random_regular_game(rng: random.Random, n: int, p: int) -> StepGame:
    """Random monotone regular step game: box values grow along the
    componentwise order via running maxima."""
    disc = random_discretization(rng, p)
    values: dict[tuple[int, ...], Fraction] = {}
    boxes = sorted(itertools.product(range(1, 2 * p, 2), repeat=n),
                   key=lambda b: (sum(b), b))
    for b in boxes:
        raw = Fraction(rng.randrange(0, 13), 12)
        below = [values[b[:i] + (b[i] - 2,) + b[i + 1:]]
                 for i in range(n) if b[i] >= 3]
        values[b] = max([raw] + below)
    return make_regular_step(disc, values, n)
