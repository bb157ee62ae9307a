"""Exact rational arithmetic helpers.

All grid coordinates, game values and exact index shares in this package are
`fractions.Fraction` values, which are always stored in lowest terms with a
positive denominator and never round.  Floating point appears only in the
Monte-Carlo estimator.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

Rational = Fraction

MAX_PLAYERS = 20

_FACTORIALS = [factorial(k) for k in range(MAX_PLAYERS + 1)]


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse a rational from a "p/q" (or plain integer / decimal) string."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


def format_rational(value: Fraction) -> str:
    """Serialize to the canonical "p/q" form ("3/4", "-1/3", "1", "0")."""
    return str(Fraction(value))


def ordering_weight(s: int, n: int) -> Fraction:
    """(s-1)!(n-s)!/n!, the share of orderings placing a fixed coalition of
    size s as the head set with a fixed last member."""
    if not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got s={s}, n={n}")
    return Fraction(_FACTORIALS[s - 1] * _FACTORIALS[n - s], _FACTORIALS[n])


def gain_constant(s: int, n: int) -> Fraction:
    """(s-1)!(n-s)!/n!: per-member gain rate of a coalition of size s."""
    return ordering_weight(s, n)


def loss_constant(s: int, n: int) -> Fraction:
    """s!(n-s-1)!/n!: per-outsider loss rate against a coalition of size s."""
    if not 0 <= s <= n - 1:
        raise ValueError(f"need 0 <= s <= n-1, got s={s}, n={n}")
    return Fraction(_FACTORIALS[s] * _FACTORIALS[n - s - 1], _FACTORIALS[n])
