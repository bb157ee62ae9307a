import random
from fractions import Fraction

import pytest

from powerdex import appendix_game


@pytest.fixture
def appendix():
    return appendix_game()


@pytest.fixture
def rng():
    return random.Random(20260808)


def frac(text) -> Fraction:
    return Fraction(text)
