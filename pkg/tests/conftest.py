import random
from fractions import Fraction

import pytest

from osculata import MultiPoly, builtin_corpus


@pytest.fixture(scope="session")
def corpus():
    return builtin_corpus()


def random_poly(rng: random.Random, nvars: int, max_degree: int, bound: int = 9) -> MultiPoly:
    """Dense-ish random polynomial with small integer coefficients."""
    terms = {}
    for _ in range(rng.randint(1, 6)):
        exps = tuple(rng.randint(0, max_degree) for _ in range(nvars))
        if sum(exps) > max_degree:
            continue
        terms[exps] = Fraction(rng.randint(-bound, bound))
    return MultiPoly(nvars, terms)


def random_rationals(rng: random.Random, count: int, bound: int = 9):
    return [Fraction(rng.randint(-bound, bound), rng.randint(1, 4)) for _ in range(count)]
