import random
from fractions import Fraction

import pytest

from pmech.exactnum import GaussianRational, HPolynomial, RationalFunction


@pytest.fixture
def rng():
    return random.Random(1729)


def random_gaussian(rng, span=5) -> GaussianRational:
    return GaussianRational(
        Fraction(rng.randint(-span, span), rng.randint(1, 3)),
        Fraction(rng.randint(-span, span), rng.randint(1, 3)),
    )


def random_hpoly(rng, max_terms=3, max_exp=2, nonzero=False) -> HPolynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = (rng.randint(0, max_exp), rng.randint(0, max_exp))
        terms[exps] = random_gaussian(rng)
    poly = HPolynomial(terms)
    if nonzero and poly.is_zero():
        return HPolynomial.constant(1)
    return poly


def random_rf(rng) -> RationalFunction:
    return RationalFunction(random_hpoly(rng), random_hpoly(rng, nonzero=True))
