import random

import pytest

from novfiber import GF, QQ, LaurentPoly

FIELDS = [QQ, GF(2), GF(5)]


@pytest.fixture
def rng():
    return random.Random(1234)


def rand_poly(rng, rank, field, nterms=4, lo=-2, hi=2):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(lo, hi) for _ in range(rank))
        c = rng.randint(-4, 4) if field.p is None else rng.randrange(field.p)
        if c:
            terms[e] = c
    return LaurentPoly(terms, rank, field)


def rand_nonzero(rng, rank, field, nterms=4, lo=-2, hi=2):
    while True:
        f = rand_poly(rng, rank, field, nterms, lo, hi)
        if f:
            return f
