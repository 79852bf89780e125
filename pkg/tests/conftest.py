import random

import pytest

from gbent import ComponentTuple, GBFunction, PAryFunction


def rank_vector(p, length, rank):
    out = []
    for _ in range(length):
        out.append(rank % p)
        rank //= p
    return tuple(reversed(out))


def random_gbfunction(rng, p, n, q):
    return GBFunction(p, n, q, tuple(rng.randrange(q) for _ in range(p**n)))


def random_pary(rng, p, n):
    return PAryFunction(p, n, tuple(rng.randrange(p) for _ in range(p**n)))


def random_tuple(rng, p, n, q, k):
    comps = tuple(random_pary(rng, p, n) for _ in range(k))
    return ComponentTuple(p, n, q, comps)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
