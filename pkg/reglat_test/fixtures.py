import random
import shutil
import tempfile
from functools import reduce
from math import gcd

import pytest

from reglat.core import make_lattice
from reglat.extra.memory import MemorySieveCache
from reglat.globalrep import set_sieve_cache


def build_random_lattice(generator, rank, largest=30, primitive=True):
    """
    Draw a lattice with ``rank`` coefficients in ``[1, largest]``, redrawing until it is primitive if asked.
    """
    while True:
        coeffs = [generator.randint(1, largest) for _ in range(rank)]
        if not primitive or reduce(gcd, coeffs) == 1:
            return make_lattice(coeffs)


@pytest.fixture
def rng():
    return random.Random(1729)


@pytest.fixture
def random_lattice(rng):
    return build_random_lattice(rng, rng.randint(3, 5))


@pytest.fixture
def temp_cache_dir():
    path = tempfile.mkdtemp(prefix="reglat")
    yield path
    shutil.rmtree(path, ignore_errors=True)


@pytest.fixture
def fresh_sieve_cache():
    cache = MemorySieveCache()
    previous = set_sieve_cache(cache)
    yield cache
    set_sieve_cache(previous)
