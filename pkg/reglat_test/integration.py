import logging

import numpy as np
from sympy import primerange

from reglat.core import bad_primes
from reglat.globalrep import rep_sieve, represents, genus_represents, regular_verdict
from reglat.padic import local_rep_set, locally_represents

LOGGER = logging.getLogger("reglat_test.integration")


def sieve_oracle_test(lattice, bound):
    """
    Compare the bitmap sieve against the direct search on every integer up to ``bound``.
    """
    sieve = rep_sieve(lattice, bound)
    direct = [n for n in range(bound + 1) if represents(lattice, n)]
    assert sieve.members() == direct


def local_global_soundness_test(lattice, bound, primes=tuple(primerange(2, 51))):
    """
    Every integer the lattice represents is represented over every ``Z_p``.
    """
    members = rep_sieve(lattice, bound).members()[1:]
    for p in primes:
        rep = local_rep_set(lattice, p)
        missing = [n for n in members if not rep.contains(n)]
        assert not missing, "%r at %d misses %s" % (lattice, p, missing[:5])


def local_set_agreement_test(lattice, p, bound):
    """
    The tabulated local set agrees with the valuation descent on ``[1, bound]``.
    """
    rep = local_rep_set(lattice, p)
    for n in range(1, bound + 1):
        assert rep.contains(n) == locally_represents(lattice, p, n), "%r at %d disagrees on %d" % (lattice, p, n)


def verdict_witness_test(lattice, bound):
    """
    Re-check a verdict: a refutation witness is locally represented at every bad prime and not represented;
    a confirmation has no such integer up to the bound.
    """
    verdict = regular_verdict(lattice, bound)
    if verdict.confirmed:
        sieve = rep_sieve(lattice, bound)
        for n in range(1, min(bound, 500) + 1):
            if genus_represents(lattice, n):
                assert n in sieve
        return verdict
    assert verdict.verify(lattice)
    assert genus_represents(lattice, verdict.n)
    assert not represents(lattice, verdict.n)
    assert set(verdict.certificates) == set(bad_primes(lattice))
    earlier = [n for n in range(1, verdict.n) if genus_represents(lattice, n) and not represents(lattice, n)]
    assert not earlier
    return verdict


def mask_membership_test(mask, expected):
    differences = np.flatnonzero(mask != expected)
    assert len(differences) == 0, "first differences at %s" % differences[:10]
