import logging
from collections import Counter
from math import isqrt

import numpy as np

from reglat.core import make_lattice, insert, bad_primes, DiagonalLattice
from reglat.errors import BoundTooLarge, RankTooSmall, NotPrimitive, ReglatError
from reglat.extra.memory import MemorySieveCache
from reglat.padic import local_rep_set, local_mask, local_certificate
from reglat.settings import MAX_SIEVE_BOUND

LOGGER = logging.getLogger("reglat.globalrep")

_cache = MemorySieveCache()


def get_sieve_cache():
    return _cache


def set_sieve_cache(cache):
    """
    Replace the process wide sieve cache.

    Args:
        cache (SieveCache): The new cache.

    Returns:
        SieveCache: The previous cache.
    """
    global _cache
    previous, _cache = _cache, cache
    return previous


class _ExceedsBound:
    """No element of the searched set up to the bound is missing."""

    def __repr__(self):
        return "EXCEEDS_BOUND"

    def __reduce__(self):
        return "EXCEEDS_BOUND"


EXCEEDS_BOUND = _ExceedsBound()


def extend_bits(bits, a):
    """
    Add the values ``a x^2`` to a representation bitmap.

    Args:
        bits (numpy.ndarray): Bitmap of the represented integers in ``[0, len(bits) - 1]``.
        a (int): The new coefficient.

    Returns:
        numpy.ndarray: The bitmap of the lattice with ``a`` inserted.
    """
    bound = len(bits) - 1
    extended = bits.copy()
    x = 1
    while a * x * x <= bound:
        shift = a * x * x
        extended[shift:] |= bits[:bound + 1 - shift]
        x += 1
    return extended


class RepSieve:
    """
    Exact bitmap of ``Q(L)`` on ``[0, bound]``.

    Args:
        lattice (DiagonalLattice): The lattice.
        bound (int): Largest integer covered.
        bits (numpy.ndarray): Read-only boolean array of length ``bound + 1``.
    """
    def __init__(self, lattice, bound, bits):
        self.lattice = lattice
        self.bound = bound
        self.bits = bits

    def __contains__(self, n):
        return 0 <= n <= self.bound and bool(self.bits[n])

    def members(self):
        return [int(n) for n in np.flatnonzero(self.bits)]

    def complement(self):
        """
        Returns:
            list of int: Positive integers up to the bound that are not represented.
        """
        return [int(n) for n in np.flatnonzero(~self.bits)]

    def extend(self, a):
        """
        Returns:
            RepSieve: The sieve of ``L + <a>`` at the same bound.
        """
        return RepSieve(insert(self.lattice, a), self.bound, extend_bits(self.bits, a))

    def __eq__(self, other):
        return isinstance(other, RepSieve) and self.bound == other.bound and np.array_equal(self.bits, other.bits)

    def __repr__(self):
        return "RepSieve(%r, %d)" % (self.lattice, self.bound)


def rep_sieve(lattice, bound):
    """
    Build the bitmap of ``Q(L)`` up to ``bound`` one coefficient at a time. Every leading section is cached,
    so sieves of lattices sharing a prefix share work.

    Raises:
        BoundTooLarge: If ``bound`` exceeds the memory budget.
    """
    if bound < 1:
        raise BoundTooLarge("Bound must be positive, got %d" % bound)
    if bound > MAX_SIEVE_BOUND:
        raise BoundTooLarge("Bound %d exceeds %d" % (bound, MAX_SIEVE_BOUND))
    cache = _cache
    bits = cache.get(lattice.coeffs, bound)
    if bits is None:
        if lattice.rank == 1:
            base = np.zeros(bound + 1, dtype=bool)
            base[0] = True
        else:
            base = rep_sieve(lattice.section(lattice.rank - 1), bound).bits
        bits = extend_bits(base, lattice.coeffs[-1])
        bits.flags.writeable = False
        cache.put(lattice.coeffs, bound, bits)
    return RepSieve(lattice, bound, bits)


def _search(coeffs, n):
    if n == 0:
        return True
    a = coeffs[-1]
    if len(coeffs) == 1:
        q, r = divmod(n, a)
        return r == 0 and isqrt(q) ** 2 == q
    head = coeffs[:-1]
    return any(_search(head, n - a * x * x) for x in range(isqrt(n // a) + 1))


def represents(lattice, n):
    """
    Returns:
        bool: True if ``n`` is an integral value of the form.
    """
    if n < 0:
        return False
    bits = _cache.find(lattice.coeffs, n)
    if bits is not None:
        return bool(bits[n])
    return _search(lattice.coeffs, n)


def _check_genus_preconditions(lattice):
    if lattice.rank < 3:
        raise RankTooSmall("Genus representation needs rank 3, got %d" % lattice.rank)
    if not lattice.is_primitive():
        raise NotPrimitive("%r is not primitive" % lattice)


def genus_represents(lattice, n):
    """
    Whether ``n`` is represented by ``L_p`` at every prime dividing ``2dL``. Other primes impose nothing on a
    lattice of rank at least 3.

    Raises:
        RankTooSmall: Below rank 3.
        NotPrimitive: If the lattice is not primitive.
    """
    _check_genus_preconditions(lattice)
    return all(local_rep_set(lattice, p).contains(n) for p in bad_primes(lattice))


def genus_mask(lattice, bound):
    """
    Returns:
        numpy.ndarray: Boolean array of length ``bound + 1`` marking ``Q(gen(L))``.
    """
    _check_genus_preconditions(lattice)
    mask = np.ones(bound + 1, dtype=bool)
    for p in bad_primes(lattice):
        mask &= local_mask(lattice, p, bound)
    return mask


class ConfirmedUpTo:
    """Every locally represented integer up to ``bound`` is represented."""

    confirmed = True

    def __init__(self, bound):
        self.bound = bound

    def to_dict(self):
        return {"verdict": "confirmed", "bound": self.bound}

    def __eq__(self, other):
        return isinstance(other, ConfirmedUpTo) and self.bound == other.bound

    def __str__(self):
        return "CONFIRMED <= %d" % self.bound

    def __repr__(self):
        return "ConfirmedUpTo(%d)" % self.bound


class RefutedAt:
    """
    ``n`` is locally represented everywhere but not represented.

    Args:
        n (int): The witness.
        certificates (dict): One :py:class:`~reglat.padic.LocalCertificate` per bad prime.
    """
    confirmed = False

    def __init__(self, n, certificates):
        self.n = n
        self.certificates = certificates

    def verify(self, lattice):
        return (not represents(lattice, self.n) and
                all(cert.verify(lattice, self.n) for cert in self.certificates.values()))

    def to_dict(self):
        return {"verdict": "refuted", "n": self.n,
                "certificates": [self.certificates[p].to_dict() for p in sorted(self.certificates)]}

    def __eq__(self, other):
        return isinstance(other, RefutedAt) and self.n == other.n

    def __str__(self):
        return "REFUTED at %d" % self.n

    def __repr__(self):
        return "RefutedAt(%d)" % self.n


def _first(mask):
    mask[0] = False
    hits = np.flatnonzero(mask)
    return int(hits[0]) if len(hits) else None


def regular_verdict(lattice, bound):
    """
    Search for the least integer up to ``bound`` represented by the genus but not by the lattice. A
    refutation is an exact disproof of regularity; a confirmation only covers ``[1, bound]``.

    Returns:
        ConfirmedUpTo or RefutedAt: The verdict.

    Raises:
        RankTooSmall: Below rank 3.
        NotPrimitive: If the lattice is not primitive.
    """
    mask = genus_mask(lattice, bound) & ~rep_sieve(lattice, bound).bits
    n = _first(mask)
    if n is None:
        LOGGER.debug("%r confirmed up to %d" % (lattice, bound))
        return ConfirmedUpTo(bound)
    certificates = dict((p, local_certificate(lattice, p, n)) for p in bad_primes(lattice))
    if any(cert is None for cert in certificates.values()):
        raise ReglatError("Witness %d of %r has no local certificate" % (n, lattice))
    LOGGER.debug("%r refuted at %d" % (lattice, n))
    return RefutedAt(n, certificates)


def exceptions(lattice, bound):
    """
    Returns:
        list of int: ``Q(gen(L)) - Q(L)`` within ``[1, bound]``.
    """
    mask = genus_mask(lattice, bound) & ~rep_sieve(lattice, bound).bits
    mask[0] = False
    return [int(n) for n in np.flatnonzero(mask)]


def first_gap(candidates, lattice, bound, start_bound=1024):
    """
    Least element of a set that the lattice does not represent.

    Args:
        candidates (callable or iterable): A predicate on positive integers, or the set's elements in
            ascending order.
        lattice (DiagonalLattice): The lattice, any rank.
        bound (int): Elements above it are not examined.
        start_bound (int): Initial sieve size, doubled on demand.

    Returns:
        int: The least missing element, or ``EXCEEDS_BOUND``.
    """
    if callable(candidates):
        predicate = candidates
        candidates = (n for n in range(1, bound + 1) if predicate(n))
    limit = min(bound, start_bound)
    sieve = rep_sieve(lattice, limit)
    for n in candidates:
        if n > bound:
            break
        if n > limit:
            limit = min(bound, max(2 * limit, n))
            sieve = rep_sieve(lattice, limit)
        if n not in sieve:
            return n
    return EXCEEDS_BOUND


def genus_gap(lattice, bound):
    """
    Least integer represented by the genus of a ternary but not by the ternary itself.
    """
    verdict = regular_verdict(lattice, bound)
    return EXCEEDS_BOUND if verdict.confirmed else verdict.n


def local_gap(lattice, p, bound):
    """
    Least ``n <= bound`` represented by ``L_q`` for every ``q`` dividing ``2dL`` other than ``p`` but not
    by ``L_p``.
    """
    _check_genus_preconditions(lattice)
    mask = ~local_mask(lattice, p, bound)
    for q in sorted(set(bad_primes(lattice)) | {2}):
        if q != p:
            mask &= local_mask(lattice, q, bound)
    n = _first(mask)
    return EXCEEDS_BOUND if n is None else n


def seven_adic_gap(lattice, bound):
    return local_gap(lattice, 7, bound)


def _as_lattice(value):
    return value if isinstance(value, DiagonalLattice) else make_lattice(value)


def precedes(a, b, bound):
    """
    Bounded evidence for ``a <= b`` in the subsequence order: ``a`` is a sub-multiset of ``b`` and both
    lattices represent the same integers up to ``bound``.
    """
    a, b = _as_lattice(a), _as_lattice(b)
    smaller, larger = Counter(a.coeffs), Counter(b.coeffs)
    if any(larger[c] < count for c, count in smaller.items()):
        return False
    return rep_sieve(a, bound) == rep_sieve(b, bound)


def vectors_with_norm(lattice, n):
    """
    All integer coordinate vectors of norm ``n``, in lexicographic order.

    Returns:
        list of tuple: The vectors.
    """
    coeffs = lattice.coeffs
    found = []
    prefix = []

    def complete(remaining, index):
        if index == len(coeffs):
            if remaining == 0:
                found.append(tuple(prefix))
            return
        a = coeffs[index]
        top = isqrt(remaining // a) if remaining >= 0 else -1
        for c in range(-top, top + 1):
            prefix.append(c)
            complete(remaining - a * c * c, index + 1)
            prefix.pop()

    complete(n, 0)
    return found
