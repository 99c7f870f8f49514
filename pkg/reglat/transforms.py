import logging
from collections import namedtuple

from sympy import legendre_symbol

from reglat.core import make_lattice, insert, remove_index, bad_primes
from reglat.errors import RankTooSmall, NotPrimitive, CaseMismatch, NotRedundant
from reglat.globalrep import rep_sieve
from reglat.padic import valuation, locally_redundant, local_rep_set
from reglat.settings import DEFAULT_BOUND

LOGGER = logging.getLogger("reglat.transforms")

LOCAL = "local"
EMPIRICAL = "empirical"

# Watson cases: p = 2 with a single odd coefficient; p = 2 with two or three odd coefficients congruent mod 4;
# odd p with a single unit coefficient; odd p with an anisotropic pair of unit coefficients.
SINGLE_ODD = "single_odd"
ODD_PAIR_MOD4 = "odd_pair_mod4"
ODD_TRIPLE_MOD4 = "odd_triple_mod4"
SINGLE_UNIT = "single_unit"
ANISOTROPIC_UNIT_PAIR = "anisotropic_unit_pair"

WatsonCase = namedtuple("WatsonCase", ["tag", "prime", "modulus"])


def _exponent_profile(lattice, p):
    profile = []
    for a in lattice.coeffs:
        e = valuation(p, a)
        profile.append((e, a // p ** e))
    return sorted(profile)


def watson_case_for(lattice, p):
    """
    Find the first case in which the Watson transformation at ``p`` keeps a regular diagonal lattice regular
    and diagonal. Writing ``L = <a1, p^e2 a2, ...>`` with unit parts ``ai`` and ascending exponents, the cases
    are, in order: ``p = 2, e2 >= 1``; ``p = 2, e2 = 0, e3 >= 2, a1 = a2 mod 4``;
    ``p = 2, e2 = e3 = 0, e4 >= 2, a1 = a2 = a3 mod 4``; odd ``p, e2 >= 1``;
    odd ``p, e2 = 0, e3 >= 1, (-a1 a2 / p) = -1``.

    Args:
        lattice (DiagonalLattice): A primitive lattice of rank at least 4.
        p (int): A prime.

    Returns:
        WatsonCase: The matching case, or None when no case applies.

    Raises:
        RankTooSmall: Below rank 4.
        NotPrimitive: If the lattice is not primitive.
    """
    if lattice.rank < 4:
        raise RankTooSmall("Watson transformations need rank 4, got %d" % lattice.rank)
    if not lattice.is_primitive():
        raise NotPrimitive("%r is not primitive" % lattice)
    profile = _exponent_profile(lattice, p)
    e = [exponent for exponent, _ in profile]
    a = [unit for _, unit in profile]
    if p == 2:
        if e[1] >= 1:
            return WatsonCase(SINGLE_ODD, 2, 2)
        if e[2] >= 2 and a[0] % 4 == a[1] % 4:
            return WatsonCase(ODD_PAIR_MOD4, 2, 4)
        if e[2] == 0 and e[3] >= 2 and a[0] % 4 == a[1] % 4 == a[2] % 4:
            return WatsonCase(ODD_TRIPLE_MOD4, 2, 4)
        return None
    if e[1] >= 1:
        return WatsonCase(SINGLE_UNIT, p, p)
    if e[2] >= 1 and legendre_symbol(-a[0] * a[1] % p, p) == -1:
        return WatsonCase(ANISOTROPIC_UNIT_PAIR, p, p)
    return None


def watson_sublattice(lattice, case):
    """
    The sublattice of vectors whose norm is congruent, modulo the case's modulus, to the norm of every vector
    they are shifted by. In each case it is diagonal: the coefficients prime to ``p`` get multiplied by
    ``p^2`` (by 4 when ``p = 2``), the others are unchanged.

    Raises:
        CaseMismatch: If ``case`` is not the case selected for the lattice.
    """
    if watson_case_for(lattice, case.prime) != case:
        raise CaseMismatch("%s does not apply to %r" % (case.tag, lattice))
    p = case.prime
    return make_lattice(a * p * p if a % p else a for a in lattice.coeffs)


def watson_transform(lattice, case):
    """
    Rescale :py:func:`watson_sublattice` by the largest power of the prime dividing all its coefficients.

    Returns:
        DiagonalLattice: A primitive lattice of the same rank.
    """
    coeffs = list(watson_sublattice(lattice, case).coeffs)
    p = case.prime
    while all(a % p == 0 for a in coeffs):
        coeffs = [a // p for a in coeffs]
    return make_lattice(coeffs)


def is_redundant(lattice, n, bound=DEFAULT_BOUND, mode=LOCAL):
    """
    Whether inserting ``n`` leaves the represented integers unchanged.

    In ``LOCAL`` mode the lattice is assumed regular and the insertion is tested prime by prime; in
    ``EMPIRICAL`` mode the two sieves up to ``bound`` are compared.
    """
    if mode == EMPIRICAL:
        sieve = rep_sieve(lattice, bound)
        return sieve.extend(n) == sieve
    return all(locally_redundant(lattice, p, n) for p in bad_primes(insert(lattice, n)))


def redundancy_divisor(lattice):
    """
    For a regular lattice, the integer ``D`` such that ``n`` is redundant exactly when ``D`` divides ``n``.
    Local redundancy at ``p`` depends only on ``ord_p(n)``, and primes outside ``2dL`` never obstruct.

    Every exponent up to two past the stabilization threshold is tested, so the power of ``p`` in ``D`` is the
    least exponent from which all larger ones are redundant. A redundant exponent below it means no divisor
    describes redundancy at ``p``.

    Raises:
        NotRedundant: If redundancy at some prime is not closed under raising the exponent.
    """
    divisor = 1
    for p in bad_primes(lattice):
        limit = local_rep_set(lattice, p).threshold + 3
        redundant = [locally_redundant(lattice, p, p ** t) for t in range(limit + 1)]
        if not (redundant[-1] and redundant[-2]):
            raise NotRedundant("No power of %d is redundant in %r" % (p, lattice))
        t = limit
        while t > 0 and redundant[t - 1]:
            t -= 1
        if any(redundant[:t]):
            raise NotRedundant("Redundant exponents of %d in %r have a gap: %s"
                               % (p, lattice, [s for s in range(limit + 1) if redundant[s]]))
        divisor *= p ** t
    return divisor


def redundant_extension(lattice, extras):
    """
    Insert coefficients one at a time, each required to be redundant in the lattice built so far.

    Raises:
        NotRedundant: If some coefficient would enlarge the represented set.
    """
    for n in extras:
        if not is_redundant(lattice, n):
            raise NotRedundant("%d is not redundant in %r" % (n, lattice))
        lattice = insert(lattice, n)
    return lattice


def is_minimal(lattice, bound):
    """
    True if no single coefficient can be removed without losing a represented integer up to ``bound``.
    """
    if lattice.rank == 1:
        return True
    sieve = rep_sieve(lattice, bound)
    seen = set()
    for i, a in enumerate(lattice.coeffs, start=1):
        if a in seen:
            continue
        seen.add(a)
        if rep_sieve(remove_index(lattice, i), bound) == sieve:
            return False
    return True


def minimalize(lattice, bound):
    """
    Drop coefficients, largest index first, while the sieve up to ``bound`` stays the same.
    """
    sieve = rep_sieve(lattice, bound)
    changed = True
    while changed and lattice.rank > 1:
        changed = False
        for i in range(lattice.rank, 0, -1):
            smaller = remove_index(lattice, i)
            if rep_sieve(smaller, bound) == sieve:
                LOGGER.debug("Removed %d from %r" % (lattice.coeffs[i - 1], lattice))
                lattice = smaller
                changed = True
                break
    return lattice
