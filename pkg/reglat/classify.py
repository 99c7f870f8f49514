import logging
from collections import namedtuple, defaultdict
from functools import lru_cache, reduce
from itertools import count, product
from math import gcd

import numpy as np
from sympy import legendre_symbol, primerange

from reglat.core import make_lattice, DiagonalLattice
from reglat.errors import PsiUnbounded, ProbeNotRepresented
from reglat.globalrep import first_gap, regular_verdict, vectors_with_norm, extend_bits, EXCEEDS_BOUND
from reglat.padic import local_rep_set
from reglat.settings import PSI_SAFEGUARD
from reglat.tables import TERNARY_CANDIDATES, quaternary_note, quinary_note
from reglat.transforms import is_minimal
from reglat.workers import map_ordered

LOGGER = logging.getLogger("reglat.classify")

SECTION_PRIMES = (2, 3, 5)

UnitClassTriple = namedtuple("UnitClassTriple", ["two", "three", "five"])

UNIT_CLASS_TRIPLES = tuple(UnitClassTriple(*values) for values in product((1, 3, 5, 7), (1, 2), (1, 2)))

TernaryCandidate = namedtuple("TernaryCandidate", ["coeffs", "sources"])

ResidueSets = namedtuple("ResidueSets", ["plus", "minus", "odd_plus", "odd_minus"])


def _class_at(triple, q):
    return {2: triple.two, 3: triple.three, 5: triple.five}[q]


def iter_congruence_values(triple):
    """
    Positive integers ``n`` with ``n = two (mod 8)``, ``n = three (mod 3)`` and ``n = +-five (mod 5)``, ascending.
    """
    fives = (triple.five, 5 - triple.five)
    for n in count(1):
        if n % 8 == triple.two and n % 3 == triple.three and n % 5 in fives:
            yield n


def congruence_values(triple, size):
    """
    Returns:
        list of int: The first ``size`` integers of :py:func:`iter_congruence_values`.
    """
    values = []
    for n in iter_congruence_values(triple):
        if len(values) == size:
            break
        values.append(n)
    return values


def candidate_leads(triple):
    """
    Returns:
        list of int: Possible smallest coefficients, from 1 to the least congruence value.
    """
    return list(range(1, congruence_values(triple, 1)[0] + 1))


def _checked(gap, what):
    if gap is EXCEEDS_BOUND or gap is None:
        raise PsiUnbounded("No gap for %s below %d" % (what, PSI_SAFEGUARD))
    return gap


def lead_gap(triple, b1):
    return _checked(first_gap(iter_congruence_values(triple), make_lattice((b1,)), PSI_SAFEGUARD),
                    "<%d> over %s" % (b1, triple))


def candidate_pairs(triple):
    """
    Returns:
        list of tuple: Pairs ``(b1, b2)`` with ``b1`` a candidate lead and ``b1 <= b2`` up to the least
        congruence value that ``<b1>`` misses.

    Raises:
        PsiUnbounded: If a gap exceeds the safeguard bound.
    """
    pairs = []
    for b1 in candidate_leads(triple):
        pairs.extend((b1, b2) for b2 in range(b1, lead_gap(triple, b1) + 1))
    return pairs


def _guard_holds(triple, coeffs, q):
    unit_class = _class_at(triple, q)
    if q == 2:
        return all(b % 2 == 0 or b % 8 != unit_class for b in coeffs)
    expected = legendre_symbol(unit_class, q)
    return all(legendre_symbol(b % q, q) != expected for b in coeffs)


def section_lattice(triple, coeffs, q):
    """
    The lattice tested at ``q``: the section with the unit class of ``q`` appended when no coefficient
    shares that class, the section alone otherwise.
    """
    if _guard_holds(triple, coeffs, q):
        return make_lattice(tuple(coeffs) + (_class_at(triple, q),))
    return make_lattice(coeffs)


@lru_cache(maxsize=65536)
def _section_sets(triple, coeffs):
    return tuple(local_rep_set(section_lattice(triple, coeffs, q), q) for q in SECTION_PRIMES)


def section_locally_represents(triple, b1, b2, q, n):
    """
    Membership of ``n`` in the local condition at ``q`` attached to the pair ``(b1, b2)``.
    """
    return local_rep_set(section_lattice(triple, (b1, b2), q), q).contains(n)


@lru_cache(maxsize=4096)
def _section_bits(coeffs, bound):
    bits = np.zeros(bound + 1, dtype=bool)
    bits[0] = True
    for a in coeffs:
        bits = extend_bits(bits, a)
    return bits


def section_gap(triple, coeffs, limit):
    """
    Least ``n <= limit`` satisfying every local section condition and not represented by the section.

    Returns:
        int: The gap, or None.
    """
    sets = _section_sets(triple, tuple(coeffs))
    bits, bound = None, 0
    for n in range(1, limit + 1):
        if not all(rep.contains(n) for rep in sets):
            continue
        if n > bound:
            bound = max(256, 2 * bound, n)
            bits = _section_bits(tuple(coeffs), bound)
        if not bits[n]:
            return n
    return None


def build_ternary_candidates():
    """
    Enumerate the ternary sections a minimal regular diagonal lattice of rank at least 4 can have. For each
    unit class triple, a pair ``(b1, b2)`` admits ``b3`` up to the first gap of ``<b1, b2>``, and ``b3`` is
    kept when ``<b1, b2, b3>`` has no gap below ``b3``, which leaves room for a fourth coefficient.

    Returns:
        list of TernaryCandidate: Sorted by coefficients; ``sources`` names every triple that admits it.

    Raises:
        PsiUnbounded: If a gap exceeds the safeguard bound.
    """
    sources = defaultdict(set)
    for triple in UNIT_CLASS_TRIPLES:
        for pair in candidate_pairs(triple):
            top = _checked(section_gap(triple, pair, PSI_SAFEGUARD), "<%d,%d> over %s" % (pair + (triple,)))
            for b3 in range(pair[1], top + 1):
                if section_gap(triple, pair + (b3,), b3 - 1) is None:
                    sources[pair + (b3,)].add(triple)
        LOGGER.debug("%d ternary candidates after %s" % (len(sources), triple))
    return [TernaryCandidate(coeffs, frozenset(found)) for coeffs, found in sorted(sources.items())]


class ClassificationRecord:
    """
    One lattice of a classification scan.

    Args:
        lattice (DiagonalLattice): The lattice.
        verdict (ConfirmedUpTo or RefutedAt): Its regularity verdict.
        minimal (bool): Whether no coefficient can be removed, at the same bound.
        notes (str): The published family it belongs to, if any.
    """
    def __init__(self, lattice, verdict, minimal, notes=None):
        self.lattice = lattice
        self.verdict = verdict
        self.minimal = minimal
        self.notes = notes

    @property
    def confirmed(self):
        return self.verdict.confirmed

    def to_dict(self):
        return {
            "lattice": list(self.lattice.coeffs),
            "verdict": self.verdict.to_dict(),
            "minimal": self.minimal,
            "notes": self.notes,
        }

    def __repr__(self):
        return "ClassificationRecord(%r, %r, minimal=%s)" % (self.lattice, self.verdict, self.minimal)


def classify_lattice(coeffs, bound):
    lattice = make_lattice(coeffs)
    verdict = regular_verdict(lattice, bound)
    notes = quaternary_note(lattice.coeffs) if lattice.rank == 4 else quinary_note(lattice.coeffs)
    return ClassificationRecord(lattice, verdict, is_minimal(lattice, bound), notes)


def _coeffs_of(value):
    if isinstance(value, TernaryCandidate):
        return tuple(value.coeffs)
    if isinstance(value, DiagonalLattice):
        return value.coeffs
    return tuple(sorted(value))


def _extensions(prefix, top):
    content = reduce(gcd, prefix)
    return [prefix + (a,) for a in range(prefix[-1], top + 1) if gcd(content, a) == 1]


def classify_quaternaries(ternary, a4_max, bound, jobs=1):
    """
    Classify ``<b1, b2, b3, a4>`` for every ``a4`` from ``b3`` to ``a4_max`` making the lattice primitive.

    Returns:
        list of ClassificationRecord: One record per ``a4``, ascending.
    """
    prefix = _coeffs_of(ternary)
    return map_ordered(classify_lattice, [(coeffs, bound) for coeffs in _extensions(prefix, a4_max)], jobs)


def search_rank5(prefix, a5_max, bound, jobs=1):
    """
    Classify the quinary extensions of a quaternary prefix with last coefficient up to ``a5_max``.
    """
    prefix = _coeffs_of(prefix)
    return map_ordered(classify_lattice, [(coeffs, bound) for coeffs in _extensions(prefix, a5_max)], jobs)


def scan_quaternaries(a4_max, bound, jobs=1, ternaries=TERNARY_CANDIDATES):
    """
    Classify every quaternary extension of the candidate ternaries up to ``a4_max``.
    """
    arguments = [(coeffs, bound) for ternary in ternaries for coeffs in _extensions(tuple(ternary), a4_max)]
    LOGGER.info("Classifying %d quaternaries at bound %d" % (len(arguments), bound))
    return map_ordered(classify_lattice, arguments, jobs)


def residue_prime_sets(p):
    """
    Primes up to ``p`` split by their quadratic character modulo the odd prime ``p``.

    Returns:
        ResidueSets: Residues, nonresidues, and both without 2.
    """
    primes = list(primerange(2, p + 1))
    plus = frozenset(q for q in primes if legendre_symbol(q % p, p) == 1)
    minus = frozenset(q for q in primes if legendre_symbol(q % p, p) == -1)
    return ResidueSets(plus, minus, plus - {2}, minus - {2})


def forced_basis_check(lattice, probes):
    """
    Replay the argument that a sublattice representing the same integers must be the whole lattice. A probe
    forces a basis index when every vector of that norm has exactly one coordinate outside the forced indices,
    equal to +-1. When those coordinates fall on several indices with the same coefficient, they are
    interchangeable and one of them is forced.

    Args:
        lattice (DiagonalLattice): The lattice.
        probes (list of int): Norms, in the order they are used.

    Returns:
        bool: True if every index is forced after the probes. False may be a false negative.

    Raises:
        ProbeNotRepresented: If a probe has no vector.
    """
    forced = set()
    for n in probes:
        vectors = vectors_with_norm(lattice, n)
        if not vectors:
            raise ProbeNotRepresented("%d is not represented by %r" % (n, lattice))
        indices = set()
        for vector in vectors:
            outside = [i for i, c in enumerate(vector) if c and i not in forced]
            if len(outside) != 1 or abs(vector[outside[0]]) != 1:
                indices = None
                break
            indices.add(outside[0])
        if indices and len(set(lattice.coeffs[i] for i in indices)) == 1:
            forced.add(min(indices))
        LOGGER.debug("Probe %d: %d vectors, forced %s" % (n, len(vectors), sorted(forced)))
    return len(forced) == lattice.rank
