import logging
from math import gcd
from functools import reduce

from sympy import primefactors

from reglat.errors import (EmptyLattice, NonPositiveCoefficient, IndexOutOfRange, RankTooSmall,
                           CoefficientOverflow, LatticeParseError)
from reglat.settings import MAX_COEFFICIENT

LOGGER = logging.getLogger("reglat.core")

SEPARATOR = ','


class DiagonalLattice:
    """
    A positive definite diagonal lattice ``<a1, ..., ak>``. The coefficients are always kept in ascending order
    and the value is immutable once built, so it can be hashed, cached and shipped to worker processes.

    Primitivity is a query, not an invariant: intermediate lattices of a Watson transformation are usually not
    primitive.

    Args:
        coeffs (iterable of int): The diagonal coefficients, in any order.

    Attributes:
        coeffs (tuple of int): The coefficients, ascending.
    """
    __slots__ = ('coeffs',)

    def __init__(self, coeffs):
        coeffs = tuple(sorted(int(a) for a in coeffs))
        if not coeffs:
            raise EmptyLattice("A lattice needs at least one coefficient")
        if coeffs[0] < 1:
            raise NonPositiveCoefficient("Coefficient %d is not positive" % coeffs[0])
        if coeffs[-1] > MAX_COEFFICIENT:
            raise CoefficientOverflow("Coefficient %d exceeds %d" % (coeffs[-1], MAX_COEFFICIENT))
        object.__setattr__(self, 'coeffs', coeffs)

    def __setattr__(self, key, value):
        raise AttributeError("DiagonalLattice is immutable")

    def __reduce__(self):
        return DiagonalLattice, (self.coeffs,)

    @property
    def rank(self):
        return len(self.coeffs)

    def is_primitive(self):
        """
        Returns:
            bool: True if the gcd of the coefficients is 1.
        """
        return reduce(gcd, self.coeffs) == 1

    def section(self, size):
        """
        The sublattice on the ``size`` smallest coefficients.

        Args:
            size (int): Number of leading coefficients to keep.

        Returns:
            DiagonalLattice: The leading section.
        """
        if not 1 <= size <= self.rank:
            raise IndexOutOfRange("Section size %d out of range for rank %d" % (size, self.rank))
        return DiagonalLattice(self.coeffs[:size])

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, DiagonalLattice) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def __str__(self):
        return SEPARATOR.join(str(a) for a in self.coeffs)

    def __repr__(self):
        return "<%s>" % ",".join(str(a) for a in self.coeffs)


def make_lattice(coeffs):
    """
    Build a lattice from a coefficient sequence.

    Args:
        coeffs (iterable of int): Positive coefficients, any order.

    Returns:
        DiagonalLattice: The sorted lattice.

    Raises:
        EmptyLattice: If no coefficient is given.
        NonPositiveCoefficient: If any coefficient is below 1.
    """
    return DiagonalLattice(coeffs)


def parse_lattice(text):
    """
    Parse the textual form ``1,48,144,144``. Whitespace around entries is ignored.

    Args:
        text (str): Comma separated coefficients.

    Returns:
        DiagonalLattice: The parsed lattice.

    Raises:
        LatticeParseError: If an entry is not an integer.
    """
    entries = [entry.strip() for entry in text.split(SEPARATOR) if entry.strip()]
    try:
        values = [int(entry) for entry in entries]
    except ValueError:
        raise LatticeParseError("Cannot parse lattice '%s'" % text)
    return make_lattice(values)


def discriminant(lattice):
    """
    Product of the coefficients.

    Raises:
        CoefficientOverflow: If an intermediate product exceeds the configured coefficient budget squared.
    """
    limit = MAX_COEFFICIENT ** 2
    product = 1
    for a in lattice.coeffs:
        product *= a
        if product > limit:
            raise CoefficientOverflow("Discriminant of %r exceeds %d" % (lattice, limit))
    return product


def remove_index(lattice, i):
    """
    Remove the ``i``-th coefficient, counting from 1.

    Args:
        lattice (DiagonalLattice): Lattice of rank at least 2.
        i (int): 1-based index.

    Returns:
        DiagonalLattice: The lattice without ``a_i``.

    Raises:
        RankTooSmall: If the lattice has rank 1.
        IndexOutOfRange: If ``i`` is not in ``[1, rank]``.
    """
    if lattice.rank < 2:
        raise RankTooSmall("Cannot remove a coefficient from a rank %d lattice" % lattice.rank)
    if not 1 <= i <= lattice.rank:
        raise IndexOutOfRange("Index %d out of range for rank %d" % (i, lattice.rank))
    coeffs = lattice.coeffs
    return DiagonalLattice(coeffs[:i - 1] + coeffs[i:])


def insert(lattice, n):
    """
    Orthogonal sum ``L + <n>``.

    Raises:
        NonPositiveCoefficient: If ``n`` is below 1.
    """
    if n < 1:
        raise NonPositiveCoefficient("Coefficient %d is not positive" % n)
    return DiagonalLattice(lattice.coeffs + (n,))


def bad_primes(lattice):
    """
    Primes dividing ``2 dL``, ascending. Always contains 2.
    """
    return primefactors(2 * discriminant(lattice))
