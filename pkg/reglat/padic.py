import logging
from collections import namedtuple
from functools import lru_cache

import numpy as np
from sympy import legendre_symbol, multiplicity

from reglat.core import DiagonalLattice
from reglat.errors import (ZeroInput, StabilityNotReached, PrecisionUnstable, SearchSpaceTooLarge,
                           RankTooSmall)
from reglat.settings import STABILITY_CAP, SEARCH_STATE_CAP, SELF_CHECK_STATE_CAP

LOGGER = logging.getLogger("reglat.padic")

TWO_ADIC_UNITS = (1, 3, 5, 7)

PadicSquareClass = namedtuple("PadicSquareClass", ["p", "e", "u"])


@lru_cache(maxsize=None)
def nonresidue(p):
    """
    Smallest positive quadratic nonresidue modulo the odd prime ``p``.
    """
    for d in range(2, p):
        if legendre_symbol(d, p) == -1:
            return d
    raise ValueError("%d has no quadratic nonresidue" % p)


def unit_classes(p):
    """
    Representatives of the unit square classes of ``Z_p``.

    Returns:
        tuple of int: ``(1, 3, 5, 7)`` for p = 2, ``(1, nonresidue(p))`` otherwise.
    """
    return TWO_ADIC_UNITS if p == 2 else (1, nonresidue(p))


def valuation(p, n):
    if n == 0:
        raise ZeroInput("The valuation of 0 is infinite")
    return multiplicity(p, abs(n))


def square_class_of(p, n):
    """
    Locate ``n`` in the decomposition of ``Q_p`` into square classes ``p^e u (Z_p^x)^2``.

    Args:
        p (int): A prime.
        n (int): A nonzero integer, negative values allowed.

    Returns:
        PadicSquareClass: ``(p, e, u)`` with ``u`` one of :py:func:`unit_classes`.

    Raises:
        ZeroInput: If ``n`` is 0.
    """
    e = valuation(p, n)
    m = n // p ** e
    if p == 2:
        return PadicSquareClass(p, e, m % 8)
    u = 1 if legendre_symbol(m % p, p) == 1 else nonresidue(p)
    return PadicSquareClass(p, e, u)


def canonical_coefficient(p, a):
    cls = square_class_of(p, a)
    return p ** cls.e * cls.u


@lru_cache(maxsize=None)
def _square_moves(p, modulus):
    moves = {}
    for x in range(modulus):
        key = (x * x % modulus, x % p != 0)
        moves.setdefault(key, x)
    return tuple((square, is_unit, x) for (square, is_unit), x in sorted(moves.items()))


def _hensel_depth(p):
    return 3 if p == 2 else 1


def _unit_level_residues(units, rest, p, n):
    """
    Search residues of the unit coordinates mod ``p^d`` and of the remaining coordinates mod ``p^(d-1)`` with
    at least one unit coordinate a unit, such that the form takes the value ``n`` mod ``p^d``. The unit
    coordinate then lifts by Hensel's lemma.

    Returns:
        tuple of int: The residues, units first, or None.
    """
    depth = _hensel_depth(p)
    modulus = p ** depth
    unit_moves = _square_moves(p, modulus)
    rest_moves = _square_moves(p, modulus // p)
    layers = []
    states = {(0, False): None}
    for a in units:
        following = {}
        for residue, has_unit in states:
            for square, is_unit, x in unit_moves:
                key = ((residue + a * square) % modulus, has_unit or is_unit)
                if key not in following:
                    following[key] = ((residue, has_unit), x)
        layers.append(following)
        states = following
    for b in rest:
        following = {}
        for residue, has_unit in states:
            for square, _, y in rest_moves:
                key = ((residue + p * b * square) % modulus, has_unit)
                if key not in following:
                    following[key] = ((residue, has_unit), y)
        layers.append(following)
        states = following
    key = (n % modulus, True)
    if key not in states:
        return None
    residues = []
    for layer in reversed(layers):
        key, x = layer[key]
        residues.append(x)
    return tuple(reversed(residues))


def _split(coeffs, p):
    units = tuple(a for a in coeffs if a % p)
    rest = tuple(a // p for a in coeffs if a % p == 0)
    return units, rest


class LocalCertificate:
    """
    Accepting data of the valuation descent: after ``depth`` descent steps the lattice splits into unit
    coefficients ``units`` and the quotient ``rest`` of the others by ``p``, and ``residues`` solve the
    congruence for ``target`` with a unit coordinate.

    Args:
        p (int): The prime.
        depth (int): Number of descent steps taken.
        units (tuple of int): Unit coefficients at the accepting level.
        rest (tuple of int): Remaining coefficients divided by ``p`` at the accepting level.
        target (int): The integer left after dividing by ``p^depth``.
        residues (tuple of int): Coordinates, units first.
    """
    def __init__(self, p, depth, units, rest, target, residues):
        self.p = p
        self.depth = depth
        self.units = units
        self.rest = rest
        self.target = target
        self.residues = residues

    def verify(self, lattice, n):
        """
        Re-check the certificate against the lattice and integer it claims to certify.

        Returns:
            bool: True if replaying the descent reaches the stored level and the residues solve the
            congruence with a unit in a unit coordinate.
        """
        p = self.p
        coeffs = lattice.coeffs
        for _ in range(self.depth):
            if n % p:
                return False
            units, rest = _split(coeffs, p)
            coeffs = rest + tuple(a * p for a in units)
            n //= p
        if (self.units, self.rest) != _split(coeffs, p) or n != self.target:
            return False
        modulus = p ** _hensel_depth(p)
        unit_part = self.residues[:len(self.units)]
        rest_part = self.residues[len(self.units):]
        total = sum(a * x * x for a, x in zip(self.units, unit_part))
        total += sum(p * b * y * y for b, y in zip(self.rest, rest_part))
        return total % modulus == n % modulus and any(x % p for x in unit_part)

    def to_dict(self):
        return {
            "p": self.p,
            "depth": self.depth,
            "units": list(self.units),
            "rest": list(self.rest),
            "target": self.target,
            "residues": list(self.residues),
        }

    def __repr__(self):
        return "LocalCertificate(p=%d, depth=%d, residues=%s)" % (self.p, self.depth, self.residues)


def local_certificate(lattice, p, n):
    """
    Decide ``n -> L_p`` by valuation descent and return the accepting data.

    Args:
        lattice (DiagonalLattice): The lattice.
        p (int): A prime.
        n (int): A nonzero integer.

    Returns:
        LocalCertificate: The accepting level, or None if ``n`` is not represented by ``L_p``.

    Raises:
        ZeroInput: If ``n`` is 0.
    """
    if n == 0:
        raise ZeroInput("0 needs no certificate")
    coeffs = lattice.coeffs
    depth = 0
    while True:
        units, rest = _split(coeffs, p)
        if units:
            residues = _unit_level_residues(units, rest, p, n)
            if residues is not None:
                return LocalCertificate(p, depth, units, rest, n, residues)
        if n % p:
            return None
        coeffs = rest + tuple(a * p for a in units)
        n //= p
        depth += 1


def locally_represents(lattice, p, n):
    """
    Returns:
        bool: True if some vector of ``L_p`` has norm ``n``.
    """
    if n == 0:
        return True
    return local_certificate(lattice, p, n) is not None


class LocalRepSet:
    """
    ``Q(L_p)`` as a union of square classes. Classes with valuation below ``threshold + 2`` are tabulated,
    higher valuations repeat with period 2.

    Args:
        p (int): The prime.
        threshold (int): Valuation from which membership is 2-periodic.
        table (dict): Maps ``(e, u)`` to a membership bool for every ``e < threshold + 2``.
    """
    def __init__(self, p, threshold, table):
        self.p = p
        self.threshold = threshold
        self._table = dict(table)
        self.units = unit_classes(p)

    def reduce_exponent(self, e):
        if e >= self.threshold + 2:
            return self.threshold + (e - self.threshold) % 2
        return e

    def member(self, e, u):
        return self._table[(self.reduce_exponent(e), u)]

    def contains(self, n):
        if n == 0:
            return True
        cls = square_class_of(self.p, n)
        return self.member(cls.e, cls.u)

    __contains__ = contains

    def members_at(self, e):
        return frozenset(u for u in self.units if self.member(e, u))

    def lookup_array(self):
        """
        Returns:
            numpy.ndarray: Boolean array indexed by ``[e, unit index]`` for ``e < threshold + 2``.
        """
        table = np.zeros((self.threshold + 2, len(self.units)), dtype=bool)
        for (e, u), member in self._table.items():
            table[e, self.units.index(u)] = member
        return table

    def to_dict(self):
        return {
            "p": self.p,
            "E": self.threshold,
            "classes": [{"e": e, "u": u, "member": self._table[(e, u)]}
                        for e in range(self.threshold + 2) for u in self.units],
        }

    def __eq__(self, other):
        return isinstance(other, LocalRepSet) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return "LocalRepSet(p=%d, E=%d)" % (self.p, self.threshold)


def local_key(lattice, p):
    """
    Coefficients replaced by their canonical square class representatives. Lattices with equal keys are
    isometric over ``Z_p``.
    """
    return tuple(sorted(canonical_coefficient(p, a) for a in lattice.coeffs))


def local_rep_set(lattice, p):
    """
    Tabulate ``Q(L_p)``. The threshold starts at ``max ord_p(a_i) + 2 ord_p(2) + 1`` and is raised until
    membership agrees with membership two valuations higher on a window of width 4.

    Raises:
        StabilityNotReached: If the threshold passes the configured cap.
    """
    return _local_rep_set(local_key(lattice, p), p)


@lru_cache(maxsize=4096)
def _local_rep_set(key, p):
    lattice = DiagonalLattice(key)
    units = unit_classes(p)
    known = {}

    def member(e, u):
        if (e, u) not in known:
            known[(e, u)] = locally_represents(lattice, p, p ** e * u)
        return known[(e, u)]

    threshold = max(valuation(p, a) for a in key) + 2 * valuation(p, 2) + 1
    while threshold <= STABILITY_CAP:
        if all(member(e, u) == member(e + 2, u) for e in range(threshold, threshold + 5) for u in units):
            table = dict(((e, u), member(e, u)) for e in range(threshold + 2) for u in units)
            return LocalRepSet(p, threshold, table)
        LOGGER.debug("Local set of %r at %d not stable from %d" % (lattice, p, threshold))
        threshold += 1
    raise StabilityNotReached("Local set of %r at %d not stable below %d" % (lattice, p, STABILITY_CAP))


@lru_cache(maxsize=32)
def _square_class_arrays(p, bound):
    values = np.arange(bound + 1, dtype=np.int64)
    values[0] = 1
    exponents = np.zeros(bound + 1, dtype=np.int64)
    divisible = values % p == 0
    while divisible.any():
        values[divisible] //= p
        exponents[divisible] += 1
        divisible = values % p == 0
    if p == 2:
        unit_index = (values % 8) // 2
    else:
        squares = np.zeros(p, dtype=bool)
        squares[(np.arange(1, p) ** 2) % p] = True
        unit_index = np.where(squares[values % p], 0, 1)
    exponents.flags.writeable = False
    unit_index.flags.writeable = False
    return exponents, unit_index


def local_mask(lattice, p, bound):
    """
    Vectorized membership of ``[0, bound]`` in ``Q(L_p)``.

    Returns:
        numpy.ndarray: Boolean array of length ``bound + 1``; index 0 is always True.
    """
    rep = local_rep_set(lattice, p)
    exponents, unit_index = _square_class_arrays(p, bound)
    reduced = np.where(exponents >= rep.threshold + 2, rep.threshold + (exponents - rep.threshold) % 2, exponents)
    mask = rep.lookup_array()[reduced, unit_index]
    mask[0] = True
    return mask


def _gram_search(coeffs, p, b1, b2, precision, two_order, cap):
    off_modulus = p ** precision
    diag_modulus = p ** (precision + two_order)
    shape = (diag_modulus, off_modulus, diag_modulus)
    if diag_modulus * off_modulus * diag_modulus > cap:
        raise SearchSpaceTooLarge("Gram search at %d^%d needs %d states" % (p, precision, np.prod(shape)))
    x = np.arange(diag_modulus, dtype=np.int64)[:, None]
    y = np.arange(diag_modulus, dtype=np.int64)[None, :]
    state = np.zeros(shape)
    state[0, 0, 0] = 1.0
    for a in coeffs:
        a %= diag_modulus
        moves = np.zeros(shape)
        moves[a * x * x % diag_modulus, a * x * y % off_modulus, a * y * y % diag_modulus] = 1.0
        # Cyclic convolution over residue triples; a positive count marks a reachable triple.
        reached = np.fft.irfftn(np.fft.rfftn(state) * np.fft.rfftn(moves), s=shape)
        state = (reached > 0.5).astype(float)
    return bool(state[b1 % diag_modulus, 0, b2 % diag_modulus])


def _self_check_precisions(p, precision, two_order):
    for extra in (2, 1):
        k = precision + extra
        if p ** (3 * k + 2 * two_order) <= SELF_CHECK_STATE_CAP:
            yield k


def represents_binary_locally(lattice, p, b1, b2):
    """
    Decide whether ``<b1, b2>`` embeds in ``L_p``, i.e. whether orthogonal ``x, y`` with ``Q(x) = b1`` and
    ``Q(y) = b2`` exist, by a search over Gram matrices modulo a power of ``p`` large enough for the Newton
    lift to converge. The answer is recomputed two powers higher, or one when two does not fit the self-check
    state cap; a warning is logged when neither fits.

    Raises:
        ZeroInput: If ``b1`` or ``b2`` is 0.
        PrecisionUnstable: If the two precisions disagree.
        SearchSpaceTooLarge: If the primary search exceeds the state cap.
    """
    if b1 == 0 or b2 == 0:
        raise ZeroInput("Binary targets must be nonzero")
    two_order = valuation(p, 2)
    precision = 2 * max(valuation(p, b1), valuation(p, b2)) + two_order + 1
    found = _gram_search(lattice.coeffs, p, b1, b2, precision, two_order, SEARCH_STATE_CAP)
    for check in _self_check_precisions(p, precision, two_order):
        again = _gram_search(lattice.coeffs, p, b1, b2, check, two_order, SELF_CHECK_STATE_CAP)
        if again != found:
            raise PrecisionUnstable("<%d,%d> -> %r at %d changes from %d^%d to %d^%d"
                                    % (b1, b2, lattice, p, p, precision, p, check))
        return found
    LOGGER.warning("Precision of <%d,%d> -> %r at %d was not re-checked" % (b1, b2, lattice, p))
    return found


def jordan_blocks(lattice, p):
    """
    Returns:
        dict: Maps each valuation to the unit parts of the coefficients with that valuation.
    """
    blocks = {}
    for a in lattice.coeffs:
        e = valuation(p, a)
        blocks.setdefault(e, []).append(a // p ** e)
    return blocks


def _is_anisotropic_quaternary(lattice, p):
    if lattice.rank != 4:
        return False
    blocks = jordan_blocks(lattice, p)
    if sorted(blocks) != [0, 1] or any(len(units) != 2 for units in blocks.values()):
        return False
    expected = legendre_symbol(-nonresidue(p) % p, p)
    return all(legendre_symbol(units[0] * units[1] % p, p) == expected for units in blocks.values())


def is_p_stable(lattice, p):
    """
    ``L`` is 2-stable when ``<1,3>`` or ``<1,7>`` embeds in ``L_2``; for odd ``p`` when ``<1,-1>`` embeds in
    ``L_p`` or ``L_p`` is isometric to ``<1, -D, p, -pD>`` with ``D`` a nonresidue.

    Raises:
        RankTooSmall: Below rank 4.
    """
    if lattice.rank < 4:
        raise RankTooSmall("Stability needs rank 4, got %d" % lattice.rank)
    if p == 2:
        return represents_binary_locally(lattice, 2, 1, 3) or represents_binary_locally(lattice, 2, 1, 7)
    if all(a % p for a in lattice.coeffs):
        return True
    return represents_binary_locally(lattice, p, 1, -1) or _is_anisotropic_quaternary(lattice, p)


TWO_ADIC_LOW_SETS = (frozenset(), frozenset((1, 5)), frozenset((3, 7)), frozenset(TWO_ADIC_UNITS))
TWO_ADIC_MID_SETS = (frozenset(), frozenset(TWO_ADIC_UNITS))


def _covers_from(rep, e):
    return all(rep.member(f, u) for f in range(e, max(e, rep.threshold) + 2) for u in rep.units)


def locally_redundant(lattice, p, gamma):
    """
    Whether ``Q(L_p + <gamma>) = Q(L_p)``.

    For odd ``p`` this holds iff ``gamma Z_p`` lies in ``Q(L_p)``. For ``p = 2`` the unit classes represented
    at valuation ``ord(gamma) - 2`` must be none, ``{1,5}``, ``{3,7}`` or all, those at ``ord(gamma) - 1``
    none or all, and ``gamma Z_2`` must lie in ``Q(L_2)``. Conditions at negative valuations hold trivially.

    Args:
        lattice (DiagonalLattice): The lattice.
        p (int): A prime.
        gamma (int): A positive integer.

    Returns:
        bool: True if inserting ``gamma`` leaves ``Q(L_p)`` unchanged.
    """
    rep = local_rep_set(lattice, p)
    t = valuation(p, gamma)
    if p != 2:
        return _covers_from(rep, t)
    if t >= 2 and rep.members_at(t - 2) not in TWO_ADIC_LOW_SETS:
        return False
    if t >= 1 and rep.members_at(t - 1) not in TWO_ADIC_MID_SETS:
        return False
    return _covers_from(rep, t)
