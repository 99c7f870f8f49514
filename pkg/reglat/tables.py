"""
Published classification results as machine readable fixtures. The verification suite compares computed
results against these, so a transcription error surfaces as an explicit difference.
"""
from collections import namedtuple

from reglat.core import make_lattice

# Candidate ternary sections, in published order. Irregular ternaries are listed in IRREGULAR_TERNARIES.
TERNARY_CANDIDATES = (
    (1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 1, 4), (1, 1, 5), (1, 1, 6), (1, 1, 8), (1, 1, 9), (1, 1, 12),
    (1, 1, 16), (1, 1, 24),
    (1, 2, 2), (1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 2, 8), (1, 2, 10), (1, 2, 16), (1, 2, 32),
    (1, 3, 3), (1, 3, 4), (1, 3, 6), (1, 3, 9), (1, 3, 10), (1, 3, 12), (1, 3, 18), (1, 3, 30), (1, 3, 36),
    (1, 4, 4), (1, 4, 6), (1, 4, 8), (1, 4, 12), (1, 4, 16), (1, 4, 20), (1, 4, 24), (1, 4, 36),
    (1, 5, 5), (1, 5, 8), (1, 5, 10), (1, 5, 25), (1, 5, 40),
    (1, 6, 6), (1, 6, 9), (1, 6, 16), (1, 6, 18), (1, 6, 24),
    (1, 8, 8), (1, 8, 16), (1, 8, 24), (1, 8, 32), (1, 8, 40), (1, 8, 64),
    (1, 9, 9), (1, 9, 12), (1, 9, 24),
    (1, 10, 30), (1, 12, 12), (1, 12, 24), (1, 12, 36),
    (1, 16, 16), (1, 16, 24), (1, 16, 32), (1, 16, 48), (1, 16, 144),
    (1, 24, 24), (1, 24, 72), (1, 40, 120), (1, 48, 144),
    (2, 2, 3), (2, 3, 3), (2, 3, 6), (2, 3, 8), (2, 3, 9), (2, 3, 12), (2, 3, 18), (2, 3, 48),
    (2, 5, 6), (2, 5, 10), (2, 5, 15), (2, 6, 9), (2, 6, 15),
    (3, 3, 4), (3, 3, 7), (3, 3, 8), (3, 4, 4), (3, 4, 8), (3, 4, 12), (3, 4, 36),
    (3, 8, 8), (3, 8, 12), (3, 8, 24), (3, 8, 48), (3, 8, 72), (3, 10, 30), (3, 16, 48), (3, 40, 120),
    (5, 6, 9), (5, 6, 15), (5, 8, 24), (5, 8, 40), (8, 9, 24), (8, 15, 24),
)

IRREGULAR_TERNARIES = ((1, 4, 20), (1, 12, 24), (1, 16, 32), (1, 16, 144), (3, 4, 8), (5, 6, 9))

# Regular ternary section with an obstruction at 7 only.
SEVEN_ADIC_TERNARY = (3, 3, 7)

# Least integer represented by the genus but not by the ternary.
GENUS_GAPS = {
    (1, 4, 20): 77,
    (1, 12, 24): 69,
    (1, 16, 32): 161,
    (1, 16, 144): 473,
    (3, 4, 8): 23,
    (5, 6, 9): 17,
}

# Least integer represented at every prime but 7, and not at 7.
SEVEN_ADIC_GAPS = {
    (1, 1, 21): 7,
    (1, 9, 21): 7,
    (1, 21, 21): 3,
    (3, 3, 7): 21,
    (3, 7, 7): 1,
    (3, 7, 63): 1,
}

# A family value c * base^(slope * r + offset) for r = 1, 2, ...
Family = namedtuple("Family", ["factor", "base", "slope", "offset"])
QuaternaryRow = namedtuple("QuaternaryRow", ["ternary", "families", "constants"])


def _f(factor, base, slope, offset):
    return Family(factor, base, slope, offset)


QUATERNARY_FAMILIES = (
    QuaternaryRow((1, 1, 1), (_f(1, 2, 1, -1), _f(3, 2, 2, -1)), (3, 5, 7)),
    QuaternaryRow((1, 1, 2), (_f(1, 2, 1, 0), _f(3, 2, 2, -2)), (5, 6, 7, 9, 10, 11, 13, 14)),
    QuaternaryRow((1, 1, 3), (_f(1, 3, 1, 0), _f(2, 3, 1, 0), _f(4, 3, 2, -2), _f(5, 3, 2, -2)), ()),
    QuaternaryRow((1, 1, 4), (_f(1, 2, 1, 1), _f(3, 2, 2, 1)), (12, 20, 28)),
    QuaternaryRow((1, 1, 5), (_f(1, 2, 2, 1),), ()),
    QuaternaryRow((1, 1, 6), (_f(1, 3, 1, 1), _f(2, 3, 2, 0)), ()),
    QuaternaryRow((1, 1, 8), (_f(1, 2, 1, 2), _f(3, 2, 2, 2)), (24, 40, 56)),
    QuaternaryRow((1, 1, 12), (_f(4, 3, 2, 0),), ()),
    QuaternaryRow((1, 1, 16), (_f(1, 2, 1, 3), _f(3, 2, 2, 3)), (48, 80, 112)),
    QuaternaryRow((1, 1, 24), (_f(8, 3, 2, 0),), ()),
    QuaternaryRow((1, 2, 2), (_f(1, 2, 1, 0), _f(3, 2, 2, -1)), (3, 5, 7)),
    QuaternaryRow((1, 2, 3), (_f(1, 2, 1, 1),), (3, 5, 6, 7, 9, 10)),
    QuaternaryRow((1, 2, 4), (_f(1, 2, 1, 1), _f(3, 2, 2, 0)), (5, 6, 7, 9, 10, 11, 13, 14)),
    QuaternaryRow((1, 2, 5), (_f(1, 5, 2, 0), _f(2, 5, 1, 0), _f(4, 5, 2, 0), _f(8, 5, 2, -2),
                              _f(3, 5, 2, 0), _f(9, 5, 2, -2), _f(7, 5, 2, -2), _f(6, 5, 2, -2)), ()),
    QuaternaryRow((1, 2, 6), (_f(1, 2, 1, 2),), ()),
    QuaternaryRow((1, 2, 8), (_f(1, 2, 1, 2), _f(3, 2, 2, 1)), ()),
    QuaternaryRow((1, 2, 16), (_f(1, 2, 1, 3), _f(3, 2, 2, 2)), ()),
    QuaternaryRow((1, 2, 32), (_f(1, 2, 1, 4), _f(3, 2, 2, 3)), ()),
    QuaternaryRow((1, 3, 3), (_f(1, 3, 1, 0), _f(2, 3, 1, 0), _f(4, 3, 2, -1), _f(5, 3, 2, -1)), ()),
    QuaternaryRow((1, 3, 4), (_f(4, 3, 1, -1), _f(8, 3, 2, -2)), ()),
    QuaternaryRow((1, 3, 6), (_f(3, 2, 1, 0),), (9, 15, 18, 21, 27, 30)),
    QuaternaryRow((1, 3, 9), (_f(1, 3, 1, 1), _f(2, 3, 1, 1), _f(4, 3, 2, 0), _f(5, 3, 2, 0)), ()),
    QuaternaryRow((1, 3, 12), (_f(4, 3, 1, 0), _f(8, 3, 2, -1)), ()),
    QuaternaryRow((1, 3, 36), (_f(4, 3, 1, 1), _f(8, 3, 2, 0)), ()),
    QuaternaryRow((1, 4, 4), (_f(1, 2, 1, 1), _f(3, 2, 2, 1)), (12, 20, 28)),
    QuaternaryRow((1, 4, 8), (_f(1, 2, 1, 2), _f(3, 2, 2, 0)), (20, 24, 28, 36, 40, 44, 52, 56)),
    QuaternaryRow((1, 4, 12), (_f(4, 3, 1, 0), _f(8, 3, 1, 0), _f(16, 3, 2, -2), _f(20, 3, 2, -2)), ()),
    QuaternaryRow((1, 4, 16), (_f(1, 2, 1, 3), _f(3, 2, 2, 3)), (48, 80, 112)),
    QuaternaryRow((1, 4, 20), (), (32,)),
    QuaternaryRow((1, 4, 24), (_f(4, 3, 1, 1), _f(8, 3, 2, 0)), ()),
    QuaternaryRow((1, 5, 5), (_f(5, 2, 2, -1),), (5, 15)),
    QuaternaryRow((1, 5, 8), (_f(8, 5, 1, -1), _f(16, 5, 2, -2), _f(32, 5, 2, -2), _f(24, 5, 2, -2)), ()),
    QuaternaryRow((1, 5, 10), (_f(1, 5, 2, 1), _f(2, 5, 1, 0), _f(4, 5, 2, -1), _f(8, 5, 2, -1),
                               _f(3, 5, 2, -1), _f(9, 5, 2, -1), _f(7, 5, 2, -1), _f(6, 5, 2, -1)), ()),
    QuaternaryRow((1, 5, 40), (_f(8, 5, 1, 0), _f(16, 5, 2, -1), _f(32, 5, 2, -1), _f(24, 5, 2, -1)), ()),
    QuaternaryRow((1, 6, 9), (_f(1, 3, 1, 1), _f(2, 3, 2, 0)), ()),
    QuaternaryRow((1, 8, 8), (_f(1, 2, 1, 2), _f(3, 2, 2, 1)), ()),
    QuaternaryRow((1, 8, 16), (_f(1, 2, 1, 3), _f(3, 2, 2, 2)), (24, 40, 56)),
    QuaternaryRow((1, 8, 24), (_f(1, 2, 1, 4),), ()),
    QuaternaryRow((1, 8, 32), (_f(1, 2, 1, 4), _f(3, 2, 2, 3)), ()),
    QuaternaryRow((1, 8, 64), (_f(1, 2, 1, 5), _f(3, 2, 2, 4)), ()),
    QuaternaryRow((1, 9, 12), (_f(4, 3, 2, 0),), ()),
    QuaternaryRow((1, 9, 24), (_f(8, 3, 2, 0),), ()),
    QuaternaryRow((1, 12, 12), (_f(4, 3, 1, 0), _f(8, 3, 2, -1)), ()),
    QuaternaryRow((1, 12, 24), (), (24, 36, 48, 60)),
    QuaternaryRow((1, 12, 36), (_f(4, 3, 1, 1), _f(8, 3, 1, 1), _f(16, 3, 2, 0), _f(20, 3, 2, 0)), ()),
    QuaternaryRow((1, 16, 16), (_f(1, 2, 1, 3), _f(3, 2, 2, 3)), (48, 80, 112)),
    QuaternaryRow((1, 16, 32), (), (32, 48, 64, 80, 96, 112, 128, 144, 160)),
    QuaternaryRow((1, 16, 48), (_f(16, 3, 2, 0), _f(32, 3, 2, 0)), ()),
    QuaternaryRow((1, 48, 144), (_f(16, 3, 2, 0), _f(32, 3, 2, 0)), ()),
    QuaternaryRow((2, 3, 3), (_f(1, 3, 1, 0), _f(2, 3, 2, -1)), ()),
    QuaternaryRow((2, 3, 6), (_f(3, 2, 1, 0),), (9, 15)),
    QuaternaryRow((2, 3, 9), (), (9, 18)),
    QuaternaryRow((3, 3, 4), (_f(4, 3, 2, -1),), ()),
    QuaternaryRow((3, 3, 8), (_f(8, 3, 2, -1),), ()),
    QuaternaryRow((3, 4, 4), (_f(4, 3, 1, -1), _f(8, 3, 2, -2)), ()),
    QuaternaryRow((3, 4, 8), (), (8, 12, 16, 20)),
    QuaternaryRow((3, 4, 12), (_f(4, 3, 1, 0), _f(8, 3, 1, 0), _f(16, 3, 2, -1), _f(20, 3, 2, -1)), ()),
    QuaternaryRow((3, 4, 36), (_f(4, 3, 1, 1), _f(8, 3, 2, 0)), ()),
    QuaternaryRow((3, 8, 12), (_f(4, 3, 1, 0), _f(8, 3, 2, -1)), ()),
    QuaternaryRow((3, 8, 24), (_f(3, 2, 1, 2),), ()),
    QuaternaryRow((3, 16, 48), (_f(16, 3, 2, -1), _f(32, 3, 2, -1)), ()),
)

# Indices into TERNARY_CANDIDATES (1-based) handled together by the quaternary search.
CANDIDATE_BATCHES = (
    ("1", (1, 2, 3, 4, 5, 6, 7, 10, 12, 13, 14, 16, 17, 19, 20, 21, 24, 30, 32, 34, 44, 48, 49, 50, 51,
           53, 61, 71)),
    ("2", (9, 11, 22, 23, 26, 29, 33, 36, 38, 39, 42, 55, 56, 58, 60, 64, 69, 72, 74, 83, 85, 86, 88, 89, 91,
           92, 96)),
    ("3", (35, 59, 63, 87)),
    ("4", (15, 40)),
    ("2'", (8, 18, 25, 27, 28, 31, 37, 41, 43, 45, 46, 47, 52, 54, 57, 62, 66, 67, 68, 70, 73, 75, 76, 77, 78,
            79, 80, 81, 82, 90, 93, 94, 95, 97, 99, 100, 101, 102, 103)),
    ("3'", (65, 84, 98)),
)

QUINARY_MULTIPLIERS = (5, 11, 12, 13, 14, 15)


def family_value(family, r):
    exponent = family.slope * r + family.offset
    if exponent < 0:
        return None
    return family.factor * family.base ** exponent


def family_label(family):
    return "%d*%d^(%dr%+d)" % (family.factor, family.base, family.slope, family.offset)


def row_values(row, parameters=(1, 2)):
    """
    Instantiate a row at the given parameter values, constants included.

    Returns:
        list of int: Ascending fourth coefficients that are at least the row's third coefficient.
    """
    values = set(row.constants)
    for family in row.families:
        for r in parameters:
            value = family_value(family, r)
            if value is not None:
                values.add(value)
    return sorted(v for v in values if v >= row.ternary[2])


def expand_quaternaries(a4_max):
    """
    Every regular diagonal quaternary with fourth coefficient at most ``a4_max``.

    Returns:
        list of tuple: Ascending coefficient tuples, sorted.
    """
    found = set()
    for row in QUATERNARY_FAMILIES:
        for a4 in row.constants:
            if row.ternary[2] <= a4 <= a4_max:
                found.add(row.ternary + (a4,))
        for family in row.families:
            r = 1
            while True:
                value = family_value(family, r)
                if value is not None and value > a4_max:
                    break
                if value is not None and value >= row.ternary[2]:
                    found.add(row.ternary + (value,))
                r += 1
    return sorted(found)


def sample_quaternaries(parameters=(1, 2)):
    """
    Returns:
        list of tuple: Every row instantiated at ``parameters``, constants included.
    """
    return sorted(set(row.ternary + (a4,) for row in QUATERNARY_FAMILIES for a4 in row_values(row, parameters)))


def quaternary_note(coeffs):
    """
    Name the published family a quaternary belongs to.

    Returns:
        str: A label such as ``"1,1,1: 1*2^(1r-1) r=3"``, or None.
    """
    coeffs = tuple(coeffs)
    ternary, a4 = coeffs[:3], coeffs[3]
    for row in QUATERNARY_FAMILIES:
        if row.ternary != ternary:
            continue
        if a4 in row.constants:
            return "%s: constant %d" % (",".join(map(str, ternary)), a4)
        for family in row.families:
            r = 1
            while True:
                value = family_value(family, r)
                if value is not None and value > a4:
                    break
                if value == a4:
                    return "%s: %s r=%d" % (",".join(map(str, ternary)), family_label(family), r)
                r += 1
    return None


def quinary_lattices(r):
    """
    The minimal regular diagonal quinaries of level ``r``: ``<1,2,5,5^(2r-1),5^(2r-2)s>`` and
    ``<1,5,10,5^(2r),5^(2r-1)s>``.
    """
    lattices = []
    for s in QUINARY_MULTIPLIERS:
        lattices.append(make_lattice((1, 2, 5, 5 ** (2 * r - 1), 5 ** (2 * r - 2) * s)))
    for s in QUINARY_MULTIPLIERS:
        lattices.append(make_lattice((1, 5, 10, 5 ** (2 * r), 5 ** (2 * r - 1) * s)))
    return lattices


def quinary_note(coeffs, levels=(1, 2, 3)):
    """
    Returns:
        str: The minimal quinary family and level ``coeffs`` belongs to, or None.
    """
    lattice = make_lattice(coeffs)
    for r in levels:
        for index, candidate in enumerate(quinary_lattices(r)):
            if candidate == lattice:
                s = QUINARY_MULTIPLIERS[index % len(QUINARY_MULTIPLIERS)]
                return "%s: r=%d s=%d" % (",".join(map(str, lattice.coeffs[:3])), r, s)
    return None


def doubling_lattice(r):
    """
    ``<2,3,9,2^(r+1) 9>``, irregular for every ``r``.

    Returns:
        tuple: The lattice and the bound ``13 * 2^s``, ``s`` the greatest odd integer at most ``r``, below
        which a refutation witness exists.
    """
    s = r if r % 2 else r - 1
    return make_lattice((2, 3, 9, 2 ** (r + 1) * 9)), 13 * 2 ** s


def two_three_six_regular_fourths(a4_max):
    """
    Fourth coefficients making ``<2,3,6,a4>`` regular, up to ``a4_max``: 9, 15 and ``2^(2r) 3``.
    """
    values = set(v for v in (9, 15) if v <= a4_max)
    r = 1
    while 3 * 4 ** r <= a4_max:
        values.add(3 * 4 ** r)
        r += 1
    return sorted(values)


def to_json(which):
    """
    Returns:
        object: The named fixture as JSON compatible data.
    """
    if which == "ternaries":
        return [{"index": i, "ternary": list(t), "irregular": t in IRREGULAR_TERNARIES}
                for i, t in enumerate(TERNARY_CANDIDATES, start=1)]
    if which == "genus-gaps":
        return [{"ternary": list(t), "gap": v} for t, v in sorted(GENUS_GAPS.items())]
    if which == "seven-adic-gaps":
        return [{"ternary": list(t), "gap": v} for t, v in sorted(SEVEN_ADIC_GAPS.items())]
    if which == "quaternaries":
        return [{"ternary": list(row.ternary), "families": [family_label(f) for f in row.families],
                 "constants": list(row.constants)} for row in QUATERNARY_FAMILIES]
    if which == "batches":
        return [{"batch": name, "size": len(indices), "indices": list(indices)}
                for name, indices in CANDIDATE_BATCHES]
    if which == "quinaries":
        return [{"ternary": [1, 2, 5], "a4": "5^(2r-1)", "a5": "5^(2r-2)s", "s": list(QUINARY_MULTIPLIERS)},
                {"ternary": [1, 5, 10], "a4": "5^(2r)", "a5": "5^(2r-1)s", "s": list(QUINARY_MULTIPLIERS)}]
    raise KeyError(which)


FIXTURE_NAMES = ("ternaries", "genus-gaps", "seven-adic-gaps", "quaternaries", "batches", "quinaries")
