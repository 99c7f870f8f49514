import logging
import random
import time
from math import gcd
from functools import reduce

import numpy as np
from sympy import primerange

import reglat
from reglat import tables
from reglat.classify import (build_ternary_candidates, congruence_values, scan_quaternaries, search_rank5,
                             residue_prime_sets, forced_basis_check, UnitClassTriple)
from reglat.core import make_lattice
from reglat.globalrep import (rep_sieve, genus_mask, regular_verdict, genus_gap, seven_adic_gap,
                              vectors_with_norm, get_sieve_cache)
from reglat.padic import local_rep_set, locally_represents
from reglat.transforms import is_redundant, watson_case_for, watson_transform, LOCAL, EMPIRICAL
from reglat.workers import map_ordered

LOGGER = logging.getLogger("reglat.report")

PASS = "PASS"
FAIL = "FAIL"
ERROR = "ERROR"

LARGE_BOUND = 2 * 10 ** 5

# Lattices meeting a Watson case precondition, with their expected primitive transforms.
WATSON_SAMPLES = (
    ((1, 1, 1, 4), 2, (1, 1, 1, 1)),
    ((1, 1, 1, 8), 2, (1, 1, 1, 2)),
    ((1, 1, 4, 4), 2, (1, 1, 1, 1)),
    ((1, 2, 2, 4), 2, (1, 1, 2, 2)),
    ((1, 2, 4, 4), 2, (1, 2, 2, 2)),
    ((1, 2, 8, 16), 2, (1, 2, 4, 8)),
    ((1, 3, 9, 27), 3, (1, 3, 3, 9)),
    ((1, 1, 3, 3), 3, (1, 1, 3, 3)),
    ((1, 1, 12, 36), 3, (3, 3, 4, 12)),
    ((1, 5, 5, 10), 5, (1, 1, 2, 5)),
)


def redundancy_lattice(r):
    return make_lattice((1, 48, 144, 16 * 9 ** r))


def expected_local_member(p, r, e, u):
    """
    Membership in ``Q(L_p)`` for ``L = <1,48,144,2^4 3^(2r)>``: at 2 the unit squares, ``4`` and ``20`` times
    unit squares and ``16 Z_2``; at 3 everything but ``2`` and ``2 3^(2i-1)`` times unit squares for
    ``i <= r``; everything at larger primes.
    """
    if p == 2:
        if e == 0:
            return u == 1
        if e == 2:
            return u in (1, 5)
        return e >= 4
    if p == 3:
        return not (u == 2 and (e == 0 or (e % 2 == 1 and e <= 2 * r - 1)))
    return True


def check_genus_gaps(bound):
    expected = dict((k, v) for k, v in tables.GENUS_GAPS.items())
    actual = dict((k, genus_gap(make_lattice(k), min(bound, 10 ** 4))) for k in tables.GENUS_GAPS)
    return expected == actual, expected, actual


def check_seven_adic_gaps(bound):
    expected = dict(tables.SEVEN_ADIC_GAPS)
    actual = dict((k, seven_adic_gap(make_lattice(k), min(bound, 10 ** 4))) for k in tables.SEVEN_ADIC_GAPS)
    return expected == actual, expected, actual


def check_ternaries(bound):
    expected = sorted(tables.TERNARY_CANDIDATES)
    actual = [candidate.coeffs for candidate in build_ternary_candidates()]
    return expected == actual, {"count": len(expected)}, {"count": len(actual),
                                                          "missing": sorted(set(expected) - set(actual)),
                                                          "extra": sorted(set(actual) - set(expected))}


def check_congruence_values(bound):
    expected = [1, 49, 121, 169, 241, 289]
    actual = congruence_values(UnitClassTriple(1, 1, 1), 6)
    return expected == actual, expected, actual


def check_local_sets(bound):
    mismatches = []
    for r in (1, 2):
        lattice = redundancy_lattice(r)
        for p in (2, 3, 5):
            rep = local_rep_set(lattice, p)
            for e in range(12):
                for u in rep.units:
                    if rep.member(e, u) != expected_local_member(p, r, e, u):
                        mismatches.append([r, p, e, u])
        divisor = 16 * 9 ** r
        sieve = rep_sieve(lattice, max(bound, 10 ** 5))
        for n in range(1, 2001):
            local = is_redundant(lattice, n, mode=LOCAL)
            if local != (n % divisor == 0):
                mismatches.append([r, "local", n])
            if local != (sieve.extend(n) == sieve):
                mismatches.append([r, "empirical", n])
    return not mismatches, [], mismatches


def check_quaternary_soundness(bound):
    refuted = []
    for coeffs in tables.sample_quaternaries((1, 2)):
        verdict = regular_verdict(make_lattice(coeffs), max(bound, LARGE_BOUND))
        if not verdict.confirmed:
            refuted.append([list(coeffs), verdict.n])
    return not refuted, [], refuted


def check_quaternary_completeness(bound, jobs=1):
    records = scan_quaternaries(100, max(bound, LARGE_BOUND), jobs)
    actual = set(record.lattice.coeffs for record in records if record.confirmed)
    expected = set(tables.expand_quaternaries(100))
    return actual == expected, {"count": len(expected)}, {"count": len(actual),
                                                          "missing": sorted(expected - actual),
                                                          "extra": sorted(actual - expected)}


def check_doubling_refutations(bound):
    actual, expected = {}, {}
    passed = True
    for r in (1, 2, 3):
        lattice, witness_bound = tables.doubling_lattice(r)
        verdict = regular_verdict(lattice, min(bound, 10 ** 4))
        expected[str(lattice)] = "refuted <= %d" % witness_bound
        actual[str(lattice)] = str(verdict)
        passed = passed and not verdict.confirmed and verdict.n <= witness_bound
    return passed, expected, actual


def _two_three_six_complement(bound):
    n = np.arange(bound + 1)
    expected = n % 3 == 1
    m = n.copy()
    m[0] = 1
    while True:
        divisible = (m % 4 == 0)
        if not divisible.any():
            break
        m[divisible] //= 4
    expected |= m % 8 == 7
    expected[0] = False
    return expected


def check_two_three_six_complement(bound):
    sieve = rep_sieve(make_lattice((2, 3, 6)), bound)
    actual = ~sieve.bits
    expected = _two_three_six_complement(bound)
    differences = [int(n) for n in np.flatnonzero(actual != expected)[:20]]
    return not differences, [], differences


def check_class_number_one(bound):
    lattice = make_lattice((2, 3, 6))
    differences = np.flatnonzero(genus_mask(lattice, bound) != rep_sieve(lattice, bound).bits)
    return len(differences) == 0, [], [int(n) for n in differences[:20]]


def check_quinaries(bound):
    expected = {"1,2,5,5": [5, 11, 12, 13, 14, 15], "1,5,10,25": [25, 55, 60, 65, 70, 75]}
    actual = {}
    for prefix, top in (((1, 2, 5, 5), 15), ((1, 5, 10, 25), 75)):
        records = search_rank5(prefix, top, bound)
        actual[",".join(map(str, prefix))] = [r.lattice.coeffs[4] for r in records if r.confirmed and r.minimal]
    same = rep_sieve(make_lattice((1, 2, 5, 10)), bound) == rep_sieve(make_lattice((1, 2, 5, 5, 5)), bound)
    actual["non-new"] = same
    expected["non-new"] = True
    return expected == actual, expected, actual


def check_forced_basis(bound):
    lattice = make_lattice((1, 2, 5, 5, 11))
    expected = {"forced": True, "counts": [2, 2, 4, 4]}
    actual = {"forced": forced_basis_check(lattice, [1, 2, 5, 10, 15]),
              "counts": [len(vectors_with_norm(lattice, n)) for n in (1, 2, 5, 10)]}
    return expected == actual, expected, actual


def check_prime_sets(bound):
    odd_primes = list(primerange(3, 84))
    expected = {"few-nonresidues": [3, 5, 11], "no-residues": [3, 5, 7], "nonresidues-11": [7]}
    actual = {
        "few-nonresidues": [p for p in odd_primes if len(residue_prime_sets(p).odd_minus) <= 1],
        "no-residues": [p for p in odd_primes if not residue_prime_sets(p).odd_plus],
        "nonresidues-11": sorted(residue_prime_sets(11).odd_minus),
    }
    return expected == actual, expected, actual


def random_primitive_lattices(count, seed=20240517, ranks=(3, 5), largest=30):
    generator = random.Random(seed)
    lattices = []
    while len(lattices) < count:
        coeffs = [generator.randint(1, largest) for _ in range(generator.randint(*ranks))]
        if reduce(gcd, coeffs) == 1:
            lattices.append(make_lattice(coeffs))
    return lattices


def check_local_global_soundness(bound):
    violations = []
    primes = list(primerange(2, 51))
    for lattice in random_primitive_lattices(50):
        members = rep_sieve(lattice, 300).members()[1:]
        for p in primes:
            rep = local_rep_set(lattice, p)
            violations.extend([str(lattice), p, n] for n in members if not rep.contains(n))
        for n in members[:10]:
            if not locally_represents(lattice, 2, n):
                violations.append([str(lattice), 2, n])
    return not violations, [], violations[:20]


def check_watson(bound):
    failures = []
    for coeffs, p, transformed in WATSON_SAMPLES:
        lattice = make_lattice(coeffs)
        case = watson_case_for(lattice, p)
        result = watson_transform(lattice, case) if case else None
        if (result is None or result.coeffs != transformed or not result.is_primitive() or
                not regular_verdict(result, bound).confirmed):
            failures.append([list(coeffs), p, str(result)])
    return not failures, [], failures


def check_batches(bound):
    indices = [i for _, batch in tables.CANDIDATE_BATCHES for i in batch]
    sizes = [len(batch) for _, batch in tables.CANDIDATE_BATCHES]
    passed = sizes == [28, 27, 4, 2, 39, 3] and sorted(indices) == list(range(1, 104))
    return passed, [28, 27, 4, 2, 39, 3], sizes


CHECKS = (
    ("genus-gaps", check_genus_gaps),
    ("seven-adic-gaps", check_seven_adic_gaps),
    ("ternaries", check_ternaries),
    ("congruence-values", check_congruence_values),
    ("local-sets", check_local_sets),
    ("quaternary-soundness", check_quaternary_soundness),
    ("quaternary-completeness", check_quaternary_completeness),
    ("doubling-refutations", check_doubling_refutations),
    ("two-three-six-complement", check_two_three_six_complement),
    ("class-number-one", check_class_number_one),
    ("quinaries", check_quinaries),
    ("forced-basis", check_forced_basis),
    ("prime-sets", check_prime_sets),
    ("local-global-soundness", check_local_global_soundness),
    ("watson", check_watson),
    ("batches", check_batches),
)

CHECK_NAMES = tuple(name for name, _ in CHECKS)

# Numbered aliases, one per published fixture, in the numbering of tables.FIXTURE_NAMES.
FIXTURE_CHECKS = {
    "table1": ("ternaries",),
    "table2": ("genus-gaps",),
    "table3": ("seven-adic-gaps",),
    "table4": ("quaternary-soundness", "quaternary-completeness"),
    "table5": ("batches",),
    "table6": ("quinaries",),
}


def expand_check_names(names):
    """
    Resolve numbered fixture aliases into check names.

    Raises:
        KeyError: If a name is neither a check nor an alias.
    """
    expanded = []
    for name in names:
        for resolved in FIXTURE_CHECKS.get(name, (name,)):
            if resolved not in CHECK_NAMES:
                raise KeyError("Unknown checks: %s" % name)
            if resolved not in expanded:
                expanded.append(resolved)
    return expanded


def _jsonable(value):
    if isinstance(value, dict):
        return dict((str(k) if not isinstance(k, str) else k, _jsonable(v)) for k, v in value.items())
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    if isinstance(value, np.integer):
        return int(value)
    return str(value)


def run_check(name, bound):
    """
    Run one named check and time it.

    Returns:
        dict: ``name``, ``status``, ``expected``, ``actual``, ``runtime`` and, unless passed, ``repro``.
    """
    check = dict(CHECKS)[name]
    start = time.time()
    try:
        passed, expected, actual = check(bound)
        status = PASS if passed else FAIL
    except Exception as e:
        LOGGER.debug("Check %s raised" % name, exc_info=True)
        status, expected, actual = ERROR, None, "%s: %s" % (type(e).__name__, e)
    result = {
        "name": name,
        "status": status,
        "expected": _jsonable(expected),
        "actual": _jsonable(actual),
        "runtime": round(time.time() - start, 3),
    }
    if status != PASS:
        result["repro"] = "reglat verify --only %s --bound %d" % (name, bound)
    LOGGER.info("%s %s in %.1fs" % (name, status, result["runtime"]))
    return result


class VerificationReport:
    """
    Results of a verification run.

    Args:
        bound (int): The default sieve bound of the run.
        results (list of dict): Per check results from :py:func:`run_check`.
        cache_stats (dict): Statistics of the sieve cache of the coordinating process.
    """
    def __init__(self, bound, results, cache_stats):
        self.bound = bound
        self.results = results
        self.cache_stats = cache_stats

    @property
    def passed(self):
        return all(result["status"] == PASS for result in self.results)

    def to_dict(self):
        return {
            "version": reglat.__version__,
            "bound": self.bound,
            "passed": self.passed,
            "checks": self.results,
            "cache": self.cache_stats,
        }


def run_verification(bound, only=None, jobs=1):
    """
    Run the named checks, all of them by default, on up to ``jobs`` worker processes.

    Returns:
        VerificationReport: Results in the order of :py:data:`CHECK_NAMES`.
    """
    selected = set(expand_check_names(sorted(only))) if only else set(CHECK_NAMES)
    names = [name for name in CHECK_NAMES if name in selected]
    results = map_ordered(run_check, [(name, bound) for name in names], jobs)
    return VerificationReport(bound, results, get_sieve_cache().stats())
