import pickle

import numpy as np
import pytest

from reglat import tables
from reglat.core import make_lattice
from reglat.errors import BoundTooLarge, RankTooSmall, NotPrimitive
from reglat.globalrep import (rep_sieve, represents, genus_represents, genus_mask, regular_verdict, exceptions,
                              first_gap, genus_gap, seven_adic_gap, local_gap, precedes, vectors_with_norm,
                              ConfirmedUpTo, RefutedAt, EXCEEDS_BOUND)
from reglat.report import check_two_three_six_complement, check_class_number_one
from reglat.settings import MAX_SIEVE_BOUND

from reglat_test.integration import sieve_oracle_test, verdict_witness_test


class TestRepSieve:
    def test_three_squares(self):
        sieve = rep_sieve(make_lattice((1, 1, 1)), 100)
        assert sieve.complement() == [7, 15, 23, 28, 31, 39, 47, 55, 60, 63, 71, 79, 87, 92, 95]
        assert 0 in sieve
        assert 101 not in sieve
        assert -1 not in sieve

    @pytest.mark.parametrize("coeffs", [(1, 2, 5, 5), (3, 4, 8), (1, 16, 144), (2, 3, 9, 36)])
    def test_matches_search(self, coeffs):
        sieve_oracle_test(make_lattice(coeffs), 400)

    def test_extend(self):
        sieve = rep_sieve(make_lattice((1, 1, 1)), 1000)
        extended = sieve.extend(1)
        assert extended == rep_sieve(make_lattice((1, 1, 1, 1)), 1000)
        assert extended.complement() == []
        assert extended.lattice == make_lattice((1, 1, 1, 1))

    def test_bits_read_only(self):
        sieve = rep_sieve(make_lattice((1, 2)), 50)
        with pytest.raises(ValueError):
            sieve.bits[3] = False

    def test_bounds(self):
        with pytest.raises(BoundTooLarge):
            rep_sieve(make_lattice((1,)), 0)
        with pytest.raises(BoundTooLarge):
            rep_sieve(make_lattice((1,)), MAX_SIEVE_BOUND + 1)

    def test_cache_hits(self, fresh_sieve_cache):
        rep_sieve(make_lattice((1, 2, 3)), 500)
        stored = fresh_sieve_cache.stores
        rep_sieve(make_lattice((1, 2, 3)), 500)
        assert fresh_sieve_cache.stores == stored
        assert fresh_sieve_cache.hits >= 1

    def test_shared_prefix(self, fresh_sieve_cache):
        rep_sieve(make_lattice((1, 2, 3)), 500)
        rep_sieve(make_lattice((1, 2, 5)), 500)
        assert fresh_sieve_cache.stores == 4


class TestRepresents:
    def test_represents(self):
        lattice = make_lattice((1, 1, 1))
        assert not represents(lattice, 7)
        assert represents(lattice, 6)
        assert represents(lattice, 0)
        assert not represents(lattice, -1)

    def test_from_cached_sieve(self, fresh_sieve_cache):
        lattice = make_lattice((1, 4, 20))
        rep_sieve(lattice, 1000)
        assert not represents(lattice, 77)
        assert represents(lattice, 5)


class TestGenus:
    def test_genus_represents(self):
        lattice = make_lattice((1, 4, 20))
        assert genus_represents(lattice, 77)
        assert not genus_represents(lattice, 3)

    def test_preconditions(self):
        with pytest.raises(RankTooSmall):
            genus_represents(make_lattice((1, 1)), 1)
        with pytest.raises(NotPrimitive):
            genus_mask(make_lattice((2, 4, 6)), 100)

    def test_two_three_six_complement(self):
        passed, _, differences = check_two_three_six_complement(10 ** 5)
        assert passed, differences

    def test_class_number_one(self):
        passed, _, differences = check_class_number_one(10 ** 5)
        assert passed, differences


class TestVerdict:
    def test_refuted(self):
        lattice = make_lattice((1, 4, 20))
        verdict = regular_verdict(lattice, 10 ** 4)
        assert verdict == RefutedAt(77, {})
        assert str(verdict) == "REFUTED at 77"
        assert not verdict.confirmed
        assert verdict.to_dict()["n"] == 77
        verdict_witness_test(lattice, 10 ** 4)

    def test_confirmed(self):
        verdict = regular_verdict(make_lattice((1, 2, 3, 5)), 10 ** 4)
        assert verdict == ConfirmedUpTo(10 ** 4)
        assert str(verdict) == "CONFIRMED <= 10000"
        assert verdict.to_dict() == {"verdict": "confirmed", "bound": 10 ** 4}

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_doubling_family(self, r):
        lattice, witness_bound = tables.doubling_lattice(r)
        verdict = verdict_witness_test(lattice, 10 ** 4)
        assert not verdict.confirmed
        assert verdict.n <= witness_bound

    @pytest.mark.parametrize("coeffs", [(1, 16, 144), (3, 4, 8), (1, 2, 5, 5)])
    def test_witness(self, coeffs):
        verdict_witness_test(make_lattice(coeffs), 2000)

    def test_exceptions(self):
        assert exceptions(make_lattice((1, 2, 5, 5)), 2000) == [15]
        assert exceptions(make_lattice((1, 2, 5, 125)), 2000) == [375]
        assert exceptions(make_lattice((1, 1, 1, 1)), 2000) == []


class TestGaps:
    def test_first_gap_predicate(self):
        assert first_gap(lambda n: n % 8 == 7, make_lattice((1, 1, 1)), 1000) == 7
        assert first_gap(lambda n: n % 3 == 1, make_lattice((1, 1, 1, 1)), 1000) is EXCEEDS_BOUND

    def test_first_gap_iterable(self):
        assert first_gap([1, 2, 3, 4, 5, 6, 8], make_lattice((1, 1)), 100) == 3
        assert first_gap(iter([1, 4, 9]), make_lattice((1,)), 100) is EXCEEDS_BOUND

    def test_first_gap_grows_sieve(self):
        squares = (k * k for k in range(1, 200))
        assert first_gap(squares, make_lattice((1, 1)), 40000, start_bound=16) is EXCEEDS_BOUND
        assert first_gap([5000, 5001], make_lattice((1, 1)), 10 ** 4, start_bound=16) == 5001

    def test_genus_gaps(self):
        for coeffs, gap in tables.GENUS_GAPS.items():
            assert genus_gap(make_lattice(coeffs), 10 ** 4) == gap, coeffs

    def test_seven_adic_gaps(self):
        for coeffs, gap in tables.SEVEN_ADIC_GAPS.items():
            assert seven_adic_gap(make_lattice(coeffs), 10 ** 4) == gap, coeffs

    def test_local_gap_none(self):
        assert local_gap(make_lattice((1, 1, 1)), 3, 1000) is EXCEEDS_BOUND

    def test_sentinel_pickle(self):
        assert pickle.loads(pickle.dumps(EXCEEDS_BOUND)) is EXCEEDS_BOUND


class TestPrecedes:
    def test_precedes(self):
        assert precedes((1, 2, 3, 5), (1, 2, 3, 5, 7), 1000)
        assert not precedes((1, 1, 1), (1, 1, 1, 1), 1000)
        assert not precedes((1, 2), (1, 3, 5), 1000)
        assert precedes(make_lattice((1, 1, 1, 1)), make_lattice((1, 1, 1, 1, 1)), 1000)


class TestVectors:
    def test_two_squares(self):
        assert vectors_with_norm(make_lattice((1, 1)), 5) == [
            (-2, -1), (-2, 1), (-1, -2), (-1, 2), (1, -2), (1, 2), (2, -1), (2, 1)]

    def test_counts(self):
        lattice = make_lattice((1, 2, 5, 5, 11))
        assert [len(vectors_with_norm(lattice, n)) for n in (1, 2, 5, 10)] == [2, 2, 4, 4]
        assert vectors_with_norm(lattice, 15) == [(-2, 0, 0, 0, -1), (-2, 0, 0, 0, 1), (2, 0, 0, 0, -1),
                                                  (2, 0, 0, 0, 1)]
        assert vectors_with_norm(lattice, 0) == [(0, 0, 0, 0, 0)]

    def test_sum_matches_sieve(self):
        lattice = make_lattice((1, 2, 3))
        sieve = rep_sieve(lattice, 60)
        assert [n for n in range(61) if vectors_with_norm(lattice, n)] == sieve.members()
        assert np.all(sieve.bits[[n for n in range(61) if vectors_with_norm(lattice, n)]])
