import pytest

from reglat.core import make_lattice
from reglat.errors import RankTooSmall, NotPrimitive, CaseMismatch, NotRedundant
from reglat.globalrep import regular_verdict, rep_sieve
from reglat.padic import locally_redundant
from reglat.report import WATSON_SAMPLES, redundancy_lattice
from reglat.transforms import (watson_case_for, watson_sublattice, watson_transform, WatsonCase, is_redundant,
                               redundancy_divisor, redundant_extension, is_minimal, minimalize, SINGLE_ODD,
                               ODD_PAIR_MOD4, ODD_TRIPLE_MOD4, SINGLE_UNIT, ANISOTROPIC_UNIT_PAIR, EMPIRICAL)


class TestWatsonCase:
    @pytest.mark.parametrize("coeffs, p, tag", [
        ((1, 2, 2, 4), 2, SINGLE_ODD),
        ((1, 1, 4, 4), 2, ODD_PAIR_MOD4),
        ((1, 1, 1, 4), 2, ODD_TRIPLE_MOD4),
        ((1, 3, 9, 27), 3, SINGLE_UNIT),
        ((1, 1, 3, 3), 3, ANISOTROPIC_UNIT_PAIR),
        ((1, 1, 12, 36), 3, ANISOTROPIC_UNIT_PAIR),
    ])
    def test_case(self, coeffs, p, tag):
        case = watson_case_for(make_lattice(coeffs), p)
        assert case.tag == tag
        assert case.prime == p

    def test_not_applicable(self):
        assert watson_case_for(make_lattice((1, 1, 1, 1)), 2) is None
        assert watson_case_for(make_lattice((1, 1, 1, 1)), 3) is None
        assert watson_case_for(make_lattice((1, 1, 3, 3)), 5) is None

    def test_preconditions(self):
        with pytest.raises(RankTooSmall):
            watson_case_for(make_lattice((1, 2, 4)), 2)
        with pytest.raises(NotPrimitive):
            watson_case_for(make_lattice((2, 2, 4, 4)), 2)


class TestWatsonTransform:
    def test_sublattice(self):
        lattice = make_lattice((1, 2, 2, 4))
        assert watson_sublattice(lattice, watson_case_for(lattice, 2)) == make_lattice((2, 2, 4, 4))

    def test_case_mismatch(self):
        with pytest.raises(CaseMismatch):
            watson_sublattice(make_lattice((1, 1, 1, 4)), WatsonCase(SINGLE_ODD, 2, 2))

    @pytest.mark.parametrize("coeffs, p, transformed", WATSON_SAMPLES)
    def test_transform(self, coeffs, p, transformed):
        lattice = make_lattice(coeffs)
        result = watson_transform(lattice, watson_case_for(lattice, p))
        assert result.coeffs == transformed
        assert result.is_primitive()
        assert result.rank == lattice.rank

    @pytest.mark.parametrize("coeffs, p, transformed", WATSON_SAMPLES)
    def test_transformed_regular(self, coeffs, p, transformed):
        assert regular_verdict(make_lattice(transformed), 10 ** 4).confirmed


class TestRedundancy:
    def test_local(self):
        lattice = redundancy_lattice(1)
        assert is_redundant(lattice, 144)
        assert is_redundant(lattice, 288)
        assert not is_redundant(lattice, 48)
        assert not is_redundant(lattice, 72)

    def test_empirical(self):
        assert is_redundant(make_lattice((1, 1, 1, 1)), 5, 1000, EMPIRICAL)
        assert not is_redundant(make_lattice((1, 1, 1)), 7, 1000, EMPIRICAL)

    def test_empirical_default_bound(self):
        assert is_redundant(make_lattice((1, 1, 1, 1)), 3, mode=EMPIRICAL)

    @pytest.mark.parametrize("n, gained", [(1, 2), (16, 17), (48, 96), (72, 72)])
    def test_empirical_not_redundant(self, n, gained):
        lattice = redundancy_lattice(1)
        sieve = rep_sieve(lattice, 10 ** 4)
        assert gained not in sieve
        assert gained in sieve.extend(n)
        assert not is_redundant(lattice, n, 10 ** 4, EMPIRICAL)

    def test_local_agrees_with_empirical(self):
        lattice = redundancy_lattice(1)
        local = [n for n in range(1, 300) if is_redundant(lattice, n)]
        empirical = [n for n in range(1, 300) if is_redundant(lattice, n, 10 ** 4, EMPIRICAL)]
        assert local == empirical == [144, 288]

    @pytest.mark.parametrize("p, least", [(2, 4), (3, 2)])
    def test_redundant_exponents_closed_upward(self, p, least):
        lattice = redundancy_lattice(1)
        assert [t for t in range(10) if locally_redundant(lattice, p, p ** t)] == list(range(least, 10))

    def test_divisor(self):
        assert redundancy_divisor(redundancy_lattice(1)) == 144
        assert redundancy_divisor(redundancy_lattice(2)) == 1296
        assert redundancy_divisor(make_lattice((1, 1, 1, 1))) == 1

    def test_divisor_criterion(self):
        lattice = redundancy_lattice(1)
        assert [n for n in range(1, 600) if is_redundant(lattice, n)] == [144, 288, 432, 576]

    def test_extension(self):
        assert redundant_extension(make_lattice((1, 1, 1, 1)), [2, 3]) == make_lattice((1, 1, 1, 1, 2, 3))
        with pytest.raises(NotRedundant):
            redundant_extension(make_lattice((1, 1, 1)), [7])


class TestMinimal:
    def test_is_minimal(self):
        assert is_minimal(make_lattice((1, 1, 1, 1)), 1000)
        assert not is_minimal(make_lattice((1, 1, 1, 1, 1)), 1000)
        assert is_minimal(make_lattice((1,)), 1000)

    def test_minimalize(self):
        assert minimalize(make_lattice((1, 1, 1, 1, 1, 2)), 1000) == make_lattice((1, 1, 1, 1))
        assert minimalize(make_lattice((1, 2, 5, 5, 5)), 1000) == make_lattice((1, 2, 5, 5, 5))
