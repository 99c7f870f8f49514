from reglat.classify import classify_quaternaries
from reglat.report import run_verification
from reglat.workers import map_ordered

from reglat_test.concurrency import parallel_verdicts_test, verdict_of


class TestConcurrency:
    def test_parallel_verdicts(self):
        parallel_verdicts_test([(1, 4, 20), (1, 2, 3, 5), (2, 3, 9, 36), (3, 4, 8), (1, 1, 1, 1), (5, 6, 9)], 5000)

    def test_map_ordered(self):
        arguments = [((1, 1, 1, a), 2000) for a in range(1, 10)]
        assert map_ordered(verdict_of, arguments, jobs=3) == map_ordered(verdict_of, arguments, jobs=1)

    def test_classify_jobs(self):
        serial = [r.to_dict() for r in classify_quaternaries((1, 1, 2), 10, 2000, jobs=1)]
        parallel = [r.to_dict() for r in classify_quaternaries((1, 1, 2), 10, 2000, jobs=2)]
        assert serial == parallel

    def test_verification_order(self):
        names = {"prime-sets", "congruence-values", "batches"}
        results = run_verification(1000, names, jobs=3).results
        assert [r["name"] for r in results] == ["congruence-values", "prime-sets", "batches"]
