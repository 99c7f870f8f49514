import pytest

import reglat
from reglat import report
from reglat.report import run_check, run_verification, expand_check_names, PASS, FAIL, ERROR


def _always_fails(bound):
    return False, [1], [2]


def _raises(bound):
    raise ValueError("broken")


class TestRunCheck:
    @pytest.mark.parametrize("name", ["genus-gaps", "seven-adic-gaps", "congruence-values", "doubling-refutations",
                                      "two-three-six-complement", "class-number-one", "forced-basis", "prime-sets",
                                      "watson", "batches"])
    def test_passes(self, name):
        result = run_check(name, 10 ** 4)
        assert result["status"] == PASS, result
        assert result["runtime"] >= 0
        assert "repro" not in result

    def test_failure_has_repro(self, monkeypatch):
        monkeypatch.setattr(report, "CHECKS", report.CHECKS + (("always-fails", _always_fails),))
        result = run_check("always-fails", 1000)
        assert result["status"] == FAIL
        assert result["expected"] == [1]
        assert result["actual"] == [2]
        assert result["repro"] == "reglat verify --only always-fails --bound 1000"

    def test_error_has_repro(self, monkeypatch):
        monkeypatch.setattr(report, "CHECKS", report.CHECKS + (("raises", _raises),))
        result = run_check("raises", 1000)
        assert result["status"] == ERROR
        assert result["actual"] == "ValueError: broken"
        assert "repro" in result


class TestVerification:
    def test_subset(self):
        verification = run_verification(10 ** 4, {"watson", "prime-sets"})
        data = verification.to_dict()
        assert verification.passed
        assert data["version"] == reglat.__version__
        assert data["bound"] == 10 ** 4
        assert [check["name"] for check in data["checks"]] == ["prime-sets", "watson"]
        assert set(data["cache"]) == {"hits", "misses", "stores"}

    def test_unknown(self):
        with pytest.raises(KeyError):
            run_verification(1000, {"bogus"})

    def test_fixture_alias(self):
        verification = run_verification(10 ** 4, {"table2", "table3"})
        assert [check["name"] for check in verification.to_dict()["checks"]] == ["genus-gaps", "seven-adic-gaps"]
        assert verification.passed

    def test_expand_check_names(self):
        assert expand_check_names(["table4", "watson", "quaternary-soundness"]) == [
            "quaternary-soundness", "quaternary-completeness", "watson"]
        with pytest.raises(KeyError):
            expand_check_names(["table7"])

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["ternaries", "local-sets", "quaternary-soundness", "quaternary-completeness",
                                      "quinaries", "local-global-soundness"])
    def test_full_size(self, name):
        result = run_check(name, 10 ** 5)
        assert result["status"] == PASS, result
