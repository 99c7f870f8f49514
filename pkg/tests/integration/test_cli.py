import json
import os

import pytest

from reglat.cli import parse_arguments
from reglat.errors import EXIT_OK, EXIT_FAILED, EXIT_USAGE
from reglat.settings import DEFAULT_BOUND


class TestLocalSet:
    def test_squares(self, run_cli):
        code, out = run_cli("local-set", "--lattice", "1", "--prime", "3")
        data = json.loads(out)
        assert code == EXIT_OK
        assert data["p"] == 3
        assert data["E"] == 1

    def test_all_classes(self, run_cli):
        code, out = run_cli("local-set", "--lattice", "1,48,144,144", "--prime", "5")
        assert code == EXIT_OK
        assert all(entry["member"] for entry in json.loads(out)["classes"])

    def test_two_adic(self, run_cli):
        code, out = run_cli("local-set", "--lattice", "1,48,144,144", "--prime", "2")
        members = set((c["e"], c["u"]) for c in json.loads(out)["classes"] if c["member"])
        assert (0, 1) in members
        assert (2, 5) in members
        assert (0, 3) not in members
        assert (3, 1) not in members

    def test_parse_error(self, run_cli):
        with pytest.raises(SystemExit) as e:
            run_cli("local-set", "--lattice", "1,x", "--prime", "3")
        assert e.value.code == EXIT_USAGE

    def test_not_prime(self, run_cli):
        with pytest.raises(SystemExit) as e:
            run_cli("local-set", "--lattice", "1", "--prime", "4")
        assert e.value.code == EXIT_USAGE


class TestRegular:
    def test_refuted(self, run_cli):
        code, out = run_cli("regular", "--lattice", "1,4,20", "--bound", "10000")
        assert code == EXIT_FAILED
        assert out.startswith("REFUTED at 77")

    def test_confirmed(self, run_cli):
        code, out = run_cli("regular", "--lattice", "1,2,3,5", "--bound", "10000")
        assert code == EXIT_OK
        assert out.strip() == "CONFIRMED <= 10000"

    def test_bound_before_command(self, run_cli):
        code, out = run_cli("--bound", "5000", "regular", "--lattice", "1,2,3,5")
        assert code == EXIT_OK
        assert out.strip() == "CONFIRMED <= 5000"

    def test_doubling(self, run_cli_json):
        code, data = run_cli_json("regular", "--lattice", "2,3,9,36", "--bound", "10000")
        assert code == EXIT_FAILED
        assert data["verdict"] == "refuted"
        assert data["n"] <= 26
        assert [c["p"] for c in data["certificates"]] == [2, 3]

    def test_not_primitive(self, run_cli):
        code, _ = run_cli("regular", "--lattice", "2,4,6", "--bound", "1000")
        assert code == EXIT_USAGE

    def test_rank_too_small(self, run_cli):
        code, _ = run_cli("regular", "--lattice", "1,1", "--bound", "1000")
        assert code == EXIT_USAGE


class TestCommands:
    def test_psi(self, run_cli):
        code, out = run_cli("psi", "--lattice", "1,1,1", "--modulus", "8", "--residues", "3,7", "--bound", "1000")
        assert code == EXIT_OK
        assert out.strip() == "7"

    def test_psi_no_gap(self, run_cli_json):
        code, data = run_cli_json("psi", "--lattice", "1,1,1,1", "--modulus", "2", "--residues", "1",
                                  "--bound", "500")
        assert code == EXIT_OK
        assert data == {"gap": None, "bound": 500}

    def test_lambda(self, run_cli):
        code, out = run_cli("lambda", "--lattice", "1,1,1,4", "--prime", "2")
        assert code == EXIT_OK
        assert out.strip() == "odd_triple_mod4 1,1,1,1"

    def test_lambda_none(self, run_cli):
        code, _ = run_cli("lambda", "--lattice", "1,1,1,1", "--prime", "2")
        assert code == EXIT_FAILED

    def test_redundant(self, run_cli):
        assert run_cli("redundant", "--lattice", "1,48,144,144", "--n", "144") == (EXIT_OK, "true\n")
        assert run_cli("redundant", "--lattice", "1,48,144,144", "--n", "48") == (EXIT_FAILED, "false\n")
        assert run_cli("redundant", "--lattice", "1,48,144,144", "--divisor") == (EXIT_OK, "144\n")

    def test_redundant_empirical(self, run_cli):
        code, _ = run_cli("redundant", "--lattice", "1,1,1,1", "--n", "5", "--mode", "empirical", "--bound", "1000")
        assert code == EXIT_OK

    def test_minimalize(self, run_cli):
        assert run_cli("minimalize", "--lattice", "1,1,1,1,1,2", "--bound", "1000") == (EXIT_OK, "1,1,1,1\n")

    def test_table(self, run_cli):
        code, out = run_cli("table", "--which", "batches")
        assert code == EXIT_OK
        assert [row["size"] for row in json.loads(out)] == [28, 27, 4, 2, 39, 3]

    def test_classify(self, run_cli):
        code, out = run_cli("classify", "--ternary", "1,1,1", "--a4-max", "9", "--bound", "5000")
        records = [json.loads(line) for line in out.splitlines()]
        assert code == EXIT_OK
        assert len(records) == 9
        assert [r["verdict"]["verdict"] for r in records][-1] == "refuted"

    def test_rank5(self, run_cli):
        code, out = run_cli("rank5", "--prefix", "1,2,5,5", "--a5-max", "6", "--bound", "5000")
        records = [json.loads(line) for line in out.splitlines()]
        assert code == EXIT_OK
        assert [r["lattice"][4] for r in records] == [5, 6]
        assert records[0]["notes"] == "1,2,5: r=1 s=5"

    def test_asets(self, run_cli_json):
        code, data = run_cli_json("asets", "--prime", "11")
        assert code == EXIT_OK
        assert data["odd_minus"] == [7]

    def test_asets_two(self, run_cli):
        with pytest.raises(SystemExit):
            run_cli("asets", "--prime", "2")

    def test_newcheck(self, run_cli):
        assert run_cli("newcheck", "--lattice", "1,2,5,5,11", "--probes", "1,2,5,10,15") == (EXIT_OK, "true\n")

    def test_exceptions(self, run_cli):
        assert run_cli("exceptions", "--lattice", "1,2,5,5", "--bound", "1000") == (EXIT_OK, "15\n")

    def test_cache_dir(self, run_cli, temp_cache_dir):
        code, _ = run_cli("--cache-dir", temp_cache_dir, "regular", "--lattice", "1,2,3,5", "--bound", "1000")
        assert code == EXIT_OK
        assert any(name.endswith(".sieve") for name in os.listdir(temp_cache_dir))


class TestVerify:
    def test_subset(self, run_cli, temp_cache_dir):
        path = os.path.join(temp_cache_dir, "report.json")
        code, out = run_cli("verify", "--only", "congruence-values,prime-sets", "--report", path)
        assert code == EXIT_OK
        with open(path) as f:
            report = json.load(f)
        assert report["passed"]
        assert [check["name"] for check in report["checks"]] == ["congruence-values", "prime-sets"]
        assert "congruence-values" in out

    def test_unknown_check(self, run_cli):
        with pytest.raises(SystemExit) as e:
            run_cli("verify", "--only", "bogus")
        assert e.value.code == EXIT_USAGE

    def test_verify_alias(self, run_cli_json):
        code, data = run_cli_json("verify-paper", "--only", "table2", "--bound", "10000")
        assert code == EXIT_OK
        assert [check["name"] for check in data["checks"]] == ["genus-gaps"]


class TestTableNumbers:
    @pytest.mark.parametrize("number, name", [("1", "ternaries"), ("2", "genus-gaps"), ("5", "batches"),
                                              ("6", "quinaries")])
    def test_numbered_fixture(self, run_cli, number, name):
        assert run_cli("table", "--which", number) == run_cli("table", "--which", name)

    def test_out_of_range(self, run_cli):
        with pytest.raises(SystemExit):
            run_cli("table", "--which", "7")


class TestGlobalOptions:
    def test_before_command(self):
        args = parse_arguments(["--bound", "5000", "--json", "--jobs", "3", "regular", "--lattice", "1,2,3,5"])
        assert (args.bound, args.json, args.jobs) == (5000, True, 3)

    def test_after_command(self):
        args = parse_arguments(["asets", "--prime", "11", "--json", "--verbose"])
        assert args.json and args.verbose
        assert args.bound == DEFAULT_BOUND

    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("REGLAT_CACHE", raising=False)
        args = parse_arguments(["asets", "--prime", "11"])
        assert (args.bound, args.json, args.verbose, args.cache_dir) == (DEFAULT_BOUND, False, False, None)
        assert args.jobs >= 1
