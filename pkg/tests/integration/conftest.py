import json

import pytest

from reglat.cli import main


@pytest.fixture
def run_cli(capsys, fresh_sieve_cache):
    """
    Run the command line entry point and capture its output.

    Returns:
        callable: Takes the argument list, returns ``(exit_code, stdout)``.
    """
    def run(*argv):
        code = main(["--jobs", "1"] + list(argv))
        return code, capsys.readouterr().out

    return run


@pytest.fixture
def run_cli_json(run_cli):
    def run(*argv):
        code, out = run_cli("--json", *argv)
        return code, json.loads(out)

    return run
