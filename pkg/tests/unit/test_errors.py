import argparse
import logging

import pytest

from reglat.core import make_lattice
from reglat.errors import exception_logger, NotPrimitive, EXIT_USAGE, EXIT_UNSTABLE, PrecisionUnstable


@exception_logger
def _rejects(args):
    raise NotPrimitive("coefficients share 2")


@exception_logger
def _crashes(args):
    raise ZeroDivisionError("division by zero")


@exception_logger
def _succeeds(args):
    return 0


class TestExceptionLogger:
    def test_package_error_logged_with_lattice(self, caplog):
        args = argparse.Namespace(command="regular", lattice=make_lattice((2, 4, 6)), bound=1000)
        with caplog.at_level(logging.DEBUG, logger="reglat.errors"):
            with pytest.raises(NotPrimitive):
                _rejects(args)
        assert "regular on <2,4,6> at bound 1000 stopped with NotPrimitive" in caplog.text

    def test_crash_logged_with_traceback(self, caplog):
        args = argparse.Namespace(command="classify", ternary=make_lattice((1, 1, 1)), bound=500)
        with caplog.at_level(logging.DEBUG, logger="reglat.errors"):
            with pytest.raises(ZeroDivisionError):
                _crashes(args)
        record = caplog.records[-1]
        assert record.levelno == logging.ERROR
        assert record.exc_info is not None
        assert "classify on <1,1,1> at bound 500 crashed" in record.getMessage()

    def test_without_lattice(self, caplog):
        with caplog.at_level(logging.DEBUG, logger="reglat.errors"):
            with pytest.raises(NotPrimitive):
                _rejects(argparse.Namespace(command="verify", bound=10))
        assert "verify on bound 10" in caplog.text

    def test_success_passes_through(self):
        assert _succeeds(argparse.Namespace(command="asets")) == 0
        assert _succeeds.__name__ == "_succeeds"


class TestExitCodes:
    def test_codes(self):
        assert NotPrimitive.exit_code == EXIT_USAGE
        assert PrecisionUnstable("changed").exit_code == EXIT_UNSTABLE
