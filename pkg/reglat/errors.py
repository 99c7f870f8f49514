import functools
import logging

LOGGER = logging.getLogger("reglat.errors")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_UNSTABLE = 3


def _subject(args):
    for name in ("lattice", "ternary", "prefix"):
        lattice = getattr(args, name, None)
        if lattice is not None:
            return "<%s> at bound %s" % (lattice, getattr(args, "bound", "-"))
    return "bound %s" % getattr(args, "bound", "-")


def exception_logger(handler):
    """
    Log a command handler that raised, naming the command and the lattice it ran on, then re-raise. Package
    errors and unknown names are expected outcomes of bad input or bounded searches and go to debug; anything
    else is logged with its traceback.
    """
    @functools.wraps(handler)
    def exception_logger_wrapper(args):
        command = getattr(args, "command", None) or handler.__name__
        try:
            return handler(args)
        except (ReglatError, KeyError) as e:
            LOGGER.debug("%s on %s stopped with %s: %s" % (command, _subject(args), type(e).__name__, e))
            raise
        except Exception:
            LOGGER.exception("%s on %s crashed" % (command, _subject(args)))
            raise

    return exception_logger_wrapper


class ReglatError(Exception):
    """
    Base error of the package. Every error carries the process exit code the command line surface reports
    when it escapes a command.

    Attributes:
        exit_code (int): The exit code associated with the error.
    """
    exit_code = EXIT_USAGE


class EmptyLattice(ReglatError):
    pass


class NonPositiveCoefficient(ReglatError):
    pass


class IndexOutOfRange(ReglatError):
    pass


class RankTooSmall(ReglatError):
    pass


class NotPrimitive(ReglatError):
    pass


class CoefficientOverflow(ReglatError):
    pass


class LatticeParseError(ReglatError):
    pass


class ZeroInput(ReglatError):
    pass


class BoundTooLarge(ReglatError):
    pass


class CaseMismatch(ReglatError):
    pass


class ProbeNotRepresented(ReglatError):
    pass


class PsiUnbounded(ReglatError):
    """The first-gap search ran past its safeguard bound."""


class NotRedundant(ReglatError):
    exit_code = EXIT_FAILED


class StabilityNotReached(ReglatError):
    """The period-2 tail of a local representation set did not settle below the threshold cap."""
    exit_code = EXIT_UNSTABLE


class PrecisionUnstable(ReglatError):
    """A congruence search changed its answer when the precision was raised."""
    exit_code = EXIT_UNSTABLE


class SearchSpaceTooLarge(ReglatError):
    exit_code = EXIT_UNSTABLE
