"""
Command line surface. Every command prints a human readable summary, or JSON with ``--json``; bulk commands
print one JSON object per line. The exit code is 0 on success or confirmation, 1 on refutation or a failed
check, 2 on invalid input and 3 when a computation did not stabilize.
"""
import argparse
import json
import logging
import sys

from sympy import isprime

import reglat
from reglat import tables
from reglat.classify import classify_quaternaries, search_rank5, residue_prime_sets, forced_basis_check
from reglat.core import parse_lattice
from reglat.errors import exception_logger, ReglatError, EXIT_OK, EXIT_FAILED, EXIT_USAGE
from reglat.extra.local import LocalSieveCache
from reglat.globalrep import regular_verdict, first_gap, exceptions, set_sieve_cache, EXCEEDS_BOUND
from reglat.padic import local_rep_set
from reglat.report import run_verification, expand_check_names, CHECK_NAMES, FIXTURE_CHECKS
from reglat.settings import DEFAULT_BOUND, PSI_SAFEGUARD, cache_dir_from_env, default_jobs
from reglat.transforms import (watson_case_for, watson_transform, is_redundant, redundancy_divisor, minimalize,
                               LOCAL, EMPIRICAL)

LOGGER = logging.getLogger("reglat.cli")


def _emit(args, data, text):
    print(json.dumps(data, sort_keys=True) if args.json else text)


def _emit_lines(records):
    for record in records:
        print(json.dumps(record.to_dict(), sort_keys=True))


def _integers(text):
    try:
        return [int(value) for value in text.split(",") if value.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated integers, got %r" % text)


@exception_logger
def cmd_local_set(args):
    rep = local_rep_set(args.lattice, args.prime)
    print(json.dumps(rep.to_dict(), sort_keys=True))
    return EXIT_OK


@exception_logger
def cmd_regular(args):
    verdict = regular_verdict(args.lattice, args.bound)
    lines = [str(verdict)]
    if not verdict.confirmed:
        lines.extend("  %r" % verdict.certificates[p] for p in sorted(verdict.certificates))
    data = verdict.to_dict()
    data["lattice"] = list(args.lattice.coeffs)
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if verdict.confirmed else EXIT_FAILED


@exception_logger
def cmd_psi(args):
    residues = set(r % args.modulus for r in args.residues)
    bound = min(args.bound, PSI_SAFEGUARD)
    gap = first_gap(lambda n: n % args.modulus in residues, args.lattice, bound)
    found = gap is not EXCEEDS_BOUND
    _emit(args, {"gap": gap if found else None, "bound": bound},
          str(gap) if found else "no gap up to %d" % bound)
    return EXIT_OK


@exception_logger
def cmd_lambda(args):
    case = watson_case_for(args.lattice, args.prime)
    if case is None:
        _emit(args, {"case": None}, "no case applies at %d" % args.prime)
        return EXIT_FAILED
    result = watson_transform(args.lattice, case)
    _emit(args, {"case": case.tag, "lattice": list(result.coeffs)}, "%s %s" % (case.tag, result))
    return EXIT_OK


@exception_logger
def cmd_redundant(args):
    if args.divisor:
        divisor = redundancy_divisor(args.lattice)
        _emit(args, {"divisor": divisor}, str(divisor))
        return EXIT_OK
    if args.n is None:
        raise ReglatError("redundant needs --n or --divisor")
    redundant = is_redundant(args.lattice, args.n, args.bound, args.mode)
    _emit(args, {"n": args.n, "redundant": redundant, "mode": args.mode}, str(redundant).lower())
    return EXIT_OK if redundant else EXIT_FAILED


@exception_logger
def cmd_minimalize(args):
    result = minimalize(args.lattice, args.bound)
    _emit(args, {"lattice": list(result.coeffs)}, str(result))
    return EXIT_OK


@exception_logger
def cmd_table(args):
    print(json.dumps(tables.to_json(args.which), sort_keys=True))
    return EXIT_OK


@exception_logger
def cmd_classify(args):
    _emit_lines(classify_quaternaries(args.ternary, args.a4_max, args.bound, args.jobs))
    return EXIT_OK


@exception_logger
def cmd_rank5(args):
    _emit_lines(search_rank5(args.prefix, args.a5_max, args.bound, args.jobs))
    return EXIT_OK


@exception_logger
def cmd_asets(args):
    sets = residue_prime_sets(args.prime)
    data = dict((name, sorted(getattr(sets, name))) for name in sets._fields)
    _emit(args, data, "\n".join("%s: %s" % (name, ",".join(map(str, data[name]))) for name in sets._fields))
    return EXIT_OK


@exception_logger
def cmd_newcheck(args):
    forced = forced_basis_check(args.lattice, args.probes)
    _emit(args, {"forced": forced}, str(forced).lower())
    return EXIT_OK if forced else EXIT_FAILED


@exception_logger
def cmd_exceptions(args):
    found = exceptions(args.lattice, args.bound)
    _emit(args, {"exceptions": found, "bound": args.bound}, " ".join(map(str, found)))
    return EXIT_OK


@exception_logger
def cmd_verify(args):
    only = set(args.only) if args.only else None
    report = run_verification(args.bound, only, args.jobs)
    data = report.to_dict()
    if args.report:
        with open(args.report, "w") as f:
            json.dump(data, f, indent=2, sort_keys=True)
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        for result in report.results:
            print("%-26s %-5s %8.2fs" % (result["name"], result["status"], result["runtime"]))
            if "repro" in result:
                print("    expected: %s" % json.dumps(result["expected"]))
                print("    actual:   %s" % json.dumps(result["actual"]))
                print("    repro:    %s" % result["repro"])
    return EXIT_OK if report.passed else EXIT_FAILED


def _lattice(text):
    try:
        return parse_lattice(text)
    except ReglatError as e:
        raise argparse.ArgumentTypeError(str(e))


def _check_names(text):
    names = [name.strip() for name in text.split(",") if name.strip()]
    try:
        return expand_check_names(names)
    except KeyError:
        unknown = [name for name in names if name not in CHECK_NAMES and name not in FIXTURE_CHECKS]
        raise argparse.ArgumentTypeError("unknown checks %s, choose from %s"
                                         % (unknown, ", ".join(CHECK_NAMES + tuple(sorted(FIXTURE_CHECKS)))))


def _fixture_name(text):
    if text.isdigit() and 1 <= int(text) <= len(tables.FIXTURE_NAMES):
        return tables.FIXTURE_NAMES[int(text) - 1]
    return text


def _prime(text):
    try:
        p = int(text)
    except ValueError:
        p = None
    if p is None or not isprime(p):
        raise argparse.ArgumentTypeError("expected a prime, got %r" % text)
    return p


def _odd_prime(text):
    p = _prime(text)
    if p == 2:
        raise argparse.ArgumentTypeError("expected an odd prime")
    return p


GLOBAL_DEFAULTS = (
    ("bound", DEFAULT_BOUND),
    ("json", False),
    ("cache_dir", None),
    ("jobs", None),
    ("verbose", False),
)


def _global_options():
    # Suppressed defaults keep a flag given before the command from being reset by the subcommand parser.
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument("--bound", type=int, default=argparse.SUPPRESS, help="sieve bound B")
    options.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print JSON")
    options.add_argument("--cache-dir", default=argparse.SUPPRESS, help="persistent sieve cache directory")
    options.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes")
    options.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS, help="debug logging")
    return options


def build_parser():
    parser = argparse.ArgumentParser(prog="reglat", description="Regular diagonal quadratic forms",
                                     parents=[_global_options()])
    parser.add_argument("--version", action="version", version=reglat.__version__)
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    def command(name, handler, help_text, aliases=()):
        sub = commands.add_parser(name, help=help_text, aliases=list(aliases), parents=[_global_options()])
        sub.set_defaults(handler=handler)
        return sub

    sub = command("local-set", cmd_local_set, "square classes represented over Z_p")
    sub.add_argument("--lattice", type=_lattice, required=True)
    sub.add_argument("--prime", type=_prime, required=True)

    sub = command("regular", cmd_regular, "bounded regularity verdict")
    sub.add_argument("--lattice", type=_lattice, required=True)

    sub = command("psi", cmd_psi, "least integer of a residue class set that is not represented")
    sub.add_argument("--lattice", type=_lattice, required=True)
    sub.add_argument("--modulus", type=int, required=True)
    sub.add_argument("--residues", type=_integers, required=True)

    sub = command("lambda", cmd_lambda, "Watson transformation")
    sub.add_argument("--lattice", type=_lattice, required=True)
    sub.add_argument("--prime", type=_prime, required=True)

    sub = command("redundant", cmd_redundant, "redundancy of an inserted coefficient")
    sub.add_argument("--lattice", type=_lattice, required=True)
    sub.add_argument("--n", type=int)
    sub.add_argument("--mode", choices=(LOCAL, EMPIRICAL), default=LOCAL)
    sub.add_argument("--divisor", action="store_true", help="print the redundancy divisor instead")

    sub = command("minimalize", cmd_minimalize, "drop coefficients that add nothing up to the bound")
    sub.add_argument("--lattice", type=_lattice, required=True)

    sub = command("table", cmd_table, "published classification data")
    sub.add_argument("--which", type=_fixture_name, choices=tables.FIXTURE_NAMES, required=True,
                     help="fixture name, or its number 1-%d" % len(tables.FIXTURE_NAMES))

    sub = command("classify", cmd_classify, "classify quaternary extensions of a ternary")
    sub.add_argument("--ternary", type=_lattice, required=True)
    sub.add_argument("--a4-max", type=int, required=True)

    sub = command("rank5", cmd_rank5, "classify quinary extensions of a quaternary")
    sub.add_argument("--prefix", type=_lattice, required=True)
    sub.add_argument("--a5-max", type=int, required=True)

    sub = command("asets", cmd_asets, "primes split by quadratic character")
    sub.add_argument("--prime", type=_odd_prime, required=True)

    sub = command("newcheck", cmd_newcheck, "forced basis argument")
    sub.add_argument("--lattice", type=_lattice, required=True)
    sub.add_argument("--probes", type=_integers, required=True)

    sub = command("exceptions", cmd_exceptions, "integers represented by the genus but not the lattice")
    sub.add_argument("--lattice", type=_lattice, required=True)

    sub = command("verify", cmd_verify, "run the verification suite", aliases=("verify-paper",))
    sub.add_argument("--only", type=_check_names, help="comma separated check names or numbered fixture aliases")
    sub.add_argument("--report", help="write the JSON report to this path")
    return parser


def parse_arguments(argv=None):
    """
    Parse the command line, then fill in global flags given neither before nor after the command.
    """
    args = build_parser().parse_args(argv)
    for name, default in GLOBAL_DEFAULTS:
        if not hasattr(args, name):
            setattr(args, name, default)
    if args.cache_dir is None:
        args.cache_dir = cache_dir_from_env()
    if args.jobs is None:
        args.jobs = default_jobs()
    return args


def main(argv=None):
    args = parse_arguments(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.cache_dir:
        set_sieve_cache(LocalSieveCache(args.cache_dir))
    try:
        return args.handler(args)
    except ReglatError as e:
        print("error: %s" % e, file=sys.stderr)
        return e.exit_code
    except KeyError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
