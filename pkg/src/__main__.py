import argparse
import sys

from scenariorisk import version

from .allocations import Theorem1Choice
from .certificates import TABLE1_BETA, TABLE1_DIAGONAL_BETA
from .commands import apriori, certify, region_grid, simulate, size, table1
from .constants import ACCEPTANCE_SIGMAS, BISECTION_TOLERANCE, GRID_RESOLUTION
from .docs import build_docs, local
from .engine import PROBLEMS, CertificateKind
from .commands.options import add_output
from .utils import EXIT_OK, print_versions


def _beta(text):
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}")


def _add_tolerance(parser):
    parser.add_argument(
        "--tolerance", type=float, default=BISECTION_TOLERANCE,
        help=f"Bisection bracket width ({BISECTION_TOLERANCE:g})",
    )


def _add_certificate_inputs(parser, scheme_default="diagonal"):
    parser.add_argument("--n", required=True, help="Dataset sizes N, comma-separated (e.g. 800,1200)")
    parser.add_argument("--k", required=True, help="Observed complexity k, comma-separated")
    parser.add_argument("--h", default=None, help="Allocation extent H >= N (default: N)")
    parser.add_argument("--beta", type=_beta, required=True, help="Confidence parameter in (0,1)")
    parser.add_argument(
        "--scheme", choices=["uniform", "axial", "diagonal"], default=scheme_default,
        help=f"Allocation scheme ({scheme_default})",
    )
    parser.add_argument("--m", type=int, default=None, help="Number of criteria when --n/--k are broadcast")
    _add_tolerance(parser)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="scenariorisk",
        description="Risk certificates for multi-criteria scenario-based decisions",
    )
    parser.add_argument(
        "-v",
        "--version",
        action="version",
        version=f"v{version}",
        help="Show the version of scenariorisk",
    )

    subparsers = parser.add_subparsers(
        dest="Action", required=True, help="Action to run"
    )

    # certify
    parser_certify = subparsers.add_parser(
        "certify", aliases=["cert"], help="Certify the risks at an observed complexity"
    )
    _add_certificate_inputs(parser_certify)
    add_output(parser_certify)
    parser_certify.set_defaults(func=certify)

    # region-grid
    parser_grid = subparsers.add_parser(
        "region-grid", aliases=["grid"], help="Sample a two-criterion region on a grid (CSV)"
    )
    _add_certificate_inputs(parser_grid)
    parser_grid.add_argument(
        "--resolution", "-r", type=int, default=GRID_RESOLUTION,
        help=f"Grid points per axis ({GRID_RESOLUTION})",
    )
    add_output(parser_grid, formats=("csv",))
    parser_grid.set_defaults(func=region_grid)

    # apriori
    parser_apriori = subparsers.add_parser(
        "apriori", aliases=["prior"], help="A-priori joint bounds against the number of criteria"
    )
    parser_apriori.add_argument("--n-lower", type=int, required=True, help="Smallest dataset size")
    parser_apriori.add_argument("--beta", type=_beta, required=True, help="Confidence parameter in (0,1)")
    parser_apriori.add_argument("--kstar", type=int, required=True, help="Cap K* on the total complexity")
    parser_apriori.add_argument(
        "--m-range", default="1:100", help="Numbers of criteria: a:b, a:b:step or a comma list (1:100)"
    )
    parser_apriori.add_argument(
        "--choice", choices=[c.value for c in Theorem1Choice], default=Theorem1Choice.UPPER_ONLY.value,
        help="Single-criterion choice of the independent bound",
    )
    _add_tolerance(parser_apriori)
    add_output(parser_apriori, formats=("csv", "json"))
    parser_apriori.set_defaults(func=apriori)

    # table1
    parser_table = subparsers.add_parser(
        "table1", aliases=["table"], help="Diagonal against independent joint bounds on homogeneous data"
    )
    parser_table.add_argument(
        "--beta", type=_beta, default=TABLE1_BETA,
        help=f"Confidence parameter of the independent sum ({TABLE1_BETA:g})",
    )
    parser_table.add_argument(
        "--diagonal-beta", type=_beta, default=TABLE1_DIAGONAL_BETA,
        help=f"Confidence parameter of the diagonal closed form ({TABLE1_DIAGONAL_BETA:g})",
    )
    parser_table.add_argument(
        "--row", action="append", default=[], metavar="M,N,K",
        help="Replace the built-in rows (repeatable)",
    )
    _add_tolerance(parser_table)
    add_output(parser_table, formats=("csv", "json"))
    parser_table.set_defaults(func=table1)

    # size
    parser_size = subparsers.add_parser(
        "size", aliases=["sizing"], help="Smallest dataset size reaching a joint-risk level"
    )
    target = parser_size.add_mutually_exclusive_group(required=True)
    target.add_argument("--m", type=int, help="Number of criteria")
    target.add_argument("--uniform", action="store_true", help="Size uniformly in the number of criteria")
    parser_size.add_argument("--kstar", type=int, required=True, help="Cap K* on the total complexity")
    parser_size.add_argument("--beta", type=_beta, required=True, help="Confidence parameter in (0,1)")
    parser_size.add_argument("--eps", type=_beta, required=True, help="Target joint risk in (0,1)")
    _add_tolerance(parser_size)
    add_output(parser_size, formats=("csv", "json"))
    parser_size.set_defaults(func=size)

    # simulate
    parser_simulate = subparsers.add_parser(
        "simulate", aliases=["coverage", "sim"], help="Monte Carlo coverage of a certificate"
    )
    parser_simulate.add_argument("--problem", choices=sorted(PROBLEMS), default="max-of-samples",
                                 help="Built-in decision problem")
    parser_simulate.add_argument("--n", required=True, help="Dataset sizes N, comma-separated")
    parser_simulate.add_argument("--m", type=int, default=None, help="Number of criteria when --n is broadcast")
    parser_simulate.add_argument("--beta", type=_beta, required=True, help="Confidence parameter in (0,1)")
    parser_simulate.add_argument("--trials", type=int, default=1000, help="Number of trials (1000)")
    parser_simulate.add_argument("--seed", type=int, default=0, help="Seed of the whole experiment (0)")
    parser_simulate.add_argument(
        "--certificate", choices=[c.value for c in CertificateKind], default=CertificateKind.DIAGONAL.value,
        help="Certified event to check",
    )
    parser_simulate.add_argument("--workers", type=int, default=1, help="Trials run concurrently (1)")
    parser_simulate.add_argument(
        "--sigmas", type=float, default=ACCEPTANCE_SIGMAS,
        help=f"Tolerated standard deviations below 1 - beta ({ACCEPTANCE_SIGMAS:g})",
    )
    parser_simulate.add_argument("--qmc-points", type=int, default=None, help="QMC points of the LP risk oracle")
    add_output(parser_simulate)
    parser_simulate.set_defaults(func=simulate)

    # versions
    parser_versions = subparsers.add_parser(
        "versions", aliases=["deps"], help="Show the package and dependency versions"
    )
    parser_versions.set_defaults(func=lambda args: print_versions())

    # docs with subcommands: local, build
    parser_docs = subparsers.add_parser(
        "docs", aliases=["api"], help="API documentation"
    )
    docs_subparsers = parser_docs.add_subparsers(
        dest="doc options", required=True, help="Docs options"
    )

    # docs local
    parser_docs_run = docs_subparsers.add_parser(
        "local", help="Run docs server locally"
    )
    parser_docs_run.set_defaults(func=local)

    # docs build
    parser_docs_build = docs_subparsers.add_parser(
        "build", help="Build the documentation"
    )
    parser_docs_build.set_defaults(func=build_docs)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    code = args.func(args)
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
