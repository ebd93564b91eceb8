"""Command-line entry point ``ncx``.

Exit codes: 0 on success, 1 on a domain error, 2 on a parse or validation error.
"""

import argparse
import logging
import sys
from typing import List, Optional

import pydantic

from nearly_convex.cli.commands import HANDLERS
from nearly_convex.cli.output import render
from nearly_convex.cli.plot import emit_plot
from nearly_convex.cli.problem_file import load_problem_file
from nearly_convex.cli.run_config import RunConfig
from nearly_convex.core.config import config
from nearly_convex.core.errors import NearlyConvexError, ParseError, ValidationError
from nearly_convex.core.log_setup import setup_logging
from nearly_convex.verification import ALL_SUITES, all_passed, report_csv, run_verification

logger = logging.getLogger("CLI")

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INPUT = 2


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "text"], default=None, help="output format (default: csv)")
    common.add_argument("--eta-depth", type=int, default=None, help="depth of the eta ladder")
    common.add_argument("--grid", type=int, default=None, help="grid size for value-function and search grids")
    common.add_argument("--xi-window", type=float, nargs=2, metavar=("LO", "HI"), default=None,
                        help="slope window for searches and plots")
    common.add_argument("--plot", default=None, metavar="PATH", help="write an SVG chart to PATH")
    return common


def _file_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False, parents=[_common_flags()])
    parent.add_argument("--file", required=True, help="problem file")
    parent.add_argument("--eps", type=float, nargs="+", default=None, help="tolerance(s), default 0")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncx", description=config.app_name)
    parser.add_argument("--version", action="version", version=f"%(prog)s {config.app_version}")
    sub = parser.add_subparsers(dest="command", required=True)
    with_file = _file_flags()

    p = sub.add_parser("eval", parents=[with_file], help="evaluate a function and its closure")
    p.add_argument("--fn", required=True)
    p.add_argument("--at", type=float, nargs="+", required=True)

    p = sub.add_parser("conjugate", parents=[with_file], help="conjugate at the slopes given by --at")
    p.add_argument("--fn", required=True)
    p.add_argument("--at", type=float, nargs="+", required=True)

    p = sub.add_parser("esub", parents=[with_file], help="eps-subdifferential of a function")
    p.add_argument("--fn", required=True)
    p.add_argument("--at", type=float, nargs="+", required=True)

    p = sub.add_parser("normal", parents=[with_file], help="eps-normals to an interval or a polyhedron")
    p.add_argument("--set", required=True)
    p.add_argument("--at", type=float, nargs="+", required=True)
    p.add_argument("--direction", type=float, nargs=2, metavar=("U", "V"), default=None)

    p = sub.add_parser("sumrule", parents=[with_file], help="split a slope of d_eps(f1 + f2)")
    p.add_argument("--fn", nargs=2, required=True, metavar=("F1", "F2"))
    p.add_argument("--at", type=float, nargs="+", required=True)
    p.add_argument("--xi", type=float, required=True)

    p = sub.add_parser("coderiv", parents=[with_file], help="eps-coderivatives of polyhedral maps")
    p.add_argument("--set", nargs="+", required=True, help="graph polyhedra")
    p.add_argument("--at", type=float, nargs="+", required=True)
    p.add_argument("--rule", choices=["membership", "sum", "intersection"], default="membership")
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--u", type=float, required=True)

    p = sub.add_parser("check-opt", parents=[with_file], help="optimality certificate of an eps-solution")
    p.add_argument("--fn", required=True)
    p.add_argument("--set", required=True, help="interval constraint")
    p.add_argument("--at", type=float, nargs="+", required=True)

    p = sub.add_parser("value-fn", parents=[with_file], help="optimal value function m(x)")
    p.add_argument("--problem", required=True)
    p.add_argument("--at", type=float, nargs="+", default=None, help="points; a --grid over dom m by default")

    p = sub.add_parser("sens", parents=[with_file], help="eps-subdifferential of the optimal value function")
    p.add_argument("--problem", required=True)
    p.add_argument("--at", type=float, nargs="+", required=True)
    p.add_argument("--method", choices=["auto", "unconstrained", "constrained", "exact", "direct"], default="auto")
    p.add_argument("--representation", choices=["solution_set", "global"], default="solution_set")
    p.add_argument("--y", type=float, default=None, help="solution of the inner problem for --method exact")

    p = sub.add_parser("verify", parents=[_common_flags()], help="run the verification suites")
    p.add_argument("--suite", action="append", choices=ALL_SUITES, default=None)
    p.add_argument("--instances", type=int, default=100, help="random instances per property")
    p.add_argument("--out", default=None, help="also write the report to this CSV file")
    return parser


def _run_verify(args: argparse.Namespace, rc: RunConfig) -> int:
    frame = run_verification(args.suite, args.instances)
    if rc.output_format == "text":
        sys.stdout.write(render(frame, "text"))
        if args.out:
            report_csv(frame, args.out)
    else:
        sys.stdout.write(report_csv(frame, args.out))
    return EXIT_OK if all_passed(frame) else EXIT_DOMAIN


def run_subcommand(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv``, run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    try:
        rc = RunConfig.from_args(args)
        if args.command == "verify":
            return _run_verify(args, rc)
        problem_file = load_problem_file(args.file)
        frame, series = HANDLERS[args.command](args, problem_file, rc)
        sys.stdout.write(render(frame, rc.output_format))
        if rc.plot is not None and series is not None:
            emit_plot(series, rc.plot)
        return EXIT_OK
    except (ParseError, ValidationError, pydantic.ValidationError, KeyError, FileNotFoundError) as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_INPUT
    except (NearlyConvexError, ValueError, OSError) as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_DOMAIN


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging()
    return run_subcommand(argv)


if __name__ == "__main__":
    sys.exit(main())
