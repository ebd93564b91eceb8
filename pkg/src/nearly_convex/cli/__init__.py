"""Problem files, subcommands and CSV/SVG output of the ``ncx`` tool."""

from nearly_convex.cli.expr_parser import format_interval, parse_expression
from nearly_convex.cli.main import build_parser, main, run_subcommand
from nearly_convex.cli.output import build_frame, interval_columns, render
from nearly_convex.cli.plot import PlotSeries, emit_plot
from nearly_convex.cli.problem_file import ProblemFile, load_problem_file, parse_problem_file, serialize_problem_file
from nearly_convex.cli.run_config import RunConfig

__all__ = [
    "format_interval",
    "parse_expression",
    "build_parser",
    "main",
    "run_subcommand",
    "build_frame",
    "interval_columns",
    "render",
    "PlotSeries",
    "emit_plot",
    "ProblemFile",
    "load_problem_file",
    "parse_problem_file",
    "serialize_problem_file",
    "RunConfig",
]
