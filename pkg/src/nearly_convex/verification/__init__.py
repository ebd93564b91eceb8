"""Acceptance and property checks behind the ``verify`` subcommand."""

from nearly_convex.verification.catalog import (
    cone_graph,
    cone_problem,
    counterexample_pair,
    ex1_function,
    halfplane_graphs,
    optimality_problem,
    quadratic_problem,
    random_function,
    sum_pair,
)
from nearly_convex.verification.runner import ALL_SUITES, VerificationRunner, all_passed, report_csv, run_verification
from nearly_convex.verification.suites import CheckResult

__all__ = [
    "cone_graph",
    "cone_problem",
    "counterexample_pair",
    "ex1_function",
    "halfplane_graphs",
    "optimality_problem",
    "quadratic_problem",
    "random_function",
    "sum_pair",
    "ALL_SUITES",
    "VerificationRunner",
    "all_passed",
    "report_csv",
    "run_verification",
    "CheckResult",
]
