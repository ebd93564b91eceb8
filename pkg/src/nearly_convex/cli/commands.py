"""Subcommand handlers: each turns parsed flags into a result frame and an optional chart."""

import argparse
import logging
import math
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from nearly_convex.calculus import (
    coderiv_intersection_check,
    coderiv_sum_decompose,
    ecoderiv_membership,
    enormal2_membership,
    enormal_interval,
    esub_interval,
    sum_rule_decompose,
)
from nearly_convex.cli.output import build_frame, interval_columns
from nearly_convex.cli.plot import PlotSeries
from nearly_convex.cli.problem_file import ProblemFile
from nearly_convex.cli.run_config import RunConfig
from nearly_convex.core.constants import UNBOUNDED_SAMPLE_SPAN
from nearly_convex.core.interval import Interval
from nearly_convex.core.polyhedron import Vec2
from nearly_convex.func import closure_value, conjugate, evaluate
from nearly_convex.problems import (
    ConstrainedProblem,
    ParametricProblem,
    optimality_certificate,
    sensitivity_constrained,
    sensitivity_exact,
    sensitivity_unconstrained,
    value_function,
    value_function_esub_direct,
)

logger = logging.getLogger("CLI")

Outcome = Tuple[pd.DataFrame, Optional[PlotSeries]]
Handler = Callable[[argparse.Namespace, ProblemFile, RunConfig], Outcome]

INTERVAL_COLUMNS = ["lo", "hi", "unbounded_below", "unbounded_above"]


def _at(args: argparse.Namespace, count: int, usage: str) -> List[float]:
    if args.at is None or len(args.at) != count:
        raise ValueError(f"--at expects {usage}")
    return list(args.at)


def _eps_values(args: argparse.Namespace) -> List[float]:
    return list(args.eps) if args.eps else [0.0]


def _bands(rows: List[dict], key: str) -> Tuple[Tuple[float, float, float], ...]:
    return tuple((row[key], row["lo"], row["hi"]) for row in rows)


def cmd_eval(args, pf: ProblemFile, rc: RunConfig) -> Outcome:
    f = pf.function(args.fn)
    xs = np.asarray(args.at, dtype=float)
    rows = [{"x": x, "value": v, "closure_value": c}
            for x, v, c in zip(xs, evaluate(f, xs), closure_value(f, xs))]
    return build_frame(rows, ["x", "value", "closure_value"]), None


def cmd_conjugate(args, pf: ProblemFile, rc: RunConfig) -> Outcome:
    f = pf.function(args.fn)
    xis = np.asarray(args.at, dtype=float)
    values = conjugate(f, xis)
    rows = [{"xi": xi, "value": v} for xi, v in zip(xis, values)]
    points = tuple((float(xi), float(v)) for xi, v in zip(xis, values))
    return build_frame(rows, ["xi", "value"]), PlotSeries(title=f"{f.name}*", x_label="xi", points=points)


def cmd_esub(args, pf: ProblemFile, rc: RunConfig) -> Outcome:
    f = pf.function(args.fn)
    (x_bar,) = _at(args, 1, "one point")
    rows = [{"x_bar": x_bar, "eps": eps, **interval_columns(esub_interval(f, x_bar, eps))}
            for eps in _eps_values(args)]
    series = PlotSeries(title=f"eps-subdifferential of {f.name} at {x_bar:g}", x_label="eps",
                        y_label="xi", bands=_bands(rows, "eps"))
    return build_frame(rows, ["x_bar", "eps"] + INTERVAL_COLUMNS), series


def cmd_normal(args, pf: ProblemFile, rc: RunConfig) -> Outcome:
    if isinstance(pf.sets.get(args.set), Interval):
        omega = pf.interval_set(args.set)
        (x_bar,) = _at(args, 1, "one point for an interval set")
        rows = [{"x_bar": x_bar, "eps": eps, **interval_columns(enormal_interval(omega, x_bar, eps))}
                for eps in _eps_values(args)]
        return build_frame(rows, ["x_bar", "eps"] + INTERVAL_COLUMNS), None
    omega = pf.polyhedron(args.set)
    x, y = _at(args, 2, "x y for a polyhedron")
    if args.direction is None:
        raise ValueError("--direction U V is required for a polyhedron")
    u, v = args.direction
    p = Vec2(x=x, y=y)
    rows = [{"x": x, "y": y, "eps": eps, "u": u, "v": v,
             "member": enormal2_membership(omega, p, eps, Vec2(x=u, y=v))} for eps in _eps_values(args)]
    return build_frame(rows, ["x", "y", "eps", "u", "v", "member"]), None


def cmd_sumrule(args, pf: ProblemFile, rc: RunConfig) -> Outcome:
    f1, f2 = (pf.function(name) for name in args.fn)
    (x_bar,) = _at(args, 1, "one point")
    rows = []
    for eps in _eps_values(args):
        cert = sum_rule_decompose(f1, f2, x_bar, eps, args.xi)
        rows.append({"x_bar": x_bar, "eps": eps, "xi": args.xi, **cert.model_dump()})
    return build_frame(rows, ["x_bar", "eps", "xi", "eps1", "eps2", "xi1", "xi2"]), None


def cmd_coderiv(args, pf: ProblemFile, rc: RunConfig) -> Outcome:
    graphs = [pf.polyhedron(name) for name in args.set]
    rows = []
    if args.rule == "sum":
        if len(graphs) != 2:
            raise ValueError("the sum rule takes exactly two --set graphs")
        x, y1, y2 = _at(args, 3, "x y1 y2 for the sum rule")
        for eps in _eps_values(args):
            cert = coderiv_sum_decompose(graphs[0], graphs[1], x, (y1, y2), eps, args.v, args.u)
            rows.append({"eps": eps, "v": args.v, "u": args.u, "eps1": cert.eps1, "eps2": cert.eps2,
                         "u1": cert.xi1, "u2": cert.xi2})
        return build_frame(rows, ["eps", "v", "u", "eps1", "eps2", "u1", "u2"]), None
    x, y = _at(args, 2, "x y")
    p = Vec2(x=x, y=y)
    if args.rule == "membership":
        if len(graphs) != 1:
            raise ValueError("membership takes exactly one --set graph")
        rows = [{"eps": eps, "v": args.v, "u": args.u,
                 "member": ecoderiv_membership(graphs[0], p, eps, args.v, args.u)} for eps in _eps_values(args)]
        return build_frame(rows, ["eps", "v", "u", "member"]), None
    columns = ["eps", "v", "u", "member", "agree"]
    columns += [f"{k}{i + 1}" for i in range(len(graphs)) for k in ("eps", "u", "v")]
    for eps in _eps_values(args):
        check = coderiv_intersection_check(graphs, p, eps, args.v, args.u)
        row = {"eps": eps, "v": args.v, "u": args.u, "member": check.member, "agree": check.agree}
        if check.witness is not None:
            for i, (e, u, v) in enumerate(zip(check.witness.eps, check.witness.u, check.witness.v)):
                row.update({f"eps{i + 1}": e, f"u{i + 1}": u, f"v{i + 1}": v})
        rows.append(row)
    return build_frame(rows, columns), None


def cmd_check_opt(args, pf: ProblemFile, rc: RunConfig) -> Outcome:
    problem = ConstrainedProblem(objective=pf.function(args.fn), feasible=pf.interval_set(args.set))
    (x_bar,) = _at(args, 1, "one point")
    rows = []
    for eps in _eps_values(args):
        cert = optimality_certificate(problem, x_bar, eps)
        rows.append({"x_bar": x_bar, "eps": eps, **cert.model_dump()})
    return build_frame(rows, ["x_bar", "eps", "eps1", "eps2", "xi"]), None


def _parameter_range(P: ParametricProblem, count: int) -> np.ndarray:
    rng = P.objective.box[0].closure()
    if P.constraint_graph is not None:
        rng = rng.intersect(P.constraint_graph.x_range())
    lo = rng.lo if math.isfinite(rng.lo) else -UNBOUNDED_SAMPLE_SPAN
    hi = rng.hi if math.isfinite(rng.hi) else UNBOUNDED_SAMPLE_SPAN
    return np.linspace(lo, hi, count)


def cmd_value_fn(args, pf: ProblemFile, rc: RunConfig) -> Outcome:
    P = pf.problem(args.problem)
    xs = np.asarray(args.at, dtype=float) if args.at else _parameter_range(P, rc.value_fn_grid)
    rows = [{"x": float(x), "m": value_function(P, float(x))} for x in xs]
    series = PlotSeries(title=f"optimal value function of {P.name}", y_label="m(x)",
                        points=tuple((r["x"], r["m"]) for r in rows))
    return build_frame(rows, ["x", "m"]), series


def _sensitivity_route(P: ParametricProblem, method: str, args, rc: RunConfig):
    if method == "auto":
        method = "unconstrained" if P.unconstrained else "constrained"
    if method == "unconstrained":
        return lambda x, e: sensitivity_unconstrained(P, x, e, rc.ladder, args.representation)
    if method == "constrained":
        return lambda x, e: sensitivity_constrained(P, x, e, rc.ladder, args.representation,
                                                    rc.xi_window, rc.sens_xi_grid)
    if method == "exact":
        if args.y is None:
            raise ValueError("--y is required for the exact route")
        return lambda x, e: sensitivity_exact(P, x, e, args.y)
    return lambda x, e: value_function_esub_direct(P, x, e, rc.value_fn_grid)


def cmd_sens(args, pf: ProblemFile, rc: RunConfig) -> Outcome:
    P = pf.problem(args.problem)
    (x_bar,) = _at(args, 1, "one point")
    route = _sensitivity_route(P, args.method, args, rc)
    rows = []
    for eps in _eps_values(args):
        result = route(x_bar, eps)
        interval, delta = (result.interval, result.delta) if hasattr(result, "delta") else (result, math.nan)
        rows.append({"x_bar": x_bar, "eps": eps, **interval_columns(interval), "delta": delta})
    series = PlotSeries(title=f"eps-subdifferential of m at {x_bar:g} ({P.name})", x_label="eps",
                        y_label="xi", bands=_bands(rows, "eps"))
    return build_frame(rows, ["x_bar", "eps"] + INTERVAL_COLUMNS + ["delta"]), series


HANDLERS: Dict[str, Handler] = {
    "eval": cmd_eval,
    "conjugate": cmd_conjugate,
    "esub": cmd_esub,
    "normal": cmd_normal,
    "sumrule": cmd_sumrule,
    "coderiv": cmd_coderiv,
    "check-opt": cmd_check_opt,
    "value-fn": cmd_value_fn,
    "sens": cmd_sens,
}
