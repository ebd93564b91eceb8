"""Cross-checks on the worked examples: closed forms against the library routines."""

import logging
import math
from typing import Callable, List

import numpy as np
from pydantic import BaseModel, ConfigDict

from nearly_convex.calculus import (
    coderiv_intersection_check,
    coderiv_sum_decompose,
    ecoderiv_membership,
    enormal2_mask,
    enormal_interval,
    esub_interval,
    exact_sum_rule_holds,
    graph_intersection,
    oracle_esub_interval,
    raw_inequality_holds,
    sum_rule_decompose,
)
from nearly_convex.core.constants import TOL_EQ
from nearly_convex.core.errors import NearlyConvexError, NotInSumSubdifferentialError, QualificationFailedError
from nearly_convex.core.interval import Interval, IntervalSet
from nearly_convex.core.polyhedron import Vec2
from nearly_convex.func import add_functions
from nearly_convex.problems import (
    approx_solution_set,
    is_eps_solution,
    optimality_certificate,
    sensitivity_constrained,
    sensitivity_exact,
    sensitivity_unconstrained,
    value_function,
    value_function_esub_direct,
)
from nearly_convex.verification import catalog

logger = logging.getLogger("Verification")

SENSITIVITY_TOL = 5e-3
ENDPOINT_TOL = 1e-6


class CheckResult(BaseModel):
    """One row of the verification report."""

    model_config = ConfigDict(frozen=True)

    suite: str
    check: str
    passed: bool
    detail: str = ""


def _fmt(value: float) -> str:
    return "%.12g" % value


def _close(a: float, b: float, tol: float) -> bool:
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= tol


def _same_interval(s: IntervalSet, lo: float, hi: float, tol: float) -> bool:
    return not s.is_empty and _close(s.lo, lo, tol) and _close(s.hi, hi, tol)


def _guarded(suite: str, check: str, run: Callable[[], CheckResult]) -> CheckResult:
    """Run one check; a library error counts as a failure with its message."""
    try:
        return run()
    except NearlyConvexError as exc:
        logger.warning("%s/%s raised %s", suite, check, exc)
        return CheckResult(suite=suite, check=check, passed=False, detail=f"{type(exc).__name__}: {exc}")


def ex1_suite() -> List[CheckResult]:
    suite = "ex1"
    f = catalog.ex1_function()
    out = []
    for eps in (0.1, 0.5, 1.0, 4.0):
        expected = -1.0 / (4.0 * eps) if eps <= 0.5 else eps - 1.0

        def run(eps=eps, expected=expected) -> CheckResult:
            s = esub_interval(f, 0.0, eps)
            ok = s.unbounded_below and _close(s.hi, expected, ENDPOINT_TOL)
            return CheckResult(suite=suite, check=f"esub eps={_fmt(eps)}", passed=ok, detail=str(s))

        out.append(_guarded(suite, f"esub eps={_fmt(eps)}", run))
    s0 = esub_interval(f, 0.0, 0.0)
    out.append(CheckResult(suite=suite, check="esub eps=0 empty", passed=s0.is_empty, detail=str(s0)))
    oracle = oracle_esub_interval(f, 0.0, 0.25, 4001, Interval.closed(-2.0, 0.0), 2001)
    ok = oracle.clipped_below and _close(oracle.hi, -1.0, 2e-3)
    out.append(CheckResult(suite=suite, check="oracle eps=0.25", passed=ok, detail=str(oracle)))
    return out


def sum_suite() -> List[CheckResult]:
    suite = "sum"
    f1, f2 = catalog.sum_pair()
    total = add_functions(f1, f2)
    out = []
    for eps in (0.5, 1.0, 2.0):
        expected = -1.0 / eps if eps <= 1.0 else eps - 2.0
        s = esub_interval(total, 0.0, eps)
        ok = s.unbounded_below and _close(s.hi, expected, ENDPOINT_TOL)
        out.append(CheckResult(suite=suite, check=f"esub eps={_fmt(eps)}", passed=ok, detail=str(s)))

    def certificate() -> CheckResult:
        cert = sum_rule_decompose(f1, f2, 0.0, 1.0, -1.0)
        ok = (
            abs(cert.eps1 + cert.eps2 - 1.0) <= 1e-10
            and cert.matches(1.0, -1.0)
            and raw_inequality_holds(f1, 0.0, cert.eps1, cert.xi1)
            and raw_inequality_holds(f2, 0.0, cert.eps2, cert.xi2)
        )
        detail = f"eps1={_fmt(cert.eps1)} eps2={_fmt(cert.eps2)} xi1={_fmt(cert.xi1)} xi2={_fmt(cert.xi2)}"
        return CheckResult(suite=suite, check="sumrule certificate", passed=ok, detail=detail)

    out.append(_guarded(suite, "sumrule certificate", certificate))
    return out


def counterexample_suite() -> List[CheckResult]:
    suite = "counterexample"
    f1, f2 = catalog.counterexample_pair()
    out = []
    try:
        sum_rule_decompose(f1, f2, 0.0, 0.0, 0.0)
        out.append(CheckResult(suite=suite, check="qualification fails", passed=False, detail="no error"))
    except QualificationFailedError as exc:
        out.append(CheckResult(suite=suite, check="qualification fails", passed=True, detail=str(exc)))
    report = exact_sum_rule_holds(f1, f2, 0.0)
    ok = report.sum_set.unbounded_below and report.sum_set.unbounded_above
    out.append(CheckResult(suite=suite, check="sum subdifferential is R", passed=ok, detail=str(report.sum_set)))
    part = esub_interval(f1, 0.0, 0.0)
    out.append(CheckResult(suite=suite, check="part subdifferential empty", passed=part.is_empty, detail=str(part)))
    window = Interval.closed(-8.0, 8.0)
    oracle = oracle_esub_interval(add_functions(f1, f2), 0.0, 0.0, 101, window, 161)
    ok = oracle.clipped_below and oracle.clipped_above and not report.holds
    out.append(CheckResult(suite=suite, check="oracle full window", passed=ok, detail=str(oracle)))
    return out


def optimality_suite() -> List[CheckResult]:
    suite = "optimality"
    P = catalog.optimality_problem()
    out = []
    for eps in (0.0, 0.5, 1.0):

        def run(eps=eps) -> CheckResult:
            cert = optimality_certificate(P, 0.0, eps)
            ok = is_eps_solution(P, 0.0, eps) and abs(cert.eps1 + cert.eps2 - eps) <= 1e-10
            detail = f"eps1={_fmt(cert.eps1)} eps2={_fmt(cert.eps2)} xi={_fmt(cert.xi)}"
            return CheckResult(suite=suite, check=f"certificate eps={_fmt(eps)}", passed=ok, detail=detail)

        out.append(_guarded(suite, f"certificate eps={_fmt(eps)}", run))
    ok = not is_eps_solution(P, 1.0, 1.0)
    out.append(CheckResult(suite=suite, check="x=1 is not a 1-solution", passed=ok))
    for eps2 in (0.0, 0.5, 1.0, 2.0):
        s = enormal_interval(P.feasible, 0.0, eps2)
        ok = s.unbounded_below and s.hi == 0.0
        out.append(CheckResult(suite=suite, check=f"normal cone eps={_fmt(eps2)}", passed=ok, detail=str(s)))
    return out


def quadratic_suite(value_fn_grid: int = 1025) -> List[CheckResult]:
    suite = "sensitivity-quadratic"
    P = catalog.quadratic_problem()
    out = []
    for eps in (0.0, 0.25, 1.0):
        r = 2.0 * math.sqrt(eps)
        routes = {
            "unconstrained": lambda eps=eps: sensitivity_unconstrained(P, 0.0, eps).interval,
            "exact": lambda eps=eps: sensitivity_exact(P, 0.0, eps, 0.0),
            "direct": lambda eps=eps: value_function_esub_direct(P, 0.0, eps, value_fn_grid),
        }
        for name, route in routes.items():
            check = f"{name} eps={_fmt(eps)}"

            def run(route=route, check=check, r=r) -> CheckResult:
                s = route()
                return CheckResult(suite=suite, check=check, passed=_same_interval(s, -r, r, SENSITIVITY_TOL),
                                   detail=str(s))

            out.append(_guarded(suite, check, run))
    xs = np.linspace(-1.0, 1.0, 21)
    err = max(abs(value_function(P, float(x)) - x * x) for x in xs)
    out.append(CheckResult(suite=suite, check="m(x) = x^2", passed=err <= 1e-9, detail=_fmt(err)))
    return out


def cone_suite() -> List[CheckResult]:
    suite = "sensitivity-cone"
    P = catalog.cone_problem()
    out = []
    for eps in (0.0, 0.5, 1.0):
        check = f"constrained eps={_fmt(eps)}"

        def run(eps=eps, check=check) -> CheckResult:
            s = sensitivity_constrained(P, 0.0, eps).interval
            return CheckResult(suite=suite, check=check,
                               passed=_same_interval(s, -2.0 - eps, 2.0 + eps, SENSITIVITY_TOL), detail=str(s))

        out.append(_guarded(suite, check, run))
    xs = np.linspace(-1.0, 1.0, 21)
    err = max(abs(value_function(P, float(x)) - 2.0 * abs(x)) for x in xs)
    out.append(CheckResult(suite=suite, check="m(x) = 2|x|", passed=err <= 1e-9, detail=_fmt(err)))
    s = approx_solution_set(P, 0.0, 0.3)
    ok = _same_interval(s, 0.0, 0.2, 1e-9)
    out.append(CheckResult(suite=suite, check="S_0.3(0) = [0, 0.2]", passed=ok, detail=str(s)))
    u, v = np.meshgrid(np.arange(-20, 21) / 10.0, np.arange(-20, 21) / 10.0)
    ws = np.stack([u.ravel(), v.ravel()], axis=1)
    expected = ws[:, 1] <= -np.abs(ws[:, 0])
    for gamma in (0.0, 0.5):
        mask = enormal2_mask(P.constraint_graph, Vec2(x=0.0, y=0.0), gamma, ws)
        bad = int(np.count_nonzero((mask != expected) & (np.abs(ws[:, 1] + np.abs(ws[:, 0])) > TOL_EQ)))
        out.append(CheckResult(suite=suite, check=f"graph normals eps={_fmt(gamma)}", passed=bad == 0,
                               detail=f"{bad} mismatches"))
    return out


def coderivative_suite() -> List[CheckResult]:
    suite = "coderivative"
    cone = catalog.cone_graph()
    halves = catalog.halfplane_graphs()
    origin = Vec2(x=0.0, y=0.0)
    out = []
    meet = graph_intersection(list(halves))
    points = [Vec2(x=float(a), y=float(b)) for a in np.linspace(-2, 2, 9) for b in np.linspace(-2, 2, 9)]
    ok = all(meet.contains(p) == cone.contains(p) for p in points)
    out.append(CheckResult(suite=suite, check="halfplane intersection is the cone", passed=ok))

    def intersection() -> CheckResult:
        check = coderiv_intersection_check(list(halves), origin, 0.0, 2.0, 0.0)
        ok = check.member and check.agree and check.witness is not None
        return CheckResult(suite=suite, check="intersection witness u=0 v=2", passed=ok,
                           detail="" if check.witness is None else str(check.witness.model_dump()))

    out.append(_guarded(suite, "intersection witness u=0 v=2", intersection))

    def skewed() -> CheckResult:
        check = coderiv_intersection_check(list(halves), origin, 0.0, 1.0, 0.3)
        ok = check.member and check.agree and check.witness is not None
        return CheckResult(suite=suite, check="intersection witness u=0.3 v=1", passed=ok,
                           detail="" if check.witness is None else str(check.witness.model_dump()))

    out.append(_guarded(suite, "intersection witness u=0.3 v=1", skewed))

    def split() -> CheckResult:
        cert = coderiv_sum_decompose(cone, cone, 0.0, (0.0, 0.0), 0.0, 2.0, 1.0)
        ok = cert.matches(0.0, 1.0) and abs(cert.xi1 - 0.5) <= 1e-6
        return CheckResult(suite=suite, check="sum split u=1 v=2", passed=ok,
                           detail=f"u1={_fmt(cert.xi1)} u2={_fmt(cert.xi2)}")

    out.append(_guarded(suite, "sum split u=1 v=2", split))
    try:
        coderiv_sum_decompose(cone, cone, 0.0, (0.0, 0.0), 0.0, 2.0, 5.0)
        out.append(CheckResult(suite=suite, check="sum refutes u=5 v=2", passed=False, detail="split found"))
    except NotInSumSubdifferentialError as exc:
        out.append(CheckResult(suite=suite, check="sum refutes u=5 v=2", passed=True, detail=str(exc)))
    ok = all(ecoderiv_membership(g, origin, 0.0, 0.0, 0.0) for g in (cone, *halves))
    out.append(CheckResult(suite=suite, check="zero functional", passed=ok))
    return out


EXAMPLE_SUITES = {
    "ex1": ex1_suite,
    "sum": sum_suite,
    "counterexample": counterexample_suite,
    "optimality": optimality_suite,
    "sensitivity-quadratic": quadratic_suite,
    "sensitivity-cone": cone_suite,
    "coderivative": coderivative_suite,
}
