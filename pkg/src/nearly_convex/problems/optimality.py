"""Constrained minimization on R, eps-solutions and optimality certificates."""

import logging
import math
from typing import Callable

from pydantic import BaseModel, ConfigDict, model_validator

from nearly_convex.calculus.normals import enormal_interval
from nearly_convex.calculus.subdifferential import raw_inequality_holds
from nearly_convex.calculus.sum_rule import check_qualification, sum_rule_decompose
from nearly_convex.core.constants import BRACKET_LIMIT, TOL_EQ
from nearly_convex.core.errors import (
    InfeasibleIntersectionError,
    InfeasiblePointError,
    NoSplitFoundError,
    NotEpsSolutionError,
)
from nearly_convex.core.interval import INF, Interval
from nearly_convex.core.search import golden_section_min
from nearly_convex.func.piecewise import NearlyConvexFn1D, closure_value, evaluate, indicator_function

logger = logging.getLogger("Optimality")

# Endpoints of the golden-section bracket are snapped within this distance.
SNAP_TOL = 1e-9


class MinimizeResult(BaseModel):
    """Infimum of a function over a set, where it is (nearly) reached, and whether it is attained."""

    model_config = ConfigDict(frozen=True)

    value: float
    argmin: float
    attained: bool


class ConstrainedProblem(BaseModel):
    """inf objective(x) subject to x in feasible."""

    model_config = ConfigDict(frozen=True)

    objective: NearlyConvexFn1D
    feasible: Interval

    @model_validator(mode="after")
    def _check_problem(self) -> "ConstrainedProblem":
        if self.objective.domain.intersect(self.feasible).is_empty:
            raise ValueError(f"dom {self.objective.name} does not meet the feasible set {self.feasible}")
        if minimize_on(self.objective, self.feasible).value == -INF:
            raise ValueError(f"{self.objective.name} is not bounded below on {self.feasible}")
        return self


class OptimalityCertificate(BaseModel):
    """eps1 + eps2 = eps with xi in d_eps1 phi(x_bar) and -xi in N_eps2(x_bar; S)."""

    model_config = ConfigDict(frozen=True)

    eps1: float
    eps2: float
    xi: float


def _bracket_side(h: Callable[[float], float], start: float, direction: float) -> float:
    """Walk away from ``start`` until the convex ``h`` stops decreasing.

    Returns ``direction * inf`` when ``h`` decreases without bound.
    """
    step = 1.0
    prev, prev_val = start, h(start)
    while step <= BRACKET_LIMIT:
        probe = start + direction * step
        val = h(probe)
        if val >= prev_val:
            return probe
        drop = prev_val - val
        prev, prev_val = probe, val
        step *= 2.0
    # still falling at the limit: unbounded unless the decrease has died out
    return direction * INF if drop > 1.0 else prev


def minimize_on(f: NearlyConvexFn1D, S: Interval) -> MinimizeResult:
    """inf of ``f`` over ``S`` by golden-section search on the closed convex base.

    When the infimum is reached only at a point outside ``S ∩ dom f`` (an
    open end, or an override sitting above the base) it is returned with
    ``attained=False``.

    Raises:
        InfeasibleIntersectionError: if ``S`` does not meet dom f.
    """
    region = f.domain.intersect(S)
    if region.is_empty:
        raise InfeasibleIntersectionError(f"{S} does not meet dom {f.name} = {f.domain}")
    if region.is_singleton:
        return MinimizeResult(value=evaluate(f, region.lo), argmin=region.lo, attained=True)
    cl = region.closure()

    def h(t: float) -> float:
        return float(closure_value(f, t))

    lo, hi = cl.lo, cl.hi
    start = region.interior_point()
    if math.isinf(lo):
        lo = _bracket_side(h, start, -1.0)
    if math.isinf(hi):
        hi = _bracket_side(h, start, 1.0)
    if math.isinf(lo) or math.isinf(hi):
        logger.warning("%s decreases without bound on %s", f.name, S)
        return MinimizeResult(value=-INF, argmin=lo if math.isinf(lo) else hi, attained=False)
    x, value = golden_section_min(h, lo, hi)
    for end in (cl.lo, cl.hi):
        if math.isfinite(end) and abs(x - end) <= SNAP_TOL * max(1.0, abs(end)):
            x, value = end, h(end)
    for point, override in f.overrides:
        if region.contains(point) and override < value:
            x, value = point, override
    actual = evaluate(f, x) if region.contains(x) else INF
    attained = actual <= value + TOL_EQ * max(1.0, abs(value))
    if not attained:
        inward = x + (1e-6 if x == cl.lo else -1e-6) * max(1.0, abs(x))
        if region.contains(inward) and evaluate(f, inward) <= value + TOL_EQ * max(1.0, abs(value)):
            x, attained = inward, True
    logger.debug("inf of %s over %s is %g at %g (attained=%s)", f.name, S, value, x, attained)
    return MinimizeResult(value=value, argmin=x, attained=attained)


def _require_feasible(P: ConstrainedProblem, x_bar: float) -> float:
    fx = evaluate(P.objective, x_bar)
    if not (P.feasible.contains(x_bar) and math.isfinite(fx)):
        raise InfeasiblePointError(f"{x_bar:g} is not in {P.feasible} ∩ dom {P.objective.name}")
    return fx


def is_eps_solution(P: ConstrainedProblem, x_bar: float, eps: float) -> bool:
    """Whether objective(x_bar) <= inf over the feasible set + eps.

    Raises:
        InfeasiblePointError: if ``x_bar`` is not feasible or not in dom objective.
    """
    if not eps >= 0:
        raise ValueError(f"epsilon must be nonnegative, got {eps:g}")
    fx = _require_feasible(P, x_bar)
    best = minimize_on(P.objective, P.feasible)
    return bool(fx <= best.value + eps + TOL_EQ)


def optimality_certificate(P: ConstrainedProblem, x_bar: float, eps: float) -> OptimalityCertificate:
    """Certificate of 0 in d_eps1 phi(x_bar) + N_eps2(x_bar; S) with eps1 + eps2 = eps.

    The split comes from the sum rule applied to phi and the indicator of S
    at slope 0; both halves are re-checked against the raw defining
    inequalities.

    Raises:
        QualificationFailedError: if ri dom phi and ri S do not meet.
        InfeasiblePointError: if ``x_bar`` is not feasible.
        NotEpsSolutionError: if ``x_bar`` is not an eps-solution.
    """
    indicator = indicator_function(P.feasible, "S")
    check_qualification(P.objective, indicator)
    if not is_eps_solution(P, x_bar, eps):
        raise NotEpsSolutionError(f"{x_bar:g} is not a {eps:g}-solution")
    split = sum_rule_decompose(P.objective, indicator, x_bar, eps, 0.0)
    xi = split.xi1
    normal = enormal_interval(P.feasible, x_bar, split.eps2)
    if not (raw_inequality_holds(P.objective, x_bar, split.eps1, xi) and normal.contains(-xi)):
        raise NoSplitFoundError(f"certificate at {x_bar:g} failed the raw-inequality check", 0)
    certificate = OptimalityCertificate(eps1=split.eps1, eps2=split.eps2, xi=xi)
    logger.info("optimality certificate at %g: %s", x_bar, certificate)
    return certificate
