"""Parametric problems min{f(x, y) : y in G(x)} and their optimal value function."""

import logging
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from nearly_convex.core.config import config
from nearly_convex.core.constants import TOL_EQ, UNBOUNDED_SAMPLE_SPAN
from nearly_convex.core.errors import ValueInfiniteError
from nearly_convex.core.interval import INF, Interval, IntervalSet
from nearly_convex.core.polyhedron import Vec2, VPolyhedron2
from nearly_convex.core.search import march_to_level
from nearly_convex.func.piecewise import NearlyConvexFn1D, closure_value, evaluate
from nearly_convex.func.separable import SeparableFn2D, evaluate2_slice, y_slice
from nearly_convex.problems.optimality import (
    ConstrainedProblem,
    MinimizeResult,
    OptimalityCertificate,
    minimize_on,
    optimality_certificate,
)

logger = logging.getLogger("Parametric")


class ParametricProblem(BaseModel):
    """Minimize ``objective(x, .)`` over the slice G(x) of ``constraint_graph``.

    Without a graph the constraint is inactive and G(x) = R.
    """

    model_config = ConfigDict(frozen=True)

    objective: SeparableFn2D
    constraint_graph: Optional[VPolyhedron2] = None
    name: str = "P"

    @model_validator(mode="after")
    def _check_slices(self) -> "ParametricProblem":
        if self.constraint_graph is None:
            return self
        bx = self.objective.box[0].closure()
        rng = self.constraint_graph.x_range().intersect(bx)
        if rng.is_empty:
            raise ValueError("the constraint graph does not meet the box of the objective")
        lo = rng.lo if math.isfinite(rng.lo) else rng.hi - UNBOUNDED_SAMPLE_SPAN
        hi = rng.hi if math.isfinite(rng.hi) else lo + UNBOUNDED_SAMPLE_SPAN
        for x in np.linspace(lo, hi, 17):
            s = self.constraint_graph.slice_at(float(x))
            if s.is_empty or not math.isfinite(s.lo) or not math.isfinite(s.hi):
                continue
            mid = 0.5 * (s.lo + s.hi)
            if not self.constraint_graph.contains(Vec2(x=float(x), y=mid)):
                raise ValueError(f"the slice of G at x={x:g} is not an interval")
        return self

    @property
    def unconstrained(self) -> bool:
        return self.constraint_graph is None


def constraint_slice(P: ParametricProblem, x: float) -> Interval:
    """G(x) as an interval (R when the problem is unconstrained)."""
    if P.constraint_graph is None:
        return Interval.real_line()
    return P.constraint_graph.slice_at(x)


def inner_problem(P: ParametricProblem, x: float) -> Optional[ConstrainedProblem]:
    """The one-variable problem (f(x, .), G(x)); None when it is infeasible."""
    if not math.isfinite(evaluate(P.objective.f1, x)):
        return None
    g = constraint_slice(P, x)
    fn = y_slice(P.objective, x)
    if g.is_empty or fn.domain.intersect(g).is_empty:
        return None
    return ConstrainedProblem(objective=fn, feasible=g)


def inner_minimum(P: ParametricProblem, x: float) -> Optional[MinimizeResult]:
    problem = inner_problem(P, x)
    if problem is None:
        return None
    return minimize_on(problem.objective, problem.feasible)


def value_function(P: ParametricProblem, x: float) -> float:
    """m(x) = inf{f(x, y) : y in G(x)}, +inf when the slice is empty."""
    best = inner_minimum(P, x)
    return INF if best is None else best.value


def _sublevel(fn: NearlyConvexFn1D, region: Interval, start: float, threshold: float) -> IntervalSet:
    cl = region.closure()

    def g(ys: np.ndarray) -> np.ndarray:
        ys = np.asarray(ys, dtype=float)
        inside = (ys >= cl.lo) & (ys <= cl.hi)
        return np.where(inside, closure_value(fn, ys), INF)

    lo = march_to_level(g, start, -1.0, threshold)
    hi = march_to_level(g, start, 1.0, threshold)
    for end in (cl.lo, cl.hi):
        if math.isfinite(end):
            if abs(lo - end) <= TOL_EQ * max(1.0, abs(end)):
                lo = end
            if abs(hi - end) <= TOL_EQ * max(1.0, abs(end)):
                hi = end
    return IntervalSet.from_bounds(lo, hi)


def approx_solution_set(P: ParametricProblem, x_bar: float, eta: float) -> IntervalSet:
    """S_eta(x_bar) = {y in G(x_bar) : f(x_bar, y) <= m(x_bar) + eta} as a closed interval.

    The set is returned as its closure; points excluded by an override are
    dropped by :func:`solution_samples`.

    Raises:
        ValueInfiniteError: if m(x_bar) is not finite.
    """
    if not eta >= 0:
        raise ValueError(f"eta must be nonnegative, got {eta:g}")
    problem = inner_problem(P, x_bar)
    if problem is None:
        raise ValueInfiniteError(f"m({x_bar:g}) = +inf for {P.name}")
    best = minimize_on(problem.objective, problem.feasible)
    if not math.isfinite(best.value):
        raise ValueInfiniteError(f"m({x_bar:g}) = {best.value:g} for {P.name}")
    region = problem.objective.domain.intersect(problem.feasible)
    threshold = best.value + eta + TOL_EQ * max(1.0, abs(best.value))
    return _sublevel(problem.objective, region, best.argmin, threshold)


def solution_set(P: ParametricProblem, x_bar: float) -> IntervalSet:
    """S(x_bar): minimizers of the inner problem, empty when the infimum is not attained."""
    best = inner_minimum(P, x_bar)
    if best is None or not math.isfinite(best.value):
        raise ValueInfiniteError(f"m({x_bar:g}) is not finite for {P.name}")
    if not best.attained:
        return IntervalSet.empty()
    return approx_solution_set(P, x_bar, 0.0)


def solution_samples(P: ParametricProblem, x_bar: float, eta: float, count: Optional[int] = None) -> np.ndarray:
    """Feasible points of S_eta(x_bar): an even grid including both ends, excluded points dropped."""
    count = count or config.solution_set_samples
    s = approx_solution_set(P, x_bar, eta)
    lo, hi = s.lo, s.hi
    if math.isinf(lo) and math.isinf(hi):
        lo, hi = -UNBOUNDED_SAMPLE_SPAN, UNBOUNDED_SAMPLE_SPAN
    elif math.isinf(lo):
        lo = hi - UNBOUNDED_SAMPLE_SPAN
    elif math.isinf(hi):
        hi = lo + UNBOUNDED_SAMPLE_SPAN
    ys = np.unique(np.linspace(lo, hi, count))
    m = value_function(P, x_bar)
    g = constraint_slice(P, x_bar)
    values = evaluate2_slice(P.objective, x_bar, ys)
    keep = np.isfinite(values) & (values <= m + eta + TOL_EQ * max(1.0, abs(m)))
    keep &= np.array([g.contains(float(y), TOL_EQ) for y in ys], dtype=bool)
    if not keep.any():
        best = inner_minimum(P, x_bar)
        return np.array([best.argmin])
    return ys[keep]


def parametric_certificate(P: ParametricProblem, x_bar: float, y_bar: float,
                           eps: float) -> OptimalityCertificate:
    """Optimality certificate in y for the slice problem (f(x_bar, .), G(x_bar)).

    Raises:
        ValueInfiniteError: if the slice problem is infeasible.
        QualificationFailedError: if ri dom f(x_bar, .) and ri G(x_bar) do not meet.
        NotEpsSolutionError: if ``y_bar`` is not an eps-solution of the slice problem.
    """
    problem = inner_problem(P, x_bar)
    if problem is None:
        raise ValueInfiniteError(f"the slice problem of {P.name} at x={x_bar:g} is infeasible")
    return optimality_certificate(problem, y_bar, eps)
