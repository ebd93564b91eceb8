"""eps-subdifferentials of the optimal value function m(x) = inf{f(x, y) : y in G(x)}.

Every route ends in a level set of a convex function of the slope xi. Along
the eta ladder the thresholds change but the function does not, so the
intersection over the ladder is the level set at the smallest threshold,
and the change from the second-to-last rung measures convergence.
"""

import logging
import math
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from nearly_convex.calculus.subdifferential import EtaLadder, esub_interval
from nearly_convex.core.config import config
from nearly_convex.core.constants import TOL_EQ, UNBOUNDED_SAMPLE_SPAN
from nearly_convex.core.errors import NotExactSolutionError, QualificationFailedError, ValueInfiniteError
from nearly_convex.core.interval import INF, Interval, IntervalSet
from nearly_convex.core.polyhedron import Vec2, common_relative_interior_point
from nearly_convex.core.search import bisect_boundary_vec, golden_section_min
from nearly_convex.func.conjugate import conjugate
from nearly_convex.func.piecewise import evaluate
from nearly_convex.func.separable import evaluate2, evaluate2_slice
from nearly_convex.problems.decomposition import decomposition_values, domain_polyhedron
from nearly_convex.problems.parametric import (
    ParametricProblem,
    constraint_slice,
    solution_samples,
    value_function,
)

logger = logging.getLogger("Sensitivity")

Representation = Literal["solution_set", "global"]

BISECTION_STEPS = 40


class SensitivityResult(BaseModel):
    """A sensitivity set with the endpoint change between the last two ladder rungs."""

    model_config = ConfigDict(frozen=True)

    interval: IntervalSet
    delta: float
    representation: str = "solution_set"


def _finite_value(P: ParametricProblem, x_bar: float) -> float:
    m = value_function(P, x_bar)
    if not math.isfinite(m):
        raise ValueInfiniteError(f"m({x_bar:g}) = {m:g} for {P.name}")
    return m


def _global_samples(P: ParametricProblem, x_bar: float, count: int) -> np.ndarray:
    region = P.objective.box[1].closure().intersect(constraint_slice(P, x_bar).closure())
    lo = region.lo if math.isfinite(region.lo) else -UNBOUNDED_SAMPLE_SPAN
    hi = region.hi if math.isfinite(region.hi) else UNBOUNDED_SAMPLE_SPAN
    return np.linspace(lo, hi, count)


def rung_values(P: ParametricProblem, x_bar: float, ladder: EtaLadder, representation: Representation,
                count: Optional[int] = None) -> List[float]:
    """Per rung, the worst (solution-set form) or best (global form) f(x_bar, y) over sampled y."""
    count = count or config.solution_set_samples
    g = constraint_slice(P, x_bar)
    values = []
    for eta in ladder.values:
        ys = solution_samples(P, x_bar, eta, count)
        if representation == "global":
            extra = _global_samples(P, x_bar, count)
            extra = extra[[g.contains(float(y), TOL_EQ) for y in extra]]
            ys = np.concatenate([ys, extra])
        fy = evaluate2_slice(P.objective, x_bar, ys)
        fy = fy[np.isfinite(fy)]
        values.append(float(np.max(fy) if representation == "solution_set" else np.min(fy)))
    return values


def _thresholds(eps: float, ladder: EtaLadder, values: List[float]) -> Tuple[float, float]:
    """Smallest threshold eps + eta - f(x_bar, y) over the whole ladder and over all but its last rung."""
    taus = [eps + eta - v for eta, v in zip(ladder.values, values)]
    final = min(taus)
    previous = min(taus[:-1]) if len(taus) > 1 else final
    return final, previous


def _endpoint_delta(a: IntervalSet, b: IntervalSet) -> float:
    if a.is_empty and b.is_empty:
        return 0.0
    if a.is_empty or b.is_empty:
        return INF
    gaps = [0.0 if x == y else abs(x - y) for x, y in ((a.lo, b.lo), (a.hi, b.hi))]
    return max(gaps)


def _check_eps(eps: float) -> None:
    if not eps >= 0:
        raise ValueError(f"epsilon must be nonnegative, got {eps:g}")


# ----------------------------------------------------------------------
# Constraint inactive: conjugate of f at (xi, 0)
# ----------------------------------------------------------------------
def _free_level_set(P: ParametricProblem, x_bar: float, tau: float) -> IntervalSet:
    """{xi : f*(xi, 0) - xi*x_bar <= tau}, read as an eps-subdifferential of f1 at x_bar."""
    F = P.objective
    shifted = tau + evaluate(F.f1, x_bar) - conjugate(F.f2, 0.0)
    if shifted < -TOL_EQ * max(1.0, abs(tau)):
        return IntervalSet.empty()
    return esub_interval(F.f1, x_bar, max(shifted, 0.0))


def _require_inactive(P: ParametricProblem) -> None:
    if P.constraint_graph is None:
        return
    bx, by = (iv.closure() for iv in P.objective.box)
    ends = (bx.lo, bx.hi, by.lo, by.hi)
    inactive = all(math.isfinite(e) for e in ends) and all(
        P.constraint_graph.contains(Vec2(x=x, y=y)) for x in (bx.lo, bx.hi) for y in (by.lo, by.hi)
    )
    if not inactive:
        raise ValueError(f"{P.name} has an active constraint; use sensitivity_constrained")


def sensitivity_unconstrained(P: ParametricProblem, x_bar: float, eps: float,
                              ladder: Optional[EtaLadder] = None,
                              representation: Representation = "solution_set") -> SensitivityResult:
    """d_eps m(x_bar) for an inactive constraint as the intersection over the ladder.

    For each eta, xi is kept when f*(xi, 0) + f(x_bar, y) - xi*x_bar <= eps + eta
    for every sampled y in S_eta(x_bar) (``"solution_set"``) or for some
    sampled y (``"global"``).

    Raises:
        ValueInfiniteError: if m(x_bar) is not finite.
    """
    _check_eps(eps)
    _require_inactive(P)
    _finite_value(P, x_bar)
    ladder = ladder or EtaLadder.geometric()
    final, previous = _thresholds(eps, ladder, rung_values(P, x_bar, ladder, representation))
    result = _free_level_set(P, x_bar, final)
    before = _free_level_set(P, x_bar, previous)
    delta = _endpoint_delta(result, before)
    logger.info("unconstrained sensitivity of %s at %g: %s (delta %g)", P.name, x_bar, result, delta)
    return SensitivityResult(interval=result, delta=delta, representation=representation)


def sensitivity_exact(P: ParametricProblem, x_bar: float, eps: float, y_bar: float) -> IntervalSet:
    """{xi : (xi, 0) in d_eps f(x_bar, y_bar)} for a solution y_bar of the inner problem.

    Raises:
        NotExactSolutionError: if f(x_bar, y_bar) differs from m(x_bar) or y_bar is infeasible.
    """
    _check_eps(eps)
    m = _finite_value(P, x_bar)
    fy = evaluate2(P.objective, Vec2(x=x_bar, y=y_bar))
    feasible = constraint_slice(P, x_bar).contains(y_bar, TOL_EQ)
    if not feasible or not math.isfinite(fy) or abs(fy - m) > TOL_EQ * max(1.0, abs(m)):
        raise NotExactSolutionError(f"f({x_bar:g}, {y_bar:g}) = {fy:g} but m({x_bar:g}) = {m:g}")
    return _free_level_set(P, x_bar, eps - fy)


# ----------------------------------------------------------------------
# Active constraint: subgradient plus graph normal
# ----------------------------------------------------------------------
def _level_set_from_table(xis: np.ndarray, h: np.ndarray, evaluate_h, tau: float,
                          window: Interval) -> IntervalSet:
    """Endpoints of {h <= tau} seeded on the grid and refined by bisection."""
    tol = TOL_EQ * max(1.0, abs(tau))
    ok = h <= tau + tol
    if not ok.any():
        k = int(np.argmin(h))
        lo, hi = xis[max(k - 1, 0)], xis[min(k + 1, len(xis) - 1)]
        seed, best = golden_section_min(lambda t: float(evaluate_h(np.array([t]))[0]), lo, hi)
        if best > tau + tol:
            return IntervalSet.empty()
        inside = np.array([seed, seed])
        outside = np.array([lo, hi])
        clipped = (False, False)
    else:
        idx = np.nonzero(ok)[0]
        first, last = int(idx[0]), int(idx[-1])
        inside = np.array([xis[first], xis[last]])
        outside = np.array([xis[max(first - 1, 0)], xis[min(last + 1, len(xis) - 1)]])
        clipped = (first == 0, last == len(xis) - 1)

    def accept(t: np.ndarray) -> np.ndarray:
        return evaluate_h(t) <= tau + tol

    ends = bisect_boundary_vec(accept, inside, outside, iterations=BISECTION_STEPS)
    lo = window.lo if clipped[0] else float(ends[0])
    hi = window.hi if clipped[1] else float(ends[1])
    return IntervalSet.from_bounds(lo, hi, clipped_below=clipped[0], clipped_above=clipped[1])


def sensitivity_constrained(P: ParametricProblem, x_bar: float, eps: float,
                            ladder: Optional[EtaLadder] = None,
                            representation: Representation = "solution_set",
                            xi_window: Optional[Interval] = None,
                            xi_grid: Optional[int] = None) -> SensitivityResult:
    """d_eps m(x_bar) through subgradients of f plus eps-normals to gph G.

    For each eta, xi is kept when (xi, 0) lies in d_g1 f(x_bar, y) + N_g2((x_bar, y); gph G)
    for some g1 + g2 = eps + eta, for every sampled y in S_eta(x_bar)
    (``"solution_set"``) or for some sampled y (``"global"``).

    Raises:
        QualificationFailedError: if ri dom f and ri gph G share no sampled point.
        ValueInfiniteError: if m(x_bar) is not finite.
    """
    _check_eps(eps)
    F = P.objective
    box = domain_polyhedron(F)
    graph = P.constraint_graph or box
    if common_relative_interior_point([box, graph]) is None:
        raise QualificationFailedError(f"ri(dom f) and ri(gph G) do not meet for {P.name}")
    _finite_value(P, x_bar)
    ladder = ladder or EtaLadder.geometric()
    window = xi_window or Interval.closed(config.xi_window_lo, config.xi_window_hi)
    xis = np.linspace(window.lo, window.hi, xi_grid or config.sens_xi_grid)
    values = rung_values(P, x_bar, ladder, representation, config.constrained_y_samples)
    final, previous = _thresholds(eps, ladder, values)

    def evaluate_h(t: np.ndarray) -> np.ndarray:
        return decomposition_values(F, graph, t, window).value - t * x_bar

    h = decomposition_values(F, graph, xis, window).value - xis * x_bar
    result = _level_set_from_table(xis, h, evaluate_h, final, window)
    before = _level_set_from_table(xis, h, evaluate_h, previous, window)
    delta = _endpoint_delta(result, before)
    logger.info("constrained sensitivity of %s at %g: %s (delta %g)", P.name, x_bar, result, delta)
    return SensitivityResult(interval=result, delta=delta, representation=representation)


# ----------------------------------------------------------------------
# Direct route: sample m and take the eps-subdifferential of its convex fit
# ----------------------------------------------------------------------
def _lower_hull(xs: np.ndarray, ys: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    hull: List[int] = []
    for i in range(len(xs)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(i)
    return xs[hull], ys[hull]


def value_function_esub_direct(P: ParametricProblem, x_bar: float, eps: float,
                               grid: Optional[int] = None) -> IntervalSet:
    """d_eps of the piecewise-linear convex fit of m sampled over its parameter range.

    The fit is the lower hull of the samples; its eps-subdifferential is
    decided at the hull nodes, with the end slopes standing in for the
    inequality at infinity on unbounded sides.

    Raises:
        ValueInfiniteError: if m(x_bar) is not finite.
    """
    _check_eps(eps)
    m_bar = _finite_value(P, x_bar)
    rng = P.objective.box[0].closure()
    if P.constraint_graph is not None:
        rng = rng.intersect(P.constraint_graph.x_range())
    lo = rng.lo if math.isfinite(rng.lo) else x_bar - UNBOUNDED_SAMPLE_SPAN
    hi = rng.hi if math.isfinite(rng.hi) else x_bar + UNBOUNDED_SAMPLE_SPAN
    xs = np.unique(np.concatenate([np.linspace(lo, hi, grid or config.value_fn_grid), [x_bar]]))
    ms = np.array([value_function(P, float(x)) for x in xs])
    keep = np.isfinite(ms)
    hx, hm = _lower_hull(xs[keep], ms[keep])
    lower, upper = -INF, INF
    right = hx > x_bar
    left = hx < x_bar
    if right.any():
        upper = float(np.min((hm[right] - m_bar + eps) / (hx[right] - x_bar)))
    if left.any():
        lower = float(np.max((hm[left] - m_bar + eps) / (hx[left] - x_bar)))
    if len(hx) >= 2:
        if math.isinf(rng.hi) and hx[-1] > x_bar:
            upper = min(upper, float((hm[-1] - hm[-2]) / (hx[-1] - hx[-2])))
        if math.isinf(rng.lo) and hx[0] < x_bar:
            lower = max(lower, float((hm[1] - hm[0]) / (hx[1] - hx[0])))
    result = IntervalSet.from_bounds(lower, upper)
    logger.debug("direct d_%g m(%g) = %s from %d hull nodes", eps, x_bar, result, len(hx))
    return result
