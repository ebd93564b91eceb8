"""Epsilon-subdifferentials of nearly convex functions on R.

Membership uses the conjugate characterization
``xi in d_eps f(x) <=> f*(xi) + f(x) - xi*x <= eps``; the brute-force
oracle checks the defining inequality on a grid instead.
"""

import logging
import math
from typing import Callable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from nearly_convex.core.config import config
from nearly_convex.core.constants import BRACKET_LIMIT, SECANT_MIN_STEP, TOL_EQ
from nearly_convex.core.errors import NonPositiveScalarError, OutOfDomainError
from nearly_convex.core.interval import INF, Interval, IntervalSet
from nearly_convex.core.search import golden_section_min
from nearly_convex.func.conjugate import conjugate
from nearly_convex.func.piecewise import NearlyConvexFn1D, closure_value, evaluate, one_sided_slopes
from nearly_convex.func.validation import sample_grid

logger = logging.getLogger("Calculus")

GapFn = Callable[[np.ndarray], np.ndarray]


class EtaLadder(BaseModel):
    """A strictly decreasing sequence of positive tolerances."""

    model_config = ConfigDict(frozen=True)

    values: Tuple[float, ...]

    @field_validator("values")
    @classmethod
    def _strictly_decreasing(cls, values: Tuple[float, ...]) -> Tuple[float, ...]:
        if not values:
            raise ValueError("a ladder needs at least one value")
        if any(v <= 0 for v in values):
            raise ValueError("ladder values must be positive")
        if any(b >= a for a, b in zip(values, values[1:])):
            raise ValueError("ladder values must be strictly decreasing")
        return values

    @classmethod
    def geometric(cls, depth: Optional[int] = None, start: float = 1.0) -> "EtaLadder":
        """``start * 2**-k`` for k = 0..depth (depth from the config by default)."""
        depth = config.eta_ladder_depth if depth is None else depth
        return cls(values=tuple(start * 2.0 ** (-k) for k in range(depth + 1)))

    @property
    def smallest(self) -> float:
        return self.values[-1]


def value_at(f: NearlyConvexFn1D, x_bar: float) -> float:
    """f(x_bar), raising :class:`OutOfDomainError` outside the domain."""
    fx = evaluate(f, x_bar)
    if not math.isfinite(fx):
        raise OutOfDomainError(f"{x_bar:g} is not in the domain {f.domain} of {f.name}")
    return fx


def _check_eps(eps: float) -> None:
    if not eps >= 0:
        raise ValueError(f"epsilon must be nonnegative, got {eps:g}")


def gap_function(f: NearlyConvexFn1D, x_bar: float) -> GapFn:
    """g(xi) = f*(xi) + f(x_bar) - xi*x_bar, convex and >= 0."""
    fx = value_at(f, x_bar)

    def g(xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        return conjugate(f, xi) + fx - xi * x_bar

    return g


def esub_membership(f: NearlyConvexFn1D, x_bar: float, eps: float, xi: float) -> bool:
    """Whether ``xi`` belongs to the eps-subdifferential of ``f`` at ``x_bar``."""
    _check_eps(eps)
    g = gap_function(f, x_bar)
    return bool(g(np.array([xi]))[0] <= eps + TOL_EQ)


def closure_subdifferential(f: NearlyConvexFn1D, x_bar: float) -> IntervalSet:
    """Exact subdifferential of cl(f) at ``x_bar`` from one-sided slopes."""
    left, right = one_sided_slopes(f, x_bar)
    if left == INF or right == -INF or left > right + TOL_EQ:
        return IntervalSet.empty()
    return IntervalSet.from_bounds(left, max(left, right))


def _secant_bound(f: NearlyConvexFn1D, x_bar: float, level: float, direction: float) -> float:
    """inf over s > 0 of (cl f(x_bar + direction*s) - level) / s.

    With ``level`` below cl f(x_bar) the quotient is unimodal in s, so one
    golden-section search over log s finds it. A finite domain end is
    evaluated exactly as well.
    """
    cl = f.closure_domain
    end = cl.hi if direction > 0 else cl.lo
    reach = abs(end - x_bar)

    def quotient(s: float) -> float:
        x = min(max(x_bar + direction * s, cl.lo), cl.hi)
        if x == x_bar:
            return INF
        return (closure_value(f, x) - level) / abs(x - x_bar)

    t_hi = math.log(min(reach, BRACKET_LIMIT))
    t_lo = min(math.log(SECANT_MIN_STEP), t_hi - 1.0)
    _, best = golden_section_min(lambda t: quotient(math.exp(t)), t_lo, t_hi)
    if math.isfinite(reach):
        best = min(best, (closure_value(f, end) - level) / reach)
    return best


def esub_interval(f: NearlyConvexFn1D, x_bar: float, eps: float) -> IntervalSet:
    """The eps-subdifferential of ``f`` at ``x_bar`` as a closed interval.

    A side is unbounded exactly when ``x_bar`` is the matching end of the
    domain closure and f(x_bar) - cl f(x_bar) < eps. When that gap equals
    eps the set is the subdifferential of cl f at ``x_bar``, which is empty
    if cl f has an infinite one-sided slope there. Otherwise each finite end
    is the extreme secant slope from (x_bar, f(x_bar) - eps) to the graph
    of cl f.

    Raises:
        OutOfDomainError: if ``x_bar`` is not in dom f.
    """
    _check_eps(eps)
    fx = value_at(f, x_bar)
    gap0 = fx - closure_value(f, x_bar)
    if gap0 > eps + TOL_EQ:
        logger.debug("gap %g exceeds eps %g at %g: empty", gap0, eps, x_bar)
        return IntervalSet.empty()
    if abs(gap0 - eps) <= TOL_EQ:
        return closure_subdifferential(f, x_bar)
    level = fx - eps
    cl = f.closure_domain
    lo = -INF if x_bar == cl.lo else -_secant_bound(f, x_bar, level, -1.0)
    hi = INF if x_bar == cl.hi else _secant_bound(f, x_bar, level, 1.0)
    result = IntervalSet.from_bounds(lo, hi)
    logger.debug("d_%g %s(%g) = %s", eps, f.name, x_bar, result)
    return result


def oracle_x_grid(f: NearlyConvexFn1D, size: int) -> np.ndarray:
    """Grid over dom f with the domain ends and override points included."""
    cl = f.closure_domain
    grid = sample_grid(f, size)
    extra = [pt for pt, _ in f.overrides] + [e for e in (cl.lo, cl.hi) if math.isfinite(e)]
    grid = np.unique(np.concatenate([grid, np.array(extra, dtype=float)]))
    values = evaluate(f, grid)
    keep = np.isfinite(values)
    return grid[keep]


def raw_inequality_holds(f: NearlyConvexFn1D, x_bar: float, eps: float, xi: float) -> bool:
    """xi*(x - x_bar) - eps <= f(x) - f(x_bar) on the oracle grid of dom f."""
    xs = oracle_x_grid(f, config.oracle_x_grid)
    fx = evaluate(f, x_bar)
    df = evaluate(f, xs) - fx
    tol = TOL_EQ * max(1.0, float(np.max(np.abs(df)))) if len(df) else TOL_EQ
    return bool(np.all(xi * (xs - x_bar) - eps <= df + tol))


def oracle_scan(f: NearlyConvexFn1D, x_bar: float, eps: float, x_grid_size: Optional[int] = None,
                xi_window: Optional[Interval] = None,
                xi_grid_size: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Check the defining inequality for every slope of a window grid.

    Returns:
        (xi_grid, accepted) arrays.
    """
    _check_eps(eps)
    fx = value_at(f, x_bar)
    x_grid_size = x_grid_size or config.oracle_x_grid
    xi_grid_size = xi_grid_size or config.oracle_xi_grid
    window = xi_window or Interval.closed(config.xi_window_lo, config.xi_window_hi)
    xs = oracle_x_grid(f, x_grid_size)
    dx = xs - x_bar
    df = evaluate(f, xs) - fx
    xis = np.linspace(window.lo, window.hi, xi_grid_size)
    accepted = np.zeros(xi_grid_size, dtype=bool)
    tol = TOL_EQ * max(1.0, float(np.max(np.abs(df))))
    for start in range(0, xi_grid_size, 256):
        chunk = xis[start : start + 256]
        excess = np.max(chunk[:, None] * dx[None, :] - df[None, :], axis=1)
        accepted[start : start + 256] = excess <= eps + tol
    return xis, accepted


def oracle_esub_interval(f: NearlyConvexFn1D, x_bar: float, eps: float, x_grid_size: Optional[int] = None,
                         xi_window: Optional[Interval] = None,
                         xi_grid_size: Optional[int] = None) -> IntervalSet:
    """Brute-force eps-subdifferential over a slope window.

    Accepted slopes touching an edge of the window are reported through the
    ``clipped_below`` / ``clipped_above`` flags.
    """
    xis, accepted = oracle_scan(f, x_bar, eps, x_grid_size, xi_window, xi_grid_size)
    idx = np.nonzero(accepted)[0]
    if not len(idx):
        return IntervalSet.empty()
    first, last = int(idx[0]), int(idx[-1])
    return IntervalSet.from_bounds(
        float(xis[first]),
        float(xis[last]),
        clipped_below=first == 0,
        clipped_above=last == len(xis) - 1,
    )


def esub_ladder(f: NearlyConvexFn1D, x_bar: float, ladder: Optional[EtaLadder] = None
                ) -> List[Tuple[float, IntervalSet]]:
    """eps-subdifferentials along a decreasing ladder of tolerances."""
    ladder = ladder or EtaLadder.geometric()
    return [(eps, esub_interval(f, x_bar, eps)) for eps in ladder.values]


def esub_limit(f: NearlyConvexFn1D, x_bar: float, ladder: Optional[EtaLadder] = None,
               xi_window: Optional[Interval] = None) -> IntervalSet:
    """Approximate the subdifferential as the intersection over the ladder.

    The sets shrink with eps, so the intersection is the set at the smallest
    rung. A finite endpoint that has escaped the slope window means the
    sets run off to infinity and their intersection is empty.
    """
    ladder = ladder or EtaLadder.geometric()
    window = xi_window or Interval.closed(config.xi_window_lo, config.xi_window_hi)
    result = esub_interval(f, x_bar, ladder.smallest)
    if result.is_empty:
        return result
    escaped_low = math.isfinite(result.hi) and result.hi < window.lo
    escaped_high = math.isfinite(result.lo) and result.lo > window.hi
    if escaped_low or escaped_high:
        logger.info("subdifferential of %s at %g is empty: endpoints left %s", f.name, x_bar, window)
        return IntervalSet.empty()
    return result


def scalar_rule(f: NearlyConvexFn1D, lam: float, x_bar: float, eps: float) -> IntervalSet:
    """d_eps(lam f)(x_bar) = lam * d_{eps/lam} f(x_bar).

    Raises:
        NonPositiveScalarError: if ``lam <= 0``.
    """
    if not lam > 0:
        raise NonPositiveScalarError(f"scaling factor must be positive, got {lam:g}")
    return esub_interval(f, x_bar, eps / lam).scale(lam)
