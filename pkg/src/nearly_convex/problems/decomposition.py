"""Decomposing (xi, 0) into an eps-subgradient of f plus an eps-normal to gph G.

For a separable objective and a polyhedral graph the union over all splits
gamma1 + gamma2 = T of

    d_gamma1 f(x, y) + N_gamma2((x, y); gph G)

contains (xi, 0) exactly when

    D(xi) = min_a [f1*(a1) + f2*(a2) + sigma_G(xi - a1, -a2)]

satisfies D(xi) - xi*x + f(x, y) <= T. D is convex in xi and does not
depend on y, so one table of D answers every (y, T) query. The minimizing
a is the subgradient half of the split; the rest is the normal half.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from nearly_convex.calculus.normals import enormal2_membership
from nearly_convex.calculus.subdifferential import esub_membership
from nearly_convex.core.config import config
from nearly_convex.core.constants import TOL_EQ
from nearly_convex.core.errors import NoSplitFoundError
from nearly_convex.core.interval import Interval
from nearly_convex.core.polyhedron import Vec2, VPolyhedron2
from nearly_convex.func.conjugate import conjugate
from nearly_convex.func.piecewise import evaluate
from nearly_convex.func.separable import SeparableFn2D, evaluate2, y_slice

logger = logging.getLogger("Sensitivity")

REFINE_ROUNDS = 10
REFINE_POINTS = 33


class DecompositionValues(BaseModel):
    """D(xi) with its minimizing subgradient (a1, a2), per slope."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    xi: np.ndarray
    value: np.ndarray
    a1: np.ndarray
    a2: np.ndarray


class SensitivitySplit(BaseModel):
    """gamma1 + gamma2 = total with (a1, a2) in d_gamma1 f and (xi - a1, -a2) in N_gamma2.

    ``alpha`` is the share of gamma1 spent on the x-coordinate.
    """

    model_config = ConfigDict(frozen=True)

    gamma1: float
    gamma2: float
    alpha: float
    a1: float
    a2: float


def domain_polyhedron(F: SeparableFn2D) -> VPolyhedron2:
    """The closed box of F as a V-polyhedron; infinite sides become rays."""
    bx, by = (iv.closure() for iv in F.box)

    def ends(iv: Interval) -> Tuple[list, list]:
        finite = [e for e in (iv.lo, iv.hi) if math.isfinite(e)] or [0.0]
        rays = []
        if math.isinf(iv.lo):
            rays.append(-1.0)
        if math.isinf(iv.hi):
            rays.append(1.0)
        return finite, rays

    xs, rx = ends(bx)
    ys, ry = ends(by)
    vertices = [(x, y) for x in xs for y in ys]
    rays = [(r, 0.0) for r in rx] + [(0.0, r) for r in ry]
    return VPolyhedron2.from_points(vertices, rays)


def _half_width(window: Interval) -> float:
    return 2.0 * max(1.0, abs(window.lo), abs(window.hi))


def _grid_totals(F: SeparableFn2D, graph: VPolyhedron2, xis: np.ndarray, a1: np.ndarray,
                 a2: np.ndarray) -> np.ndarray:
    """f1*(a1) + f2*(a2) + sigma(xi - a1, -a2) for per-slope axes a1, a2 of shape (K, n)."""
    c1 = conjugate(F.f1, a1)
    c2 = conjugate(F.f2, a2)
    k, n = a1.shape
    w1 = np.broadcast_to(xis[:, None, None] - a1[:, :, None], (k, n, n))
    w2 = np.broadcast_to(-a2[:, None, :], (k, n, n))
    sigma = graph.support_many(np.stack([w1.ravel(), w2.ravel()], axis=1)).reshape(k, n, n)
    return c1[:, :, None] + c2[:, None, :] + sigma


def _best(totals: np.ndarray, a1: np.ndarray, a2: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    k, n, _ = totals.shape
    flat = totals.reshape(k, n * n)
    idx = np.argmin(flat, axis=1)
    rows = np.arange(k)
    return flat[rows, idx], a1[rows, idx // n], a2[rows, idx % n]


def decomposition_values(F: SeparableFn2D, graph: VPolyhedron2, xis: np.ndarray,
                         window: Optional[Interval] = None) -> DecompositionValues:
    """D(xi) for every slope in ``xis`` by a grid search over (a1, a2) with local refinement.

    The coarse grid spans twice the slope window on both axes
    (``config.subsplit_grid`` points each); every refinement round re-centres
    a finer grid on the current best pair.
    """
    window = window or Interval.closed(config.xi_window_lo, config.xi_window_hi)
    xis = np.atleast_1d(np.asarray(xis, dtype=float))
    half = _half_width(window)
    axis = np.linspace(-half, half, config.subsplit_grid)
    grid = np.broadcast_to(axis, (len(xis), len(axis)))
    value, a1, a2 = _best(_grid_totals(F, graph, xis, grid, grid), grid, grid)
    step = axis[1] - axis[0]
    offsets = np.linspace(-4.0, 4.0, REFINE_POINTS)
    for _ in range(REFINE_ROUNDS):
        g1 = a1[:, None] + step * offsets
        g2 = a2[:, None] + step * offsets
        value, a1, a2 = _best(_grid_totals(F, graph, xis, g1, g2), g1, g2)
        step *= 8.0 / (REFINE_POINTS - 1)
    return DecompositionValues(xi=xis, value=value, a1=a1, a2=a2)


def constrained_split_witness(F: SeparableFn2D, graph: VPolyhedron2, x_bar: float, y: float, xi: float,
                              total: float, window: Optional[Interval] = None) -> SensitivitySplit:
    """A split of (xi, 0) with tolerance ``total`` at (x_bar, y), re-checked through both memberships.

    Raises:
        NoSplitFoundError: if the best decomposition exceeds ``total`` or fails verification.
    """
    found = decomposition_values(F, graph, np.array([xi]), window)
    a1, a2 = float(found.a1[0]), float(found.a2[0])
    fx = evaluate(F.f1, x_bar)
    fxy = evaluate2(F, Vec2(x=x_bar, y=y))
    alpha = max(0.0, conjugate(F.f1, a1) + fx - a1 * x_bar)
    beta = max(0.0, conjugate(F.f2, a2) + fxy - fx - a2 * y)
    gamma1 = alpha + beta
    gamma2 = total - gamma1
    w = Vec2(x=xi - a1, y=-a2)
    p = Vec2(x=x_bar, y=y)
    resolution = config.subsplit_grid
    if gamma2 < -TOL_EQ:
        raise NoSplitFoundError(f"no split of ({xi:g}, 0) within {total:g}", resolution)
    gamma2 = max(gamma2, 0.0)
    ok = (
        esub_membership(F.f1, x_bar, alpha, a1)
        and esub_membership(y_slice(F, x_bar), y, beta, a2)
        and enormal2_membership(graph, p, gamma2, w)
    )
    if not ok:
        raise NoSplitFoundError(f"split of ({xi:g}, 0) failed verification", resolution)
    split = SensitivitySplit(gamma1=gamma1, gamma2=gamma2, alpha=alpha, a1=a1, a2=a2)
    logger.debug("split of (%g, 0) at (%g, %g): %s", xi, x_bar, y, split)
    return split
