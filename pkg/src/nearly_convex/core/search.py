"""One-dimensional search kernels: ternary, golden-section and bisection.

The vectorized variants run one independent search per array element; they
back the conjugate (one search per slope) and the grid oracles.
"""

import math
from typing import Callable, Tuple

import numpy as np

from nearly_convex.core.constants import (
    BISECTION_WIDTH_STOP,
    BRACKET_LIMIT,
    GOLDEN_TOL,
    TERNARY_MAX_ITERATIONS,
    TERNARY_WIDTH_STOP,
)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

VecFn = Callable[[np.ndarray], np.ndarray]
ScalarFn = Callable[[float], float]


def bracket_concave(g: VecFn, start: np.ndarray, direction: float) -> Tuple[np.ndarray, np.ndarray]:
    """Find, per element, a finite end for maximizing a concave ``g`` along a half-line.

    Steps ``t = 1, 2, 4, ...`` from ``start`` until ``g`` stops increasing.
    Elements still increasing at ``BRACKET_LIMIT`` get ``unbounded=True``.

    Returns:
        (far_end, unbounded) arrays.
    """
    start = np.asarray(start, dtype=float)
    step = np.ones_like(start)
    done = np.zeros(start.shape, dtype=bool)
    far = start + direction * 2.0
    while True:
        near_val = g(start + direction * step)
        far_val = g(start + direction * 2.0 * step)
        scale = np.maximum(1.0, np.abs(near_val))
        stopped = ~(far_val > near_val + 1e-13 * scale)
        newly = stopped & ~done
        far = np.where(newly, start + direction * 2.0 * step, far)
        done |= stopped
        if done.all() or step.max() > BRACKET_LIMIT:
            break
        step = np.where(done, step, step * 2.0)
    unbounded = ~done
    far = np.where(unbounded, start + direction * 2.0 * step, far)
    return far, unbounded


def ternary_max_vec(g: VecFn, lo: np.ndarray, hi: np.ndarray,
                    iterations: int = TERNARY_MAX_ITERATIONS,
                    width_stop: float = TERNARY_WIDTH_STOP) -> Tuple[np.ndarray, np.ndarray]:
    """Maximize a concave ``g`` elementwise on finite intervals ``[lo, hi]``.

    The endpoints are evaluated as well so a maximum sitting on an end is
    found exactly.

    Returns:
        (argmax, max) arrays.
    """
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    a0, b0 = lo.copy(), hi.copy()
    scale = np.maximum(1.0, np.maximum(np.abs(lo), np.abs(hi)))
    for _ in range(iterations):
        if np.all(hi - lo <= width_stop * scale):
            break
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        g1, g2 = g(m1), g(m2)
        left = g1 < g2
        lo = np.where(left, m1, lo)
        hi = np.where(left, hi, m2)
    mid = 0.5 * (lo + hi)
    best_x, best = mid, g(mid)
    for end in (a0, b0):
        val = g(end)
        better = val > best
        best_x = np.where(better, end, best_x)
        best = np.where(better, val, best)
    return best_x, best


def ternary_min_anchored(g: ScalarFn, lo: float, hi: float, anchor: float,
                         iterations: int = TERNARY_MAX_ITERATIONS,
                         width_stop: float = TERNARY_WIDTH_STOP) -> Tuple[float, float]:
    """Minimize a convex, possibly +inf-valued ``g`` on ``[lo, hi]``.

    ``anchor`` is a point where ``g`` is finite; when both probes are +inf the
    bracket shrinks toward it.
    """
    for _ in range(iterations):
        if hi - lo <= width_stop * max(1.0, abs(lo), abs(hi)):
            break
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        g1, g2 = g(m1), g(m2)
        if math.isinf(g1) and math.isinf(g2):
            if anchor <= m1:
                hi = m1
            elif anchor >= m2:
                lo = m2
            else:
                lo, hi = m1, m2
        elif math.isinf(g1):
            lo = m1
        elif math.isinf(g2):
            hi = m2
        elif g1 < g2:
            hi = m2
        else:
            lo = m1
    x = 0.5 * (lo + hi)
    gx, ga = g(x), g(anchor)
    if ga < gx:
        return anchor, ga
    return x, gx


def golden_section_min(f: ScalarFn, a: float, b: float, tol: float = GOLDEN_TOL) -> Tuple[float, float]:
    """Golden-section search for the minimum of a unimodal ``f`` on ``[a, b]``.

    Both ends are compared with the interior estimate at the end.

    Returns:
        (argmin, min).
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    candidates = [a, b]
    if h > tol:
        n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
        c = a + INV_PHI_SQUARE * h
        d = a + INV_PHI * h
        yc, yd = f(c), f(d)
        for _ in range(n - 1):
            if yc < yd:
                b, d, yd = d, c, yc
                h = INV_PHI * h
                c = a + INV_PHI_SQUARE * h
                yc = f(c)
            else:
                a, c, yc = c, d, yd
                h = INV_PHI * h
                d = a + INV_PHI * h
                yd = f(d)
        candidates.append(0.5 * (a + b))
    values = [f(x) for x in candidates]
    k = int(np.argmin(values))
    return candidates[k], values[k]


def bisect_boundary_vec(inside: Callable[[np.ndarray], np.ndarray], x_in: np.ndarray,
                        x_out: np.ndarray, iterations: int = 60) -> np.ndarray:
    """Elementwise bisection for the boundary of ``inside`` between ``x_in`` (inside) and ``x_out``."""
    x_in = np.asarray(x_in, dtype=float).copy()
    x_out = np.asarray(x_out, dtype=float).copy()
    for _ in range(iterations):
        mid = 0.5 * (x_in + x_out)
        ok = np.asarray(inside(mid), dtype=bool)
        x_in = np.where(ok, mid, x_in)
        x_out = np.where(ok, x_out, mid)
    return x_in


def refine_level_crossing(g: Callable[[np.ndarray], np.ndarray], inside: float, outside: float,
                          threshold: float, points: int = 65, rounds: int = 16) -> float:
    """Shrink ``[inside, outside]`` around where a convex ``g`` crosses ``threshold``.

    Each round evaluates ``g`` on ``points`` equally spaced slopes at once and
    keeps the cell holding the first rejected one.
    """
    for _ in range(rounds):
        if abs(outside - inside) <= BISECTION_WIDTH_STOP * max(1.0, abs(inside)):
            break
        grid = np.linspace(inside, outside, points)
        ok = g(grid) <= threshold
        ok[0] = True
        if ok.all():
            return float(grid[-1])
        k = int(np.argmin(ok))
        inside, outside = float(grid[k - 1]), float(grid[k])
    return inside


def march_to_level(g: Callable[[np.ndarray], np.ndarray], start: float, direction: float,
                   threshold: float) -> float:
    """Boundary of ``{g <= threshold}`` on the ray from ``start`` (which is inside).

    Returns ``direction * inf`` when the level set does not close before
    ``BRACKET_LIMIT``.
    """
    step = 1e-3 * max(1.0, abs(start))
    inside = start
    while step <= BRACKET_LIMIT:
        probe = start + direction * step
        if g(np.array([probe]))[0] > threshold:
            return refine_level_crossing(g, inside, probe, threshold)
        inside = probe
        step *= 2.0
    return direction * math.inf
