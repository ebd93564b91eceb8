"""Legendre-Fenchel conjugate of a nearly convex function."""

import logging
import math
from functools import lru_cache
from typing import Union

import numpy as np

from nearly_convex.core.constants import CONJUGATE_CAP
from nearly_convex.core.expr import eval_expr
from nearly_convex.core.interval import INF
from nearly_convex.core.search import bracket_concave, ternary_max_vec
from nearly_convex.func.piecewise import NearlyConvexFn1D, Piece

logger = logging.getLogger("Conjugate")

ArrayLike = Union[float, np.ndarray]


def _piece_sup(piece: Piece, xi: np.ndarray) -> np.ndarray:
    """sup of xi*x - e(x) over the closure of the piece interval, per slope."""
    iv = piece.interval.closure()
    expr = piece.expr

    def g(x: np.ndarray) -> np.ndarray:
        return xi * x - eval_expr(expr, x)

    lo = np.full_like(xi, iv.lo)
    hi = np.full_like(xi, iv.hi)
    unbounded = np.zeros(xi.shape, dtype=bool)
    if not math.isfinite(iv.hi):
        start = lo if math.isfinite(iv.lo) else np.zeros_like(xi)
        hi, unb = bracket_concave(g, start, 1.0)
        unbounded |= unb
    if not math.isfinite(iv.lo):
        start = np.minimum(hi, 0.0) if not math.isfinite(iv.hi) else hi
        lo, unb = bracket_concave(g, start, -1.0)
        unbounded |= unb
    _, best = ternary_max_vec(g, lo, hi)
    return np.where(unbounded | (best > CONJUGATE_CAP), INF, best)


def _conjugate_many(f: NearlyConvexFn1D, xs: np.ndarray) -> np.ndarray:
    best = np.full(xs.shape, -INF)
    for piece in f.pieces:
        best = np.maximum(best, _piece_sup(piece, xs))
    return best


@lru_cache(maxsize=4096)
def _conjugate_at(f: NearlyConvexFn1D, xi: float) -> float:
    return float(_conjugate_many(f, np.array([xi]))[0])


def conjugate(f: NearlyConvexFn1D, xi: ArrayLike) -> ArrayLike:
    """phi*(xi) = sup_x {xi*x - phi(x)}.

    Computed on the domain closure with the piece formulas, so overrides
    never enter: an override only raises phi at one boundary point and the
    supremum over the rest of the domain already reaches the closure value.
    Single slopes are cached per function.

    Args:
        f: A valid nearly convex function.
        xi: One slope or a numpy array of slopes.

    Returns:
        The conjugate value(s); ``+inf`` where the supremum is unbounded.
    """
    xs = np.atleast_1d(np.asarray(xi, dtype=float))
    if xs.size == 1:
        value = _conjugate_at(f, float(xs.flat[0]))
        return value if np.isscalar(xi) else np.full(np.shape(xi), value)
    return _conjugate_many(f, xs)
