"""Epsilon-normal sets to intervals and planar polyhedra, and the epigraph bridge."""

import math

import numpy as np

from nearly_convex.calculus.subdifferential import value_at
from nearly_convex.core.constants import TOL_EQ
from nearly_convex.core.errors import PointNotInSetError
from nearly_convex.core.interval import INF, Interval, IntervalSet
from nearly_convex.core.polyhedron import Vec2, VPolyhedron2
from nearly_convex.func.conjugate import conjugate
from nearly_convex.func.piecewise import NearlyConvexFn1D


def enormal_interval(omega: Interval, x_bar: float, eps: float) -> IntervalSet:
    """N_eps(x_bar; omega) = {xi : xi*(x - x_bar) <= eps for all x in omega}.

    Raises:
        PointNotInSetError: if ``x_bar`` is not in ``omega``.
    """
    if not omega.contains(x_bar):
        raise PointNotInSetError(f"{x_bar:g} is not in {omega}")
    if not eps >= 0:
        raise ValueError(f"epsilon must be nonnegative, got {eps:g}")
    if omega.hi == x_bar:
        hi = INF
    elif math.isinf(omega.hi):
        hi = 0.0
    else:
        hi = eps / (omega.hi - x_bar)
    if omega.lo == x_bar:
        lo = -INF
    elif math.isinf(omega.lo):
        lo = 0.0
    else:
        lo = -eps / (x_bar - omega.lo)
    return IntervalSet.from_bounds(lo, hi)


def _require_member(omega: VPolyhedron2, p_bar: Vec2) -> None:
    if not omega.contains(p_bar):
        raise PointNotInSetError(f"({p_bar.x:g}, {p_bar.y:g}) is not in the polyhedron")


def enormal2_membership(omega: VPolyhedron2, p_bar: Vec2, eps: float, w: Vec2) -> bool:
    """Whether ``w`` is an eps-normal to ``omega`` at ``p_bar``: sigma(w) - <w, p_bar> <= eps.

    Raises:
        PointNotInSetError: if ``p_bar`` is not in ``omega``.
    """
    _require_member(omega, p_bar)
    return bool(omega.support(w) - w.dot(p_bar) <= eps + TOL_EQ)


def enormal2_mask(omega: VPolyhedron2, p_bar: Vec2, eps: float, ws: np.ndarray) -> np.ndarray:
    """Vectorized :func:`enormal2_membership` over an (n, 2) array of directions."""
    _require_member(omega, p_bar)
    ws = np.atleast_2d(np.asarray(ws, dtype=float))
    excess = omega.support_many(ws) - ws @ np.array([p_bar.x, p_bar.y])
    return excess <= eps + TOL_EQ


def epigraph_support(f: NearlyConvexFn1D, u: float, t: float) -> float:
    """Support function of epi f at (u, -t).

    t > 0 gives t * f*(u / t); t = 0 gives the support of dom f; t < 0 is +inf.
    """
    if t > 0:
        return t * conjugate(f, u / t)
    if t < 0:
        return INF
    dom = f.closure_domain
    if u > 0:
        return u * dom.hi
    if u < 0:
        return u * dom.lo
    return 0.0


def epi_membership_check(f: NearlyConvexFn1D, x_bar: float, eps: float, u: float) -> bool:
    """Whether (u, -1) is an eps-normal to epi f at (x_bar, f(x_bar)).

    This is the coderivative description of d_eps f(x_bar) through the
    epigraphical mapping; it agrees with ``esub_membership``.

    Raises:
        OutOfDomainError: if ``x_bar`` is not in dom f.
    """
    fx = value_at(f, x_bar)
    return bool(epigraph_support(f, u, 1.0) - (u * x_bar - fx) <= eps + TOL_EQ)
