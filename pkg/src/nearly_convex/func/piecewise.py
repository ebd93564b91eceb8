"""Nearly convex functions on R: a convex piecewise base plus boundary overrides."""

import logging
import math
from functools import cached_property
from typing import List, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from nearly_convex.core.errors import EmptySetError, NonPositiveScalarError
from nearly_convex.core.expr import Expr, add, const, directional_derivative, eval_expr, scale, var
from nearly_convex.core.interval import INF, Interval

logger = logging.getLogger("Functions")

ArrayLike = Union[float, np.ndarray]


class Piece(BaseModel):
    """One branch of a piecewise formula, valid on ``interval``."""

    model_config = ConfigDict(frozen=True)

    interval: Interval
    expr: Expr


class NearlyConvexFn1D(BaseModel):
    """phi = convex piecewise base on ``domain`` with finitely many boundary overrides.

    Pieces are ordered left to right; neighbours may share one endpoint.
    Together with the override points they cover the domain. Override
    points are endpoints of the domain that belong to it.
    """

    model_config = ConfigDict(frozen=True)

    domain: Interval
    pieces: Tuple[Piece, ...]
    overrides: Tuple[Tuple[float, float], ...] = Field(default=())
    name: str = "f"

    @model_validator(mode="after")
    def _check_structure(self) -> "NearlyConvexFn1D":
        if self.domain.is_empty:
            raise ValueError("domain must be nonempty")
        if not self.pieces and not self.overrides:
            raise ValueError("a function needs at least one piece")
        for point, value in self.overrides:
            if not math.isfinite(value):
                raise ValueError(f"override at {point:g} must be finite")
            if point not in (self.domain.lo, self.domain.hi) or not self.domain.contains(point):
                raise ValueError(f"override point {point:g} is not a boundary point of the domain")
        return self

    # ------------------------------------------------------------------
    # Derived data
    # ------------------------------------------------------------------
    @cached_property
    def override_map(self) -> dict:
        return dict(self.overrides)

    @cached_property
    def closure_domain(self) -> Interval:
        return self.domain.closure()

    @cached_property
    def breakpoints(self) -> List[float]:
        """Sorted finite piece endpoints inside the domain closure."""
        pts = set()
        for p in self.pieces:
            for end in (p.interval.lo, p.interval.hi):
                if math.isfinite(end):
                    pts.add(end)
        for end in (self.domain.lo, self.domain.hi):
            if math.isfinite(end):
                pts.add(end)
        return sorted(pts)

    def without_overrides(self) -> "NearlyConvexFn1D":
        return self.model_copy(update={"overrides": ()})


def _piece_values(f: NearlyConvexFn1D, x: np.ndarray, use_closure: bool) -> np.ndarray:
    out = np.full(x.shape, INF)
    for piece in f.pieces:
        iv = piece.interval.closure() if use_closure else piece.interval
        if use_closure:
            mask = (x >= iv.lo) & (x <= iv.hi) & ~np.isfinite(out)
        else:
            lo_ok = (x >= iv.lo) if iv.lo_closed else (x > iv.lo)
            hi_ok = (x <= iv.hi) if iv.hi_closed else (x < iv.hi)
            mask = lo_ok & hi_ok & ~np.isfinite(out)
        if np.any(mask):
            out[mask] = eval_expr(piece.expr, x[mask])
    return out


def evaluate(f: NearlyConvexFn1D, x: ArrayLike) -> ArrayLike:
    """phi(x): override values at override points, +inf outside the domain."""
    scalar = np.isscalar(x)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = _piece_values(f, xs, use_closure=False)
    dom = f.domain
    lo_ok = (xs >= dom.lo) if dom.lo_closed else (xs > dom.lo)
    hi_ok = (xs <= dom.hi) if dom.hi_closed else (xs < dom.hi)
    out = np.where(lo_ok & hi_ok, out, INF)
    for point, value in f.overrides:
        out = np.where(xs == point, value, out)
    return float(out[0]) if scalar else out


def closure_value(f: NearlyConvexFn1D, x: ArrayLike) -> ArrayLike:
    """Value of the closed convex hull cl(phi): piece limits on the domain closure."""
    scalar = np.isscalar(x)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    cl = f.closure_domain
    out = _piece_values(f, xs, use_closure=True)
    inside = (xs >= cl.lo) & (xs <= cl.hi)
    out = np.where(inside, out, INF)
    return float(out[0]) if scalar else out


# ----------------------------------------------------------------------
# Builders
# ----------------------------------------------------------------------
def make_function(domain: Interval, pieces: List[Tuple[Interval, Expr]],
                  overrides: dict = None, name: str = "f") -> NearlyConvexFn1D:
    return NearlyConvexFn1D(
        domain=domain,
        pieces=tuple(Piece(interval=iv, expr=e) for iv, e in pieces),
        overrides=tuple(sorted((overrides or {}).items())),
        name=name,
    )


def indicator_function(region: Interval, name: str = "indicator") -> NearlyConvexFn1D:
    """delta_S: zero on ``region``, +inf elsewhere."""
    return make_function(region, [(region, const(0.0))], name=name)


def scale_function(lam: float, f: NearlyConvexFn1D) -> NearlyConvexFn1D:
    """lam * phi for lam > 0."""
    if not lam > 0:
        raise NonPositiveScalarError(f"scaling factor must be positive, got {lam:g}")
    return NearlyConvexFn1D(
        domain=f.domain,
        pieces=tuple(Piece(interval=p.interval, expr=scale(lam, p.expr)) for p in f.pieces),
        overrides=tuple((pt, lam * v) for pt, v in f.overrides),
        name=f"{lam:g}*{f.name}",
    )


def add_affine(f: NearlyConvexFn1D, slope: float, offset: float = 0.0) -> NearlyConvexFn1D:
    """phi(x) + slope * x + offset."""
    affine = add(scale(slope, var()), const(offset))
    return NearlyConvexFn1D(
        domain=f.domain,
        pieces=tuple(Piece(interval=p.interval, expr=add(p.expr, affine)) for p in f.pieces),
        overrides=tuple((pt, v + slope * pt + offset) for pt, v in f.overrides),
        name=f.name,
    )


def add_functions(f1: NearlyConvexFn1D, f2: NearlyConvexFn1D) -> NearlyConvexFn1D:
    """Materialize phi1 + phi2 on dom phi1 ∩ dom phi2.

    Pieces are pairwise intersections of the operands' pieces; override
    points of either operand that survive in the common domain carry the
    summed values.

    Raises:
        EmptySetError: when the domains do not meet.
    """
    domain = f1.domain.intersect(f2.domain)
    if domain.is_empty:
        raise EmptySetError("the domains of the two functions do not intersect")
    wide: List[Piece] = []
    points: List[Piece] = []
    for p in f1.pieces:
        for q in f2.pieces:
            iv = p.interval.intersect(q.interval).intersect(domain)
            if iv.is_empty:
                continue
            piece = Piece(interval=iv, expr=add(p.expr, q.expr))
            (points if iv.is_singleton else wide).append(piece)
    for piece in points:
        if not any(w.interval.contains(piece.interval.lo) for w in wide):
            wide.append(piece)
    wide.sort(key=lambda pc: (pc.interval.lo, pc.interval.hi))
    override_points = {pt for pt, _ in f1.overrides} | {pt for pt, _ in f2.overrides}
    overrides = []
    for pt in sorted(override_points):
        if domain.contains(pt):
            overrides.append((pt, evaluate(f1, pt) + evaluate(f2, pt)))
    if not wide:
        # a single point reached only through overrides
        pt, value = overrides[0]
        wide = [Piece(interval=Interval.point(pt), expr=const(value))]
        overrides = []
    summed = NearlyConvexFn1D(domain=domain, pieces=tuple(wide), overrides=tuple(overrides),
                              name=f"{f1.name}+{f2.name}")
    logger.debug("materialized %s on %s with %d pieces", summed.name, domain, len(wide))
    return summed


def one_sided_slopes(f: NearlyConvexFn1D, x: float) -> Tuple[float, float]:
    """Left and right derivatives of cl(phi) at ``x`` from the piece formulas.

    An end of the domain closure has no derivative on its outer side; the
    returned value there is -inf (left end) or +inf (right end), which is
    exactly the corresponding bound of the subdifferential of cl(phi).
    """
    cl = f.closure_domain
    left, right = -INF, INF
    for piece in f.pieces:
        iv = piece.interval.closure()
        if x > cl.lo and iv.lo < x <= iv.hi:
            left = -directional_derivative(piece.expr, x, -1.0)
        if x < cl.hi and iv.lo <= x < iv.hi:
            right = directional_derivative(piece.expr, x, 1.0)
    return left, right
