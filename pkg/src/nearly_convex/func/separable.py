"""Separable functions of two variables f(x, y) = f1(x) + f2(y) on a box."""

import math
from typing import Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from nearly_convex.core.interval import INF, Interval
from nearly_convex.core.polyhedron import Vec2
from nearly_convex.func.conjugate import conjugate
from nearly_convex.func.piecewise import NearlyConvexFn1D, Piece, add_affine, evaluate

ArrayLike = Union[float, np.ndarray]


class SeparableFn2D(BaseModel):
    """f1(x) + f2(y) on dom f1 x dom f2 with finitely many point overrides.

    An override value of ``+inf`` removes the point from the domain (the
    box minus a boundary point is still nearly convex).
    """

    model_config = ConfigDict(frozen=True)

    f1: NearlyConvexFn1D
    f2: NearlyConvexFn1D
    point_overrides: Tuple[Tuple[Vec2, float], ...] = ()
    name: str = "F"

    @model_validator(mode="after")
    def _check_overrides(self) -> "SeparableFn2D":
        bx, by = self.box
        for p, value in self.point_overrides:
            if not (bx.contains(p.x) and by.contains(p.y)):
                raise ValueError(f"override point ({p.x:g}, {p.y:g}) lies outside the box")
            on_edge = p.x in (bx.lo, bx.hi) or p.y in (by.lo, by.hi)
            if not on_edge:
                raise ValueError(f"override point ({p.x:g}, {p.y:g}) is not on the boundary of the box")
            base = evaluate(self.f1, p.x) + evaluate(self.f2, p.y)
            if value < base:
                raise ValueError(f"override at ({p.x:g}, {p.y:g}) is below the separable value {base:g}")
        return self

    @property
    def box(self) -> Tuple[Interval, Interval]:
        return self.f1.domain, self.f2.domain


def evaluate2(F: SeparableFn2D, p: Vec2) -> float:
    """f(p): +inf off the box, the override value at override points."""
    for q, value in F.point_overrides:
        if q.x == p.x and q.y == p.y:
            return value
    return evaluate(F.f1, p.x) + evaluate(F.f2, p.y)


def evaluate2_slice(F: SeparableFn2D, x: float, ys: np.ndarray) -> np.ndarray:
    """f(x, y) for a fixed x over an array of y values."""
    ys = np.asarray(ys, dtype=float)
    out = evaluate(F.f1, x) + evaluate(F.f2, ys)
    for q, value in F.point_overrides:
        if q.x == x:
            out = np.where(ys == q.y, value, out)
    return out


def conjugate2(F: SeparableFn2D, w: Union[Vec2, Tuple[ArrayLike, ArrayLike]]) -> ArrayLike:
    """f*(w) = f1*(w.x) + f2*(w.y); point overrides never change the supremum.

    ``w`` is a :class:`Vec2` or a pair of equally shaped numpy arrays.
    """
    if isinstance(w, Vec2):
        return conjugate(F.f1, w.x) + conjugate(F.f2, w.y)
    wx, wy = w
    return conjugate(F.f1, wx) + conjugate(F.f2, wy)


def y_slice(F: SeparableFn2D, x: float) -> NearlyConvexFn1D:
    """The one-variable function y -> f(x, y).

    Overrides at an end of the y-domain become overrides of the slice, and
    excluded points open that end. An override strictly inside the slice
    cannot change the infimum and is left out.
    """
    shift = evaluate(F.f1, x)
    if not math.isfinite(shift):
        raise ValueError(f"x={x:g} is outside the box")
    base = add_affine(F.f2, 0.0, shift)
    domain = base.domain
    overrides = dict(base.overrides)
    for q, value in F.point_overrides:
        if q.x != x or q.y not in (domain.lo, domain.hi):
            continue
        if value == INF:
            overrides.pop(q.y, None)
            if q.y == domain.lo:
                domain = Interval(lo=domain.lo, hi=domain.hi, lo_closed=False, hi_closed=domain.hi_closed)
            else:
                domain = Interval(lo=domain.lo, hi=domain.hi, lo_closed=domain.lo_closed, hi_closed=False)
        else:
            overrides[q.y] = value
    pieces = tuple(Piece(interval=p.interval.intersect(domain), expr=p.expr) for p in base.pieces)
    pieces = tuple(p for p in pieces if not p.interval.is_empty)
    return NearlyConvexFn1D(domain=domain, pieces=pieces, overrides=tuple(sorted(overrides.items())),
                            name=f"{F.name}({x:g}, .)")
