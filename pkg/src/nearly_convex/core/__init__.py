"""Foundation types: intervals, planar polyhedra, expressions and search kernels."""

from nearly_convex.core.config import config
from nearly_convex.core.expr import Expr, eval_expr
from nearly_convex.core.interval import (
    INF,
    ExtReal,
    Interval,
    IntervalSet,
    relative_interior_interval,
    ri_intersect_nonempty,
)
from nearly_convex.core.polyhedron import Vec2, VPolyhedron2, common_relative_interior_point, support_polyhedron

__all__ = [
    "config",
    "Expr",
    "eval_expr",
    "INF",
    "ExtReal",
    "Interval",
    "IntervalSet",
    "relative_interior_interval",
    "ri_intersect_nonempty",
    "Vec2",
    "VPolyhedron2",
    "support_polyhedron",
    "common_relative_interior_point",
]
