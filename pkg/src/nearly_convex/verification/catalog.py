"""Worked examples and randomly drawn catalog functions for the verification suites."""

from typing import Tuple

import numpy as np

from nearly_convex.core.expr import Expr, abs_, add, const, neg, scale, sq, sqrt, var
from nearly_convex.core.interval import Interval
from nearly_convex.core.polyhedron import Vec2, VPolyhedron2
from nearly_convex.func.piecewise import NearlyConvexFn1D, closure_value, make_function
from nearly_convex.func.separable import SeparableFn2D
from nearly_convex.problems.optimality import ConstrainedProblem
from nearly_convex.problems.parametric import ParametricProblem

INF = float("inf")


def _shift(c: float) -> Expr:
    """x - c."""
    return add(var(), const(-c))


def ex1_function() -> NearlyConvexFn1D:
    """-sqrt(x) on [0, 1) raised to 1 at x = 1."""
    return make_function(Interval.closed(0.0, 1.0), [(Interval(lo=0.0, hi=1.0, hi_closed=False), neg(sqrt(var())))],
                         {1.0: 1.0}, name="phi")


def neg_sqrt_function(name: str = "psi") -> NearlyConvexFn1D:
    """-sqrt(x) on [0, 1]."""
    return make_function(Interval.closed(0.0, 1.0), [(Interval.closed(0.0, 1.0), neg(sqrt(var())))], name=name)


def sum_pair() -> Tuple[NearlyConvexFn1D, NearlyConvexFn1D]:
    return ex1_function(), neg_sqrt_function()


def counterexample_pair() -> Tuple[NearlyConvexFn1D, NearlyConvexFn1D]:
    """-sqrt(x) on [0, 1] and -sqrt(-x) on [-1, 0]; the domains touch only at 0."""
    phi2 = make_function(Interval.closed(-1.0, 0.0), [(Interval.closed(-1.0, 0.0), neg(sqrt(neg(var()))))],
                         name="phi2")
    return neg_sqrt_function("phi1"), phi2


def optimality_problem() -> ConstrainedProblem:
    """|x| on [-1, 1) raised to 2 at x = 1, minimized over [0, inf)."""
    phi = make_function(Interval.closed(-1.0, 1.0), [(Interval(lo=-1.0, hi=1.0, hi_closed=False), abs_(var()))],
                        {1.0: 2.0}, name="phi")
    return ConstrainedProblem(objective=phi, feasible=Interval(lo=0.0, hi=INF))


def _box_fn(e: Expr, name: str) -> NearlyConvexFn1D:
    box = Interval.closed(-1.0, 1.0)
    return make_function(box, [(box, e)], name=name)


_HOLE = ((Vec2(x=0.5, y=1.0), INF),)


def quadratic_problem() -> ParametricProblem:
    """x^2 + y^2 on [-1, 1]^2 without (1/2, 1); the constraint is inactive."""
    F = SeparableFn2D(f1=_box_fn(sq(var()), "qx"), f2=_box_fn(sq(var()), "qy"), point_overrides=_HOLE, name="Q")
    return ParametricProblem(objective=F, name="Q")


def cone_graph() -> VPolyhedron2:
    """gph G for G(x) = {y : y >= |x|}."""
    return VPolyhedron2.from_points([(0.0, 0.0)], [(1.0, 1.0), (-1.0, 1.0)])


def halfplane_graphs() -> Tuple[VPolyhedron2, VPolyhedron2]:
    """{y >= x} and {y >= -x}; their intersection is the cone y >= |x|."""
    upper_right = VPolyhedron2.from_points([(0.0, 0.0)], [(1.0, 1.0), (-1.0, -1.0), (0.0, 1.0)])
    upper_left = VPolyhedron2.from_points([(0.0, 0.0)], [(1.0, -1.0), (-1.0, 1.0), (0.0, 1.0)])
    return upper_right, upper_left


def cone_problem() -> ParametricProblem:
    """|x|/2 + 3|y|/2 on [-1, 1]^2 without (1/2, 1), over y >= |x|."""
    F = SeparableFn2D(f1=_box_fn(scale(0.5, abs_(var())), "ax"), f2=_box_fn(scale(1.5, abs_(var())), "ay"),
                      point_overrides=_HOLE, name="P")
    return ParametricProblem(objective=F, constraint_graph=cone_graph(), name="P")


# ----------------------------------------------------------------------
# Random instances
# ----------------------------------------------------------------------
TEMPLATES = ("kink", "quadratic", "neg_sqrt", "two_slopes")


def _random_domain(rng: np.random.Generator) -> Interval:
    lo = float(np.round(rng.uniform(-2.0, 0.0), 3))
    width = float(np.round(rng.uniform(1.0, 3.0), 3))
    return Interval(lo=lo, hi=lo + width, hi_closed=bool(rng.random() < 0.7))


def random_function(rng: np.random.Generator, index: int = 0) -> NearlyConvexFn1D:
    """One catalog function drawn from ``rng``, sometimes with an override at the left end."""
    domain = _random_domain(rng)
    lo, hi = domain.lo, domain.hi
    kind = TEMPLATES[int(rng.integers(len(TEMPLATES)))]
    # kinks sit on odd thousandths, sample points on hundredths
    c = float(np.round(rng.uniform(lo + 0.1, hi - 0.1), 2)) + 0.005
    a = float(np.round(rng.uniform(0.25, 1.0), 3))
    b = float(np.round(rng.uniform(-1.0, 1.0), 3))
    if kind == "kink":
        pieces = [(domain, add(scale(a, abs_(_shift(c))), scale(b, var())))]
    elif kind == "quadratic":
        pieces = [(domain, add(scale(a, sq(_shift(c))), scale(b, var())))]
    elif kind == "neg_sqrt":
        pieces = [(domain, add(neg(scale(a, sqrt(_shift(lo)))), scale(b, var())))]
    else:
        left = Interval.closed(lo, c)
        right = Interval(lo=c, hi=hi, hi_closed=domain.hi_closed)
        steeper = b + a
        pieces = [
            (left, scale(b, var())),
            (right, add(scale(steeper, var()), const(-a * c))),
        ]
    f = make_function(domain, pieces, name=f"{kind}_{index}")
    if rng.random() < 0.3:
        bump = float(np.round(rng.uniform(0.1, 1.0), 3))
        f = make_function(domain, pieces, {lo: float(closure_value(f, lo)) + bump}, name=f.name)
    return f


def random_point(rng: np.random.Generator, f: NearlyConvexFn1D, interior: bool = True) -> float:
    """A point of dom f; ``interior`` keeps a quarter of the width away from both ends."""
    cl = f.closure_domain
    margin = 0.25 if interior else 0.0
    t = rng.uniform(margin, 1.0 - margin)
    x = float(np.round(cl.lo + t * (cl.hi - cl.lo), 2))
    return x if f.domain.contains(x) else cl.lo
