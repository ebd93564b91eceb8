"""Polyhedral graphs of set-valued maps R => R: sums and intersections.

A graph is a :class:`VPolyhedron2` whose vertical slices are the values
G(x). Both constructions work slice by slice on a shared grid of
breakpoints and read the result back as vertices plus recession rays.
"""

import logging
import math
from typing import List, Sequence, Tuple

import numpy as np

from nearly_convex.core.constants import TOL_EQ
from nearly_convex.core.errors import EmptySetError, InfeasibleIntersectionError
from nearly_convex.core.interval import INF, Interval
from nearly_convex.core.polyhedron import VPolyhedron2

logger = logging.getLogger("Graphs")


def _slices(graph: VPolyhedron2, xs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    bounds = [graph.slice_at(float(x)) for x in xs]
    lo = np.array([b.lo if not b.is_empty else INF for b in bounds])
    hi = np.array([b.hi if not b.is_empty else -INF for b in bounds])
    return lo, hi


def _add_ends(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise a + b of slice ends; inf + (-inf) gives nan."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    clash = np.isinf(a) & np.isinf(b) & (a != b)
    return np.add(a, b, out=np.full(np.broadcast(a, b).shape, np.nan), where=~clash)


def _common_range(graphs: Sequence[VPolyhedron2]) -> Interval:
    rng = Interval.real_line()
    for g in graphs:
        rng = rng.intersect(g.x_range())
    return rng


def _breakpoints(graphs: Sequence[VPolyhedron2], rng: Interval) -> List[float]:
    xs = {float(v.x) for g in graphs for v in g.vertices if rng.contains(v.x, TOL_EQ)}
    xs |= {e for e in (rng.lo, rng.hi) if math.isfinite(e)}
    if not xs:
        xs.add(0.0)
    return sorted(xs)


def _tail_slope(values_at_edge: float, values_beyond: float) -> float:
    if not (math.isfinite(values_at_edge) and math.isfinite(values_beyond)):
        return math.nan
    return values_beyond - values_at_edge


def _assemble(xs: np.ndarray, lo: np.ndarray, hi: np.ndarray, rng: Interval,
              lo_next: Tuple[float, float], hi_next: Tuple[float, float]) -> VPolyhedron2:
    """Vertices from finite slice ends; rays from unbounded slices and tails.

    ``lo_next`` / ``hi_next`` hold the slice ends one unit beyond the first
    and last breakpoint (left tail, right tail).
    """
    vertices: List[Tuple[float, float]] = []
    for x, a, b in zip(xs, lo, hi):
        if math.isfinite(a):
            vertices.append((x, a))
        if math.isfinite(b):
            vertices.append((x, b))
    rays: List[Tuple[float, float]] = []
    if np.any(np.isinf(hi)):
        rays.append((0.0, 1.0))
    if np.any(np.isinf(lo)):
        rays.append((0.0, -1.0))
    if math.isinf(rng.hi):
        for edge, beyond in ((lo[-1], lo_next[1]), (hi[-1], hi_next[1])):
            slope = _tail_slope(edge, beyond)
            if not math.isnan(slope):
                rays.append((1.0, slope))
    if math.isinf(rng.lo):
        for edge, beyond in ((lo[0], lo_next[0]), (hi[0], hi_next[0])):
            slope = _tail_slope(edge, beyond)
            if not math.isnan(slope):
                rays.append((-1.0, slope))
    if not vertices:
        # every slice is the whole line
        vertices.append((float(xs[0]), 0.0))
    return VPolyhedron2.from_points(vertices, rays)


def graph_sum(g1: VPolyhedron2, g2: VPolyhedron2) -> VPolyhedron2:
    """gph(F1 + F2) = {(x, y1 + y2) : (x, y_i) in gph F_i}.

    Raises:
        EmptySetError: if dom F1 and dom F2 do not meet.
    """
    rng = _common_range((g1, g2))
    if rng.is_empty:
        raise EmptySetError("the domains of the two maps do not intersect")
    xs = np.array(_breakpoints((g1, g2), rng))
    lo1, hi1 = _slices(g1, xs)
    lo2, hi2 = _slices(g2, xs)
    edges = np.array([xs[0] - 1.0, xs[-1] + 1.0])
    elo1, ehi1 = _slices(g1, edges)
    elo2, ehi2 = _slices(g2, edges)
    lo_next = tuple(_add_ends(elo1, elo2))
    hi_next = tuple(_add_ends(ehi1, ehi2))
    return _assemble(xs, _add_ends(lo1, lo2), _add_ends(hi1, hi2), rng, lo_next, hi_next)


def _linear_crossings(xs: np.ndarray, rows: np.ndarray) -> List[float]:
    """Points where two piecewise-linear rows cross between grid nodes."""
    found: List[float] = []
    for k in range(len(xs) - 1):
        a, b = xs[k], xs[k + 1]
        ya, yb = rows[:, k], rows[:, k + 1]
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                if not np.all(np.isfinite([ya[i], ya[j], yb[i], yb[j]])):
                    continue
                da, db = ya[i] - ya[j], yb[i] - yb[j]
                if da * db < 0:
                    found.append(float(a + (b - a) * da / (da - db)))
    return found


def _tail_crossings(at_edge: np.ndarray, beyond: np.ndarray, edge: float, direction: float) -> List[float]:
    """Crossings of rows that are linear past ``edge`` (values one unit further in ``beyond``)."""
    finite = np.isfinite(at_edge) & np.isfinite(beyond)
    at_edge, beyond = at_edge[finite], beyond[finite]
    slopes = beyond - at_edge
    found: List[float] = []
    for i in range(len(at_edge)):
        for j in range(i + 1, len(at_edge)):
            ds = slopes[i] - slopes[j]
            if ds == 0:
                continue
            t = -(at_edge[i] - at_edge[j]) / ds
            if t > 0:
                found.append(edge + direction * t)
    return found


def graph_intersection(graphs: Sequence[VPolyhedron2]) -> VPolyhedron2:
    """gph(∩ F_i) = ∩ gph F_i, slices intersected over a shared breakpoint grid.

    Raises:
        InfeasibleIntersectionError: if the graphs have no common point.
    """
    if not graphs:
        raise ValueError("need at least one graph")
    rng = _common_range(graphs)
    if rng.is_empty:
        raise InfeasibleIntersectionError("the domains of the maps do not intersect")
    base = np.array(_breakpoints(graphs, rng))

    def rows_at(xs: np.ndarray) -> np.ndarray:
        rows = []
        for g in graphs:
            rows.extend(_slices(g, xs))
        return np.array(rows)

    rows = rows_at(base)
    extra = _linear_crossings(base, rows)
    if math.isinf(rng.hi):
        extra += _tail_crossings(rows[:, -1], rows_at(np.array([base[-1] + 1.0]))[:, 0], base[-1], 1.0)
    if math.isinf(rng.lo):
        extra += _tail_crossings(rows[:, 0], rows_at(np.array([base[0] - 1.0]))[:, 0], base[0], -1.0)
    xs = np.array(sorted(set(base.tolist()) | {x for x in extra if rng.contains(x, TOL_EQ)}))
    los, his = zip(*(_slices(g, xs) for g in graphs))
    lo = np.max(np.array(los), axis=0)
    hi = np.min(np.array(his), axis=0)
    feasible = lo <= hi + TOL_EQ * np.maximum(1.0, np.abs(np.where(np.isfinite(lo), lo, 0.0)))
    if not feasible.any():
        raise InfeasibleIntersectionError("the graphs have no common point")
    hi = np.where(feasible & (lo > hi), lo, hi)
    idx = np.nonzero(feasible)[0]
    first, last = int(idx[0]), int(idx[-1])
    sub = Interval(
        lo=rng.lo if first == 0 and math.isinf(rng.lo) else float(xs[first]),
        hi=rng.hi if last == len(xs) - 1 and math.isinf(rng.hi) else float(xs[last]),
    )
    edges = np.array([xs[first] - 1.0, xs[last] + 1.0])
    edge_slices = [_slices(g, edges) for g in graphs]
    lo_next = tuple(np.max([s[0] for s in edge_slices], axis=0))
    hi_next = tuple(np.min([s[1] for s in edge_slices], axis=0))
    keep = slice(first, last + 1)
    result = _assemble(xs[keep], lo[keep], hi[keep], sub, lo_next, hi_next)
    logger.debug("intersection of %d graphs has %d vertices", len(graphs), len(result.vertices))
    return result
