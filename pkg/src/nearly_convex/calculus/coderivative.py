"""Epsilon-coderivatives of polyhedral set-valued maps and their calculus rules."""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel
from scipy.optimize import linprog

from nearly_convex.calculus.graphs import graph_intersection, graph_sum
from nearly_convex.calculus.normals import enormal2_membership
from nearly_convex.calculus.sum_rule import SplitCertificate
from nearly_convex.core.constants import TOL_EQ
from nearly_convex.core.errors import (
    NoSplitFoundError,
    NotInSumSubdifferentialError,
    PointNotInSetError,
    QualificationFailedError,
)
from nearly_convex.core.interval import ri_intersect_nonempty
from nearly_convex.core.polyhedron import Vec2, VPolyhedron2, common_relative_interior_point

logger = logging.getLogger("Coderivative")

_LP_OPTIONS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}


def ecoderiv_membership(graph: VPolyhedron2, p_bar: Vec2, eps: float, v: float, u: float) -> bool:
    """Whether u is in D*_eps F(p_bar)(v), i.e. (u, -v) is an eps-normal to gph F at p_bar."""
    return enormal2_membership(graph, p_bar, eps, Vec2(x=u, y=-v))


def _excess(graph: VPolyhedron2, p_bar: Vec2, w: np.ndarray) -> float:
    """sigma(w) - <w, p_bar>: the smallest eps for which w is an eps-normal."""
    return float(graph.support_many(w[None, :])[0] - w @ p_bar.as_array())


def _require_member(graph: VPolyhedron2, p_bar: Vec2) -> None:
    if not graph.contains(p_bar):
        raise PointNotInSetError(f"({p_bar.x:g}, {p_bar.y:g}) is not in the graph")


def _split_lp(graphs: Sequence[VPolyhedron2], points: Sequence[Vec2], a_eq: np.ndarray, b_eq: np.ndarray,
              eps: float, center: np.ndarray) -> Optional[np.ndarray]:
    """Directions w_1..w_p with a_eq @ (w_1, ..., w_p) = b_eq and summed excess at most eps.

    Variables are (w, t, s): t_i bounds the excess of w_i through the vertex
    rows <w_i, v_k - p_i> <= t_i and the ray rows <w_i, r> <= 0. The first
    solve minimises sum t; the second keeps sum t within eps and minimises
    the L1 distance s to ``center``.

    Returns:
        A (p, 2) array, or None when the least summed excess exceeds eps.
    """
    p = len(graphs)
    nw = 2 * p
    n = nw + p + nw
    rows: List[np.ndarray] = []
    for i, (graph, q) in enumerate(zip(graphs, points)):
        for d in graph.vertex_array - q.as_array():
            row = np.zeros(n)
            row[2 * i:2 * i + 2] = d
            row[nw + i] = -1.0
            rows.append(row)
        for r in graph.ray_array:
            row = np.zeros(n)
            row[2 * i:2 * i + 2] = r
            rows.append(row)
    a_ub = np.array(rows)
    b_ub = np.zeros(len(rows))
    a_eq_full = np.hstack([a_eq, np.zeros((len(a_eq), n - nw))])
    bounds = [(None, None)] * nw + [(0.0, None)] * (p + nw)
    excess_cost = np.zeros(n)
    excess_cost[nw:nw + p] = 1.0
    first = linprog(excess_cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq_full, b_eq=b_eq, bounds=bounds,
                    method="highs", options=_LP_OPTIONS)
    if first.status != 0 or first.fun > eps + TOL_EQ:
        return None
    eye = np.eye(nw)
    gap = np.zeros((nw, p))
    closeness = np.vstack([np.hstack([eye, gap, -eye]), np.hstack([-eye, gap, -eye])])
    a_ub2 = np.vstack([a_ub, closeness, excess_cost])
    b_ub2 = np.concatenate([b_ub, center, -center, [max(eps, first.fun)]])
    distance_cost = np.zeros(n)
    distance_cost[nw + p:] = 1.0
    second = linprog(distance_cost, A_ub=a_ub2, b_ub=b_ub2, A_eq=a_eq_full, b_eq=b_eq, bounds=bounds,
                     method="highs", options=_LP_OPTIONS)
    chosen = second if second.status == 0 else first
    if chosen is first:
        logger.warning("closest split failed (%s); keeping the least-excess split", second.message)
    return chosen.x[:nw].reshape(p, 2)


def coderiv_sum_decompose(g1: VPolyhedron2, g2: VPolyhedron2, x_bar: float, y_bars: Tuple[float, float],
                          eps: float, v: float, u: float) -> SplitCertificate:
    """Split u in D*_eps(F1 + F2)(x_bar, y1 + y2)(v) as u1 + u2 with u_i in D*_eps_i F_i(x_bar, y_i)(v).

    Solved as a linear program over u1: among the splits whose excesses sum
    to at most eps, the one with u1 closest to u/2 wins. eps1 is the value
    closest to eps/2 that still covers the excess of u1.

    Returns:
        A certificate with ``xi1``/``xi2`` holding u1/u2.

    Raises:
        QualificationFailedError: if ri dom F1 and ri dom F2 do not meet.
        PointNotInSetError: if (x_bar, y_i) is not on gph F_i.
        NotInSumSubdifferentialError: if u is not in the coderivative of the sum.
        NoSplitFoundError: if the split fails its own membership check.
    """
    if not ri_intersect_nonempty(g1.x_range(), g2.x_range()):
        raise QualificationFailedError("ri(dom F1) and ri(dom F2) do not intersect")
    p1, p2 = Vec2(x=x_bar, y=y_bars[0]), Vec2(x=x_bar, y=y_bars[1])
    _require_member(g1, p1)
    _require_member(g2, p2)
    total = graph_sum(g1, g2)
    p_sum = Vec2(x=x_bar, y=y_bars[0] + y_bars[1])
    if not ecoderiv_membership(total, p_sum, eps, v, u):
        raise NotInSumSubdifferentialError(f"{u:g} is not in D*_{eps:g}(F1+F2)({v:g})")
    # w1 = (u1, -v), w2 = (u - u1, -v)
    a_eq = np.array([[1.0, 0.0, 1.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0]])
    b_eq = np.array([u, -v, -v])
    center = np.array([0.5 * u, -v, 0.5 * u, -v])
    split = _split_lp([g1, g2], [p1, p2], a_eq, b_eq, eps, center)
    if split is None:
        raise NoSplitFoundError(f"no split of u={u:g} found for v={v:g}", 0)
    u1 = float(split[0, 0])
    e1 = max(0.0, _excess(g1, p1, np.array([u1, -v])))
    e2 = max(0.0, _excess(g2, p2, np.array([u - u1, -v])))
    eps1 = min(max(0.5 * eps, e1), max(e1, eps - e2))
    cert = SplitCertificate(eps1=eps1, eps2=max(0.0, eps - eps1), xi1=u1, xi2=u - u1)
    if not (ecoderiv_membership(g1, p1, cert.eps1, v, cert.xi1)
            and ecoderiv_membership(g2, p2, cert.eps2, v, cert.xi2)):
        raise NoSplitFoundError(f"split of u={u:g} for v={v:g} failed verification", 0)
    logger.info("coderivative sum split: %s", cert)
    return cert


class IntersectionWitness(BaseModel):
    """Per-graph tolerances and coderivative pairs (eps_i, u_i, v_i)."""

    eps: List[float]
    u: List[float]
    v: List[float]


class IntersectionCheck(BaseModel):
    """Direct membership in D*_eps(∩ F_i) and the decomposed witness, if any."""

    member: bool
    witness: Optional[IntersectionWitness] = None
    agree: bool


def _intersection_witness(graphs: Sequence[VPolyhedron2], p_bar: Vec2, eps: float, v: float,
                          u: float) -> Optional[IntersectionWitness]:
    p = len(graphs)
    a_eq = np.hstack([np.eye(2)] * p)
    center = np.tile([u / p, -v / p], p)
    split = _split_lp(graphs, [p_bar] * p, a_eq, np.array([u, -v]), eps, center)
    if split is None:
        return None
    needed = [max(0.0, _excess(g, p_bar, w)) for g, w in zip(graphs, split)]
    if sum(needed) > eps + TOL_EQ:
        return None
    slack = max(0.0, eps - sum(needed)) / p
    return IntersectionWitness(eps=[e + slack for e in needed], u=[float(w[0]) for w in split],
                               v=[float(-w[1]) for w in split])


def coderiv_intersection_check(graphs: Sequence[VPolyhedron2], p_bar: Vec2, eps: float, v: float,
                               u: float) -> IntersectionCheck:
    """Check u in D*_eps F(p_bar)(v) for F = ∩ F_i directly and through a decomposition.

    The decomposition looks for eps_1 + ... + eps_p = eps and v_1 + ... + v_p = v
    with sum of u_i = u and u_i in D*_eps_i F_i(p_bar)(v_i). It is one linear
    program over the pairs (u_i, -v_i); among the witnesses it returns the one
    closest to (u/p, v/p). Up to three maps are supported.

    Raises:
        QualificationFailedError: if no sampled point lies in every ri(gph F_i).
        PointNotInSetError: if ``p_bar`` is not on every graph.
        NoSplitFoundError: if u is a member but no witness is found.
    """
    p = len(graphs)
    if not 1 <= p <= 3:
        raise ValueError("intersection witnesses support between one and three maps")
    for g in graphs:
        _require_member(g, p_bar)
    if common_relative_interior_point(graphs) is None:
        raise QualificationFailedError("no sampled point lies in the relative interior of every graph")
    member = ecoderiv_membership(graph_intersection(graphs), p_bar, eps, v, u)
    if p == 1:
        ok = ecoderiv_membership(graphs[0], p_bar, eps, v, u)
        witness = IntersectionWitness(eps=[eps], u=[u], v=[v]) if ok else None
    else:
        witness = _intersection_witness(graphs, p_bar, eps, v, u)
    agree = member == (witness is not None)
    if member and witness is None:
        raise NoSplitFoundError(f"u={u:g} is in the coderivative but no witness was found", 0)
    if not agree:
        logger.error("witness found for u=%g, v=%g although direct membership fails", u, v)
    return IntersectionCheck(member=member, witness=witness, agree=agree)
