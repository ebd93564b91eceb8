"""Randomized property suites over catalog functions with a fixed seed."""

import logging
import math
from typing import Callable, Dict, List

import numpy as np

from nearly_convex.calculus import (
    EtaLadder,
    closure_subdifferential,
    enormal_interval,
    epi_membership_check,
    esub_interval,
    esub_ladder,
    esub_membership,
    oracle_esub_interval,
    scalar_rule,
)
from nearly_convex.core.errors import NearlyConvexError
from nearly_convex.core.interval import Interval, IntervalSet
from nearly_convex.func import conjugate, evaluate, indicator_function, scale_function
from nearly_convex.func.piecewise import NearlyConvexFn1D
from nearly_convex.verification.catalog import random_function, random_point
from nearly_convex.verification.suites import CheckResult

logger = logging.getLogger("Verification")

SEED = 20240607
INSTANCES = 100
ORACLE_X_GRID = 2001
ORACLE_XI_GRID = 1601
ORACLE_WINDOW = Interval.closed(-8.0, 8.0)
LADDER_DELTA = 1e-3

Case = Dict[str, object]
Property = Callable[[NearlyConvexFn1D, float, float, float, np.random.Generator], bool]


def _endpoints_close(a: IntervalSet, b: IntervalSet, tol: float) -> bool:
    if a.is_empty or b.is_empty:
        return a.is_empty == b.is_empty
    for p, q in ((a.lo, b.lo), (a.hi, b.hi)):
        if math.isinf(p) or math.isinf(q):
            if p != q:
                return False
        elif abs(p - q) > tol * max(1.0, abs(p)):
            return False
    return True


def monotone_in_eps(f, x_bar, e1, e2, rng) -> bool:
    return esub_interval(f, x_bar, e1).is_subset_of(esub_interval(f, x_bar, e2), 1e-9)


def nonempty_inside(f, x_bar, e1, e2, rng) -> bool:
    return not esub_interval(f, x_bar, e2).is_empty


def oracle_agrees(f, x_bar, e1, e2, rng) -> bool:
    """Finite analytic endpoints inside the window match the oracle within three slope steps."""
    exact = esub_interval(f, x_bar, e2)
    oracle = oracle_esub_interval(f, x_bar, e2, ORACLE_X_GRID, ORACLE_WINDOW, ORACLE_XI_GRID)
    step = ORACLE_WINDOW.width / (ORACLE_XI_GRID - 1)
    if exact.is_empty:
        return oracle.is_empty
    if oracle.is_empty:
        return exact.hi < ORACLE_WINDOW.lo or exact.lo > ORACLE_WINDOW.hi
    ok = True
    if ORACLE_WINDOW.lo + step < exact.lo < ORACLE_WINDOW.hi:
        ok &= abs(oracle.lo - exact.lo) <= 3 * step
    else:
        ok &= oracle.clipped_below or exact.lo >= ORACLE_WINDOW.hi
    if ORACLE_WINDOW.lo < exact.hi < ORACLE_WINDOW.hi - step:
        ok &= abs(oracle.hi - exact.hi) <= 3 * step
    else:
        ok &= oracle.clipped_above or exact.hi <= ORACLE_WINDOW.lo
    return bool(ok)


def scalar_rule_matches(f, x_bar, e1, e2, rng) -> bool:
    lam = float(np.round(rng.uniform(0.5, 3.0), 3))
    return _endpoints_close(scalar_rule(f, lam, x_bar, e2), esub_interval(scale_function(lam, f), x_bar, e2), 1e-8)


def epigraph_bridge(f, x_bar, e1, e2, rng) -> bool:
    slopes = np.linspace(-8.0, 8.0, 17) + 0.0123
    return all(epi_membership_check(f, x_bar, e2, float(u)) == esub_membership(f, x_bar, e2, float(u))
               for u in slopes)


def indicator_bridge(f, x_bar, e1, e2, rng) -> bool:
    omega = f.domain
    return _endpoints_close(enormal_interval(omega, x_bar, e2),
                            esub_interval(indicator_function(omega), x_bar, e2), 1e-9)


def fenchel_young(f, x_bar, e1, e2, rng) -> bool:
    cl = f.closure_domain
    xs = np.linspace(cl.lo, cl.hi, 64)
    xs = xs[np.isfinite(evaluate(f, xs))]
    xis = np.linspace(-4.0, 4.0, 33)
    gap = conjugate(f, xis)[:, None] + evaluate(f, xs)[None, :] - xis[:, None] * xs[None, :]
    return bool(np.all(gap >= -1e-8))


def ladder_converges(f, x_bar, e1, e2, rng) -> bool:
    """The last two rungs differ by less than LADDER_DELTA and still contain d cl f."""
    rungs = esub_ladder(f, x_bar, EtaLadder.geometric())
    last, before = rungs[-1][1], rungs[-2][1]
    if not _endpoints_close(last, before, LADDER_DELTA):
        return False
    return closure_subdifferential(f, x_bar).is_subset_of(last, 1e-9)


PROPERTIES: Dict[str, Property] = {
    "eps-monotonicity": monotone_in_eps,
    "nonempty on ri dom": nonempty_inside,
    "oracle agreement": oracle_agrees,
    "scalar rule": scalar_rule_matches,
    "epigraph bridge": epigraph_bridge,
    "indicator bridge": indicator_bridge,
    "Fenchel-Young": fenchel_young,
    "ladder convergence": ladder_converges,
}


def property_suite(instances: int = INSTANCES, seed: int = SEED) -> List[CheckResult]:
    """Every property on ``instances`` random catalog functions; one row per property."""
    rng = np.random.default_rng(seed)
    cases: List[Case] = []
    for i in range(instances):
        f = random_function(rng, i)
        e1, e2 = sorted(float(np.round(v, 4)) for v in rng.uniform(0.01, 2.0, size=2))
        cases.append({"f": f, "x_bar": random_point(rng, f), "e1": e1, "e2": e2})
    out = []
    for name, prop in PROPERTIES.items():
        failures = []
        prop_rng = np.random.default_rng(seed)
        for case in cases:
            try:
                ok = prop(case["f"], case["x_bar"], case["e1"], case["e2"], prop_rng)
            except NearlyConvexError as exc:
                logger.warning("%s raised on %s: %s", name, case["f"].name, exc)
                ok = False
            if not ok:
                failures.append(case["f"].name)
        detail = f"{instances - len(failures)}/{instances}"
        if failures:
            detail += " failed: " + ",".join(failures[:5])
        out.append(CheckResult(suite="properties", check=name, passed=not failures, detail=detail))
    return out
