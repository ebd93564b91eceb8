"""Sampled checks of the nearly convex function invariants."""

import logging
import math
from functools import lru_cache
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field

from nearly_convex.core.config import config
from nearly_convex.core.constants import CONVEXITY_TOL, TOL_EVAL, UNBOUNDED_SAMPLE_SPAN
from nearly_convex.core.errors import DomainError, ValidationError
from nearly_convex.core.expr import eval_expr, growth_degree
from nearly_convex.func.piecewise import NearlyConvexFn1D, closure_value

logger = logging.getLogger("Validation")


class Violation(BaseModel):
    """One failed check, located at ``location`` when it has one."""

    kind: str
    message: str
    location: Optional[float] = None


class ValidationReport(BaseModel):
    """Outcome of :func:`validate`; ``valid`` iff there are no violations."""

    violations: List[Violation] = Field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, kind: str, message: str, location: Optional[float] = None) -> None:
        self.violations.append(Violation(kind=kind, message=message, location=location))

    def summary(self) -> str:
        if self.valid:
            return "valid"
        return "; ".join(
            v.message if v.location is None else f"{v.message} at x={v.location:g}" for v in self.violations
        )


def sample_grid(f: NearlyConvexFn1D, size: int) -> np.ndarray:
    """Uniform grid over the domain closure; unbounded sides are truncated."""
    lo, hi = f.closure_domain.lo, f.closure_domain.hi
    if not math.isfinite(lo) and not math.isfinite(hi):
        lo, hi = -UNBOUNDED_SAMPLE_SPAN, UNBOUNDED_SAMPLE_SPAN
    elif not math.isfinite(lo):
        lo = hi - UNBOUNDED_SAMPLE_SPAN
    elif not math.isfinite(hi):
        hi = lo + UNBOUNDED_SAMPLE_SPAN
    return np.linspace(lo, hi, size)


def _check_pieces(f: NearlyConvexFn1D, report: ValidationReport) -> None:
    pieces = f.pieces
    for left, right in zip(pieces, pieces[1:]):
        a, b = left.interval, right.interval
        if a.hi > b.lo:
            report.add("overlap", "pieces overlap or are out of order", b.lo)
            continue
        if a.hi < b.lo or (a.hi == b.lo and not a.hi_closed and not b.lo_closed):
            report.add("gap", "pieces leave a gap in the domain", a.hi)
            continue
        joint = a.hi
        try:
            va = eval_expr(left.expr, joint)
            vb = eval_expr(right.expr, joint)
        except DomainError as exc:
            report.add("domain", str(exc), joint)
            continue
        if abs(va - vb) > TOL_EVAL * max(1.0, abs(va), abs(vb)):
            report.add("continuity", f"adjacent pieces disagree ({va:g} vs {vb:g})", joint)
    if pieces:
        covered_lo = pieces[0].interval
        covered_hi = pieces[-1].interval
        points = {pt for pt, _ in f.overrides}
        if covered_lo.lo > f.domain.lo or (
            f.domain.lo_closed and not covered_lo.lo_closed and f.domain.lo not in points
        ):
            report.add("coverage", "pieces do not reach the left end of the domain", f.domain.lo)
        if covered_hi.hi < f.domain.hi or (
            f.domain.hi_closed and not covered_hi.hi_closed and f.domain.hi not in points
        ):
            report.add("coverage", "pieces do not reach the right end of the domain", f.domain.hi)
    unbounded = not f.domain.is_bounded
    for piece in pieces:
        if unbounded and not piece.interval.is_bounded and growth_degree(piece.expr) > 2:
            report.add("growth", "unbounded piece grows faster than quadratically", piece.interval.lo)


def _check_convexity(values: np.ndarray, grid: np.ndarray, report: ValidationReport) -> None:
    n = len(values)
    tol = CONVEXITY_TOL * max(1.0, float(np.max(np.abs(values))))
    for k in range(1, (n - 1) // 2 + 1):
        left = values[: n - 2 * k]
        mid = values[k : n - k]
        right = values[2 * k :]
        bad = mid > 0.5 * (left + right) + tol
        if np.any(bad):
            idx = int(np.argmax(bad)) + k
            report.add("convexity", "midpoint convexity fails", float(grid[idx]))
            return


def validate(f: NearlyConvexFn1D) -> ValidationReport:
    """Check every invariant of a nearly convex function.

    Args:
        f: The function to check.

    Returns:
        A report listing violations with their locations; an empty list
        means the function is valid.
    """
    report = ValidationReport()
    _check_pieces(f, report)
    grid = sample_grid(f, config.convexity_grid)
    try:
        values = closure_value(f, grid)
    except DomainError as exc:
        report.add("domain", str(exc))
        return report
    if not np.all(np.isfinite(values)):
        idx = int(np.argmax(~np.isfinite(values)))
        report.add("proper", "function is not finite on its domain", float(grid[idx]))
        return report
    _check_convexity(values, grid, report)
    for point, value in f.overrides:
        limit = closure_value(f, point)
        if value < limit - TOL_EVAL * max(1.0, abs(limit)):
            report.add("override", f"override {value:g} is below the closure value {limit:g}", point)
    if report.valid:
        logger.debug("%s passed validation", f.name)
    else:
        logger.info("%s failed validation: %s", f.name, report.summary())
    return report


@lru_cache(maxsize=256)
def _cached_validate(f: NearlyConvexFn1D) -> ValidationReport:
    return validate(f)


def ensure_valid(f: NearlyConvexFn1D) -> NearlyConvexFn1D:
    """Return ``f`` unchanged or raise :class:`ValidationError` with the report."""
    report = _cached_validate(f)
    if not report.valid:
        raise ValidationError(f"{f.name} is not nearly convex: {report.summary()}", report)
    return f
