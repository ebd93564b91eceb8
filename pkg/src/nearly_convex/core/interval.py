"""Intervals on the extended real line and closed convex subsets of R."""

import math
from typing import Any

from pydantic import BaseModel, ConfigDict, model_validator

from nearly_convex.core.constants import TOL_EQ
from nearly_convex.core.errors import EmptySetError

# Extended reals are plain floats: -inf / +inf stand for the two symbols and
# inf over the empty set is +inf.
ExtReal = float
INF = math.inf


def is_finite(value: ExtReal) -> bool:
    """Return True when an extended real is a finite number."""
    return math.isfinite(value)


class Interval(BaseModel):
    """One interval of R with independently open/closed ends.

    Infinite endpoints are always open and every empty interval is stored in
    the canonical form ``(+inf, -inf)``.
    """

    model_config = ConfigDict(frozen=True)

    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    @model_validator(mode="before")
    @classmethod
    def _canonicalize(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        lo = float(data.get("lo"))
        hi = float(data.get("hi"))
        lo_closed = bool(data.get("lo_closed", True)) and math.isfinite(lo)
        hi_closed = bool(data.get("hi_closed", True)) and math.isfinite(hi)
        empty = lo > hi or (lo == hi and not (lo_closed and hi_closed)) or lo == INF or hi == -INF
        if empty:
            return {"lo": INF, "hi": -INF, "lo_closed": False, "hi_closed": False}
        data.update(lo=lo, hi=hi, lo_closed=lo_closed, hi_closed=hi_closed)
        return data

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    @classmethod
    def closed(cls, lo: float, hi: float) -> "Interval":
        return cls(lo=lo, hi=hi, lo_closed=True, hi_closed=True)

    @classmethod
    def open(cls, lo: float, hi: float) -> "Interval":
        return cls(lo=lo, hi=hi, lo_closed=False, hi_closed=False)

    @classmethod
    def point(cls, value: float) -> "Interval":
        return cls(lo=value, hi=value)

    @classmethod
    def real_line(cls) -> "Interval":
        return cls(lo=-INF, hi=INF)

    @classmethod
    def empty(cls) -> "Interval":
        return cls(lo=INF, hi=-INF)

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------
    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    @property
    def is_singleton(self) -> bool:
        return not self.is_empty and self.lo == self.hi

    @property
    def is_bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    @property
    def width(self) -> float:
        return 0.0 if self.is_empty else self.hi - self.lo

    def contains(self, x: float, tol: float = 0.0) -> bool:
        """Membership test; ``tol`` widens both ends."""
        if self.is_empty or math.isnan(x):
            return False
        if self.lo_closed or tol > 0:
            above = x >= self.lo - tol
        else:
            above = x > self.lo
        if self.hi_closed or tol > 0:
            below = x <= self.hi + tol
        else:
            below = x < self.hi
        return above and below

    def closure(self) -> "Interval":
        if self.is_empty:
            return self
        return Interval(lo=self.lo, hi=self.hi, lo_closed=True, hi_closed=True)

    def intersect(self, other: "Interval") -> "Interval":
        if self.is_empty or other.is_empty:
            return Interval.empty()
        if self.lo > other.lo:
            lo, lo_closed = self.lo, self.lo_closed
        elif other.lo > self.lo:
            lo, lo_closed = other.lo, other.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hi_closed = self.hi, self.hi_closed
        elif other.hi < self.hi:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        return Interval(lo=lo, hi=hi, lo_closed=lo_closed, hi_closed=hi_closed)

    def interior_point(self) -> float:
        """A point of the relative interior (the midpoint when bounded)."""
        if self.is_empty:
            raise EmptySetError("empty interval has no interior point")
        if self.is_singleton:
            return self.lo
        if self.is_bounded:
            return 0.5 * (self.lo + self.hi)
        if math.isfinite(self.lo):
            return self.lo + 1.0
        if math.isfinite(self.hi):
            return self.hi - 1.0
        return 0.0

    def __str__(self) -> str:
        if self.is_empty:
            return "{}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo:g}, {self.hi:g}{right}"


def relative_interior_interval(interval: Interval) -> Interval:
    """Relative interior of an interval: a singleton is its own ri."""
    if interval.is_empty:
        raise EmptySetError("relative interior of an empty interval")
    if interval.is_singleton:
        return interval
    return Interval.open(interval.lo, interval.hi)


def ri_intersect_nonempty(a: Interval, b: Interval) -> bool:
    """True iff ri(a) and ri(b) intersect."""
    if a.is_empty or b.is_empty:
        return False
    return not relative_interior_interval(a).intersect(relative_interior_interval(b)).is_empty


class IntervalSet(BaseModel):
    """A closed convex subset of R: empty, a point, a segment, a half-line or R.

    ``clipped_below``/``clipped_above`` are set by grid oracles whose accepted
    region touched the edge of the scanned window.
    """

    model_config = ConfigDict(frozen=True)

    interval: Interval
    unbounded_below: bool = False
    unbounded_above: bool = False
    clipped_below: bool = False
    clipped_above: bool = False

    @model_validator(mode="after")
    def _check_flags(self) -> "IntervalSet":
        iv = self.interval
        if iv.is_empty:
            return self
        if self.unbounded_below != (iv.lo == -INF) or self.unbounded_above != (iv.hi == INF):
            raise ValueError("unbounded flags must match the infinite endpoints")
        return self

    @classmethod
    def from_bounds(cls, lo: float, hi: float, clipped_below: bool = False,
                    clipped_above: bool = False) -> "IntervalSet":
        """Build from (possibly infinite) bounds; lo > hi gives the empty set."""
        iv = Interval(lo=lo, hi=hi)
        return cls(
            interval=iv,
            unbounded_below=not iv.is_empty and iv.lo == -INF,
            unbounded_above=not iv.is_empty and iv.hi == INF,
            clipped_below=clipped_below,
            clipped_above=clipped_above,
        )

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(interval=Interval.empty())

    @classmethod
    def real_line(cls) -> "IntervalSet":
        return cls.from_bounds(-INF, INF)

    @property
    def is_empty(self) -> bool:
        return self.interval.is_empty

    @property
    def lo(self) -> float:
        return self.interval.lo

    @property
    def hi(self) -> float:
        return self.interval.hi

    def contains(self, xi: float, tol: float = TOL_EQ) -> bool:
        return self.interval.contains(xi, tol)

    def scale(self, factor: float) -> "IntervalSet":
        """Image under xi -> factor * xi for factor > 0."""
        if self.is_empty:
            return self
        return IntervalSet.from_bounds(factor * self.lo, factor * self.hi,
                                       self.clipped_below, self.clipped_above)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        iv = self.interval.intersect(other.interval)
        if iv.is_empty:
            return IntervalSet.empty()
        return IntervalSet.from_bounds(iv.lo, iv.hi)

    def minkowski_sum(self, other: "IntervalSet") -> "IntervalSet":
        if self.is_empty or other.is_empty:
            return IntervalSet.empty()
        return IntervalSet.from_bounds(self.lo + other.lo, self.hi + other.hi)

    def is_subset_of(self, other: "IntervalSet", tol: float = TOL_EQ) -> bool:
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        return self.lo >= other.lo - tol and self.hi <= other.hi + tol

    def __str__(self) -> str:
        if self.is_empty:
            return "{}"
        left = "(" if self.unbounded_below else "["
        right = ")" if self.unbounded_above else "]"
        return f"{left}{self.lo:.12g}, {self.hi:.12g}{right}"
