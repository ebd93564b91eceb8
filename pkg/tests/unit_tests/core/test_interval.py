"""Unit tests for intervals and closed convex subsets of R."""

import math

import pytest
from pydantic import ValidationError

from nearly_convex.core.errors import EmptySetError
from nearly_convex.core.interval import (
    INF,
    Interval,
    IntervalSet,
    relative_interior_interval,
    ri_intersect_nonempty,
)


class TestInterval:
    """Test suite for Interval."""

    def test_empty_is_canonical(self):
        """Test that every empty interval takes the (+inf, -inf) form."""
        for iv in (Interval.closed(2, 1), Interval.open(1, 1), Interval(lo=0, hi=0, hi_closed=False)):
            assert iv.is_empty
            assert iv == Interval.empty()

    def test_infinite_ends_are_open(self):
        """Test that infinite endpoints are never closed."""
        iv = Interval.closed(-INF, 3)
        assert not iv.lo_closed
        assert iv.hi_closed
        assert not iv.is_bounded

    def test_contains_respects_open_ends(self):
        """Test membership at open and closed endpoints."""
        iv = Interval(lo=0, hi=1, hi_closed=False)
        assert iv.contains(0.0)
        assert not iv.contains(1.0)
        assert iv.contains(1.0, tol=1e-9)
        assert not iv.contains(math.nan)

    def test_intersect_keeps_stricter_end(self):
        """Test that a shared endpoint stays closed only when both are closed."""
        a = Interval(lo=0, hi=1, hi_closed=False)
        b = Interval.closed(0.5, 1)
        result = a.intersect(b)
        assert result.lo == 0.5 and result.lo_closed
        assert result.hi == 1 and not result.hi_closed

    def test_disjoint_intersection_is_empty(self):
        """Test intersection of disjoint intervals."""
        assert Interval.closed(0, 1).intersect(Interval.closed(2, 3)).is_empty

    def test_interior_point(self):
        """Test interior points of bounded, half-line and singleton intervals."""
        assert Interval.closed(0, 2).interior_point() == 1.0
        assert Interval.closed(3, INF).interior_point() == 4.0
        assert Interval.point(5).interior_point() == 5.0
        with pytest.raises(EmptySetError):
            Interval.empty().interior_point()

    def test_closure(self):
        """Test that the closure closes finite ends only."""
        iv = Interval(lo=0, hi=INF, lo_closed=False).closure()
        assert iv.lo_closed
        assert not iv.hi_closed

    def test_str(self):
        """Test the printed form."""
        assert str(Interval(lo=0, hi=1, hi_closed=False)) == "[0, 1)"
        assert str(Interval.empty()) == "{}"


class TestRelativeInterior:
    """Test suite for relative interior helpers."""

    def test_singleton_is_its_own_ri(self):
        """Test that a point is its own relative interior."""
        assert relative_interior_interval(Interval.point(2)) == Interval.point(2)

    def test_ri_of_segment_is_open(self):
        """Test that the ri of a segment drops its endpoints."""
        ri = relative_interior_interval(Interval.closed(0, 1))
        assert not ri.contains(0.0)
        assert ri.contains(0.5)

    def test_touching_domains_have_disjoint_ri(self):
        """Test that [0, 1] and [-1, 0] fail the ri condition."""
        assert not ri_intersect_nonempty(Interval.closed(0, 1), Interval.closed(-1, 0))
        assert ri_intersect_nonempty(Interval.closed(0, 1), Interval.closed(-1, 0.5))

    def test_point_inside_segment(self):
        """Test a singleton inside the interior of a segment."""
        assert ri_intersect_nonempty(Interval.point(0.5), Interval.closed(0, 1))
        assert not ri_intersect_nonempty(Interval.point(1), Interval.closed(0, 1))


class TestIntervalSet:
    """Test suite for IntervalSet."""

    def test_from_bounds_sets_flags(self):
        """Test that unbounded flags follow the infinite endpoints."""
        s = IntervalSet.from_bounds(-INF, -4)
        assert s.unbounded_below
        assert not s.unbounded_above
        assert s.hi == -4

    def test_empty_from_reversed_bounds(self):
        """Test that lo > hi gives the empty set."""
        s = IntervalSet.from_bounds(1, 0)
        assert s.is_empty
        assert s.lo == INF and s.hi == -INF

    def test_inconsistent_flags_rejected(self):
        """Test that flags must match the endpoints."""
        with pytest.raises(ValidationError):
            IntervalSet(interval=Interval.closed(0, 1), unbounded_below=True)

    def test_scale(self):
        """Test the image under a positive factor."""
        s = IntervalSet.from_bounds(-INF, -1).scale(2.0)
        assert s.hi == -2
        assert s.unbounded_below

    def test_minkowski_sum(self):
        """Test the sum of two sets."""
        s = IntervalSet.from_bounds(-1, 1).minkowski_sum(IntervalSet.from_bounds(0, INF))
        assert s.lo == -1
        assert s.unbounded_above
        assert IntervalSet.empty().minkowski_sum(s).is_empty

    def test_is_subset_of(self):
        """Test inclusion with the empty set and half-lines."""
        half = IntervalSet.from_bounds(-INF, 0)
        assert IntervalSet.empty().is_subset_of(half)
        assert IntervalSet.from_bounds(-3, -1).is_subset_of(half)
        assert not half.is_subset_of(IntervalSet.from_bounds(-3, 0))
        assert not half.is_subset_of(IntervalSet.empty())

    def test_str(self):
        """Test the printed form of a half-line."""
        assert str(IntervalSet.from_bounds(-INF, 0.5)) == "(-inf, 0.5]"
