"""Unit tests for near-convexity validation."""

import pytest

from nearly_convex.core.errors import ValidationError
from nearly_convex.core.expr import add, const, sq, sqrt, var
from nearly_convex.core.interval import INF, Interval
from nearly_convex.func.piecewise import make_function
from nearly_convex.func.validation import ensure_valid, sample_grid, validate


def _kinds(report):
    return {v.kind for v in report.violations}


class TestValidate:
    """Test suite for validate."""

    def test_worked_example_is_valid(self, phi):
        """Test that -sqrt(x) with a raised endpoint is nearly convex."""
        report = validate(phi)
        assert report.valid
        assert report.summary() == "valid"

    def test_concave_piece(self):
        """Test that sqrt(x) fails the convexity check."""
        f = make_function(Interval.closed(0, 1), [(Interval.closed(0, 1), sqrt(var()))], name="root")
        report = validate(f)
        assert not report.valid
        assert "convexity" in _kinds(report)

    def test_gap_between_pieces(self):
        """Test that uncovered parts of the domain are reported."""
        f = make_function(Interval.closed(0, 3), [(Interval.closed(0, 1), var()), (Interval.closed(2, 3), var())])
        assert "gap" in _kinds(validate(f))

    def test_discontinuous_pieces(self):
        """Test that adjacent pieces must agree at their joint."""
        f = make_function(Interval.closed(0, 2), [
            (Interval(lo=0, hi=1, hi_closed=False), var()),
            (Interval.closed(1, 2), add(var(), const(1))),
        ])
        report = validate(f)
        assert "continuity" in _kinds(report)
        located = [v for v in report.violations if v.kind == "continuity"]
        assert located[0].location == 1.0

    def test_override_below_closure(self):
        """Test that an override may only raise the function."""
        f = make_function(Interval.closed(0, 1), [(Interval(lo=0, hi=1, hi_closed=False), var())], {1.0: 0.5})
        report = validate(f)
        assert "override" in _kinds(report)
        assert "x=1" in report.summary()

    def test_fast_growth_on_unbounded_domain(self):
        """Test that quartic growth on a half-line is rejected."""
        half = Interval(lo=0, hi=INF)
        f = make_function(half, [(half, sq(sq(var())))])
        assert "growth" in _kinds(validate(f))


class TestEnsureValid:
    """Test suite for ensure_valid."""

    def test_returns_valid_function(self, psi):
        """Test that a valid function comes back unchanged."""
        assert ensure_valid(psi) is psi

    def test_raises_with_report(self):
        """Test that the error carries the report."""
        f = make_function(Interval.closed(0, 1), [(Interval.closed(0, 1), sqrt(var()))], name="root")
        with pytest.raises(ValidationError) as exc_info:
            ensure_valid(f)
        assert "root" in str(exc_info.value)
        assert not exc_info.value.report.valid


class TestSampleGrid:
    """Test suite for sample_grid."""

    def test_bounded_domain(self, psi):
        """Test that the grid spans the domain closure."""
        grid = sample_grid(psi, 11)
        assert grid[0] == 0.0 and grid[-1] == 1.0
        assert len(grid) == 11

    def test_unbounded_domain_is_truncated(self, abs_fn):
        """Test that an unbounded domain gets a finite window."""
        grid = sample_grid(abs_fn, 5)
        assert grid[0] < 0 < grid[-1]
