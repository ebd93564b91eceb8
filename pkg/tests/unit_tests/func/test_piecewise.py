"""Unit tests for nearly convex functions of one variable."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from nearly_convex.core.errors import EmptySetError, NonPositiveScalarError
from nearly_convex.core.expr import const, var
from nearly_convex.core.interval import INF, Interval
from nearly_convex.func.piecewise import (
    NearlyConvexFn1D,
    add_affine,
    add_functions,
    closure_value,
    evaluate,
    indicator_function,
    make_function,
    one_sided_slopes,
    scale_function,
)
from nearly_convex.verification import catalog


class TestEvaluate:
    """Test suite for evaluate and closure_value."""

    def test_piece_value(self, phi):
        """Test a value inside a piece."""
        assert evaluate(phi, 0.25) == pytest.approx(-0.5)

    def test_override_value(self, phi):
        """Test that the override wins at its point."""
        assert evaluate(phi, 1.0) == 1.0
        assert closure_value(phi, 1.0) == pytest.approx(-1.0)

    def test_outside_domain(self, phi):
        """Test +inf off the domain."""
        assert evaluate(phi, -0.1) == INF
        assert evaluate(phi, 1.5) == INF
        assert closure_value(phi, 1.5) == INF

    def test_vectorized(self, phi):
        """Test evaluation over an array."""
        values = evaluate(phi, np.array([0.0, 0.25, 1.0, 2.0]))
        np.testing.assert_allclose(values[:3], [0.0, -0.5, 1.0])
        assert values[3] == INF

    def test_breakpoints(self, phi):
        """Test the sorted piece endpoints."""
        assert phi.breakpoints == [0.0, 1.0]


class TestStructure:
    """Test suite for the structural checks of NearlyConvexFn1D."""

    def test_override_must_be_boundary_point(self):
        """Test that an override inside the domain is rejected."""
        box = Interval.closed(0, 1)
        with pytest.raises(ValidationError):
            make_function(box, [(box, var())], {0.5: 3.0})

    def test_override_must_be_finite(self):
        """Test that an infinite override is rejected."""
        box = Interval.closed(0, 1)
        with pytest.raises(ValidationError):
            make_function(box, [(box, var())], {1.0: INF})

    def test_empty_domain_rejected(self):
        """Test that an empty domain is rejected."""
        with pytest.raises(ValidationError):
            NearlyConvexFn1D(domain=Interval.empty(), pieces=())

    def test_without_overrides(self, phi):
        """Test dropping the overrides."""
        assert phi.without_overrides().overrides == ()


class TestBuilders:
    """Test suite for the function builders."""

    def test_indicator(self):
        """Test the indicator of a half-line."""
        ind = indicator_function(Interval(lo=0, hi=INF))
        assert evaluate(ind, 5.0) == 0.0
        assert evaluate(ind, -1.0) == INF

    def test_scale_function(self, phi):
        """Test scaling pieces and overrides together."""
        doubled = scale_function(2.0, phi)
        assert evaluate(doubled, 0.25) == pytest.approx(-1.0)
        assert evaluate(doubled, 1.0) == 2.0

    @pytest.mark.parametrize("lam", [0.0, -1.0])
    def test_scale_function_rejects_non_positive(self, phi, lam):
        """Test that lam <= 0 raises NonPositiveScalarError."""
        with pytest.raises(NonPositiveScalarError):
            scale_function(lam, phi)

    def test_add_affine(self, phi):
        """Test adding an affine function."""
        shifted = add_affine(phi, 2.0, 1.0)
        assert evaluate(shifted, 0.25) == pytest.approx(1.0)
        assert evaluate(shifted, 1.0) == pytest.approx(4.0)

    def test_add_functions(self, phi, psi):
        """Test the sum of phi and psi on their common domain."""
        total = add_functions(phi, psi)
        assert evaluate(total, 0.25) == pytest.approx(-1.0)
        assert evaluate(total, 1.0) == pytest.approx(0.0)
        assert closure_value(total, 1.0) == pytest.approx(-2.0)

    def test_add_functions_single_point(self):
        """Test a sum whose domain is one point."""
        phi1, phi2 = catalog.counterexample_pair()
        total = add_functions(phi1, phi2)
        assert total.domain == Interval.point(0.0)
        assert evaluate(total, 0.0) == 0.0
        assert evaluate(total, 0.1) == INF

    def test_add_functions_disjoint(self):
        """Test that disjoint domains raise EmptySetError."""
        left = make_function(Interval.closed(0, 1), [(Interval.closed(0, 1), const(0))])
        right = make_function(Interval.closed(2, 3), [(Interval.closed(2, 3), const(0))])
        with pytest.raises(EmptySetError):
            add_functions(left, right)


class TestOneSidedSlopes:
    """Test suite for one_sided_slopes."""

    def test_kink(self, abs_fn):
        """Test the slopes of |x| at 0."""
        assert one_sided_slopes(abs_fn, 0.0) == (-1.0, 1.0)

    def test_left_end_of_domain(self, psi):
        """Test that the outer side of a domain end is unbounded."""
        left, right = one_sided_slopes(psi, 0.0)
        assert left == -math.inf
        assert right == -math.inf

    def test_right_end_of_domain(self, psi):
        """Test the slopes at the right end of the domain."""
        left, right = one_sided_slopes(psi, 1.0)
        assert left == pytest.approx(-0.5)
        assert right == math.inf
