"""Unit tests for the sum rule and the normal-cone intersection rule."""

import pytest
from pydantic import ValidationError

from nearly_convex.calculus.subdifferential import esub_interval, esub_membership
from nearly_convex.calculus.sum_rule import (
    SplitCertificate,
    check_qualification,
    exact_sum_rule_holds,
    infimal_convolution,
    normal_intersection_decompose,
    sum_rule_decompose,
)
from nearly_convex.core.errors import (
    NotInSumSubdifferentialError,
    PointNotInSetError,
    QualificationFailedError,
)
from nearly_convex.core.interval import Interval
from nearly_convex.func.piecewise import add_functions
from nearly_convex.verification import catalog


class TestSplitCertificate:
    """Test suite for SplitCertificate."""

    def test_matches(self):
        """Test that the parts must add up."""
        cert = SplitCertificate(eps1=0.25, eps2=0.75, xi1=-1.0, xi2=0.5)
        assert cert.matches(1.0, -0.5)
        assert not cert.matches(1.0, -0.4)

    def test_negative_tolerance_rejected(self):
        """Test that split tolerances are nonnegative."""
        with pytest.raises(ValidationError):
            SplitCertificate(eps1=-0.1, eps2=1.1, xi1=0.0, xi2=0.0)


class TestSumRule:
    """Test suite for sum_rule_decompose on phi + psi."""

    def test_sum_set(self, phi, psi):
        """Test (-inf, -1/eps] for the sum at eps <= 1."""
        total = add_functions(phi, psi)
        result = esub_interval(total, 0.0, 0.5)
        assert result.unbounded_below
        assert result.hi == pytest.approx(-2.0, abs=1e-6)

    def test_balanced_split(self, phi, psi):
        """Test the split of xi = -1 at eps = 1."""
        cert = sum_rule_decompose(phi, psi, 0.0, 1.0, -1.0)
        assert cert.matches(1.0, -1.0)
        assert cert.eps1 == pytest.approx(0.5, abs=1e-4)
        assert cert.eps2 == pytest.approx(0.5, abs=1e-4)
        assert cert.xi1 == pytest.approx(-0.5, abs=1e-4)
        assert cert.xi2 == pytest.approx(-0.5, abs=1e-4)

    @pytest.mark.parametrize("eps, xi", [(0.25, -5.0), (0.5, -3.0), (2.0, -0.5)])
    def test_parts_are_members(self, phi, psi, eps, xi):
        """Test that every returned part lies in its own set."""
        cert = sum_rule_decompose(phi, psi, 0.0, eps, xi)
        assert cert.matches(eps, xi)
        assert esub_membership(phi, 0.0, cert.eps1, cert.xi1)
        assert esub_membership(psi, 0.0, cert.eps2, cert.xi2)

    def test_slope_outside_sum(self, phi, psi):
        """Test that a slope outside the sum's set raises."""
        with pytest.raises(NotInSumSubdifferentialError):
            sum_rule_decompose(phi, psi, 0.0, 1.0, 0.0)

    def test_qualification_failure(self):
        """Test domains touching at one point."""
        phi1, phi2 = catalog.counterexample_pair()
        with pytest.raises(QualificationFailedError):
            check_qualification(phi1, phi2)
        with pytest.raises(QualificationFailedError):
            sum_rule_decompose(phi1, phi2, 0.0, 1.0, 0.0)


class TestInfimalConvolution:
    """Test suite for infimal_convolution."""

    def test_abs_with_abs(self, abs_fn):
        """Test that the minimizer nearest the balanced split is chosen."""
        value, xi1 = infimal_convolution(abs_fn, abs_fn, 1.0)
        assert value == pytest.approx(0.0, abs=1e-9)
        assert xi1 == pytest.approx(0.5, abs=1e-6)


class TestExactSumRule:
    """Test suite for exact_sum_rule_holds."""

    def test_counterexample(self):
        """Test that the exact rule fails without the qualification."""
        phi1, phi2 = catalog.counterexample_pair()
        report = exact_sum_rule_holds(phi1, phi2, 0.0)
        assert not report.qualification
        assert not report.holds
        assert report.sum_set.unbounded_below and report.sum_set.unbounded_above
        assert report.parts_set.is_empty

    def test_qualified_pair(self, abs_fn):
        """Test that the rule holds for |x| + |x| at the kink."""
        report = exact_sum_rule_holds(abs_fn, abs_fn, 0.0)
        assert report.qualification
        assert report.holds


class TestNormalIntersection:
    """Test suite for normal_intersection_decompose."""

    def test_split(self):
        """Test the split of an eps-normal to [0, 2] ∩ [1, 3] at 1."""
        cert = normal_intersection_decompose(Interval.closed(0, 2), Interval.closed(1, 3), 1.0, 0.5, 0.3)
        assert cert.matches(0.5, 0.3)
        assert cert.xi1 == pytest.approx(0.3, abs=1e-6)
        assert cert.eps1 == pytest.approx(0.4, abs=1e-6)

    def test_point_outside(self):
        """Test that the base point must lie in both sets."""
        with pytest.raises(PointNotInSetError):
            normal_intersection_decompose(Interval.closed(0, 2), Interval.closed(1, 3), 2.5, 0.5, 0.0)
