"""Unit tests for eps-normal sets and the epigraph bridge."""

import numpy as np
import pytest

from nearly_convex.calculus.normals import (
    enormal2_mask,
    enormal2_membership,
    enormal_interval,
    epi_membership_check,
    epigraph_support,
)
from nearly_convex.calculus.subdifferential import esub_membership
from nearly_convex.core.errors import OutOfDomainError, PointNotInSetError
from nearly_convex.core.interval import INF, Interval
from nearly_convex.core.polyhedron import Vec2, VPolyhedron2


class TestEnormalInterval:
    """Test suite for enormal_interval."""

    @pytest.mark.parametrize("eps", [0.0, 0.5, 3.0])
    def test_half_line_at_its_end(self, eps):
        """Test N_eps(0; [0, inf)) = (-inf, 0] for every eps."""
        result = enormal_interval(Interval(lo=0, hi=INF), 0.0, eps)
        assert result.unbounded_below
        assert result.hi == 0.0

    def test_segment_interior(self):
        """Test a bounded set at an interior point of a segment."""
        result = enormal_interval(Interval.closed(0, 2), 0.5, 0.3)
        assert result.lo == pytest.approx(-0.6)
        assert result.hi == pytest.approx(0.2)

    def test_segment_end(self):
        """Test the left end of a segment."""
        result = enormal_interval(Interval.closed(0, 1), 0.0, 0.25)
        assert result.unbounded_below
        assert result.hi == pytest.approx(0.25)

    def test_point_outside(self):
        """Test that the base point must be in the set."""
        with pytest.raises(PointNotInSetError):
            enormal_interval(Interval.closed(0, 1), 2.0, 0.1)


class TestEnormal2:
    """Test suite for eps-normals to planar polyhedra."""

    @pytest.fixture
    def square(self):
        """The square [0, 1]^2."""
        return VPolyhedron2.box(0, 1, 0, 1)

    def test_corner_normals(self, square):
        """Test normals at the origin corner of the square."""
        origin = Vec2.of(0, 0)
        assert enormal2_membership(square, origin, 0.0, Vec2.of(-1, -1))
        assert not enormal2_membership(square, origin, 0.0, Vec2.of(1, 0))
        assert enormal2_membership(square, origin, 1.0, Vec2.of(1, 0))

    def test_mask(self, square):
        """Test the vectorized check."""
        ws = np.array([[-1.0, -1.0], [0.5, 0.0], [0.5, 0.5]])
        mask = enormal2_mask(square, Vec2.of(0, 0), 0.5, ws)
        assert mask.tolist() == [True, True, False]

    def test_point_outside(self, square):
        """Test that the base point must be in the polyhedron."""
        with pytest.raises(PointNotInSetError):
            enormal2_membership(square, Vec2.of(2, 2), 0.0, Vec2.of(1, 0))


class TestEpigraphBridge:
    """Test suite for the epigraph description of eps-subgradients."""

    def test_support_branches(self, abs_fn, psi):
        """Test the three cases of the epigraph support."""
        assert epigraph_support(abs_fn, 0.5, 1.0) == pytest.approx(0.0, abs=1e-9)
        assert epigraph_support(psi, 1.0, 0.0) == 1.0
        assert epigraph_support(psi, -1.0, 0.0) == 0.0
        assert epigraph_support(psi, 1.0, -1.0) == INF

    @pytest.mark.parametrize("u", [-5.0, -1.0, -0.9, 0.0])
    def test_agrees_with_membership(self, phi, u):
        """Test that the epigraph check matches the direct membership."""
        assert epi_membership_check(phi, 0.0, 0.25, u) == esub_membership(phi, 0.0, 0.25, u)

    def test_out_of_domain(self, phi):
        """Test that the base point must be in the domain."""
        with pytest.raises(OutOfDomainError):
            epi_membership_check(phi, -1.0, 0.25, 0.0)
