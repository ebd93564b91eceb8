"""Unit tests for sums and intersections of polyhedral graphs."""

import numpy as np
import pytest

from nearly_convex.calculus.graphs import graph_intersection, graph_sum
from nearly_convex.core.errors import EmptySetError, InfeasibleIntersectionError
from nearly_convex.core.polyhedron import Vec2, VPolyhedron2
from nearly_convex.verification import catalog


class TestGraphSum:
    """Test suite for graph_sum."""

    def test_cone_plus_cone(self):
        """Test that {y >= |x|} + {y >= |x|} = {y >= 2|x|}."""
        cone = catalog.cone_graph()
        total = graph_sum(cone, cone)
        assert total.contains(Vec2.of(1, 2))
        assert total.contains(Vec2.of(-1, 3))
        assert not total.contains(Vec2.of(1, 1.9))

    def test_boxes(self):
        """Test the sum of two boxes over a shared x-range."""
        total = graph_sum(VPolyhedron2.box(0, 2, 0, 1), VPolyhedron2.box(1, 3, 1, 2))
        assert total.x_range().lo == pytest.approx(1.0)
        assert total.x_range().hi == pytest.approx(2.0)
        s = total.slice_at(1.5)
        assert (s.lo, s.hi) == pytest.approx((1.0, 3.0))

    def test_disjoint_domains(self):
        """Test that disjoint domains raise EmptySetError."""
        with pytest.raises(EmptySetError):
            graph_sum(VPolyhedron2.box(0, 1, 0, 1), VPolyhedron2.box(2, 3, 0, 1))


class TestGraphIntersection:
    """Test suite for graph_intersection."""

    def test_halfplanes_give_cone(self):
        """Test that {y >= x} ∩ {y >= -x} is the cone {y >= |x|}."""
        cone = catalog.cone_graph()
        meet = graph_intersection(catalog.halfplane_graphs())
        for x in np.linspace(-2.0, 2.0, 9):
            for y in np.linspace(-2.0, 2.0, 9):
                p = Vec2.of(float(x), float(y))
                assert meet.contains(p) == cone.contains(p)

    def test_boxes(self):
        """Test the intersection of overlapping boxes."""
        meet = graph_intersection([VPolyhedron2.box(0, 2, 0, 2), VPolyhedron2.box(1, 3, 1, 3)])
        assert meet.contains(Vec2.of(1.5, 1.5))
        assert not meet.contains(Vec2.of(0.5, 0.5))

    def test_no_common_point(self):
        """Test that graphs without a common point raise."""
        with pytest.raises(InfeasibleIntersectionError):
            graph_intersection([VPolyhedron2.box(0, 1, 0, 1), VPolyhedron2.box(0, 1, 2, 3)])

    def test_needs_a_graph(self):
        """Test that an empty list is rejected."""
        with pytest.raises(ValueError):
            graph_intersection([])


@pytest.mark.filterwarnings("error::RuntimeWarning")
class TestUnboundedSlices:
    """Test suite for graphs whose slices are unbounded, with numpy warnings raised as errors."""

    def test_halfplane_sum(self):
        """Test that {y >= x} + {y >= -x} is {y >= 0}."""
        upper_right, upper_left = catalog.halfplane_graphs()
        total = graph_sum(upper_right, upper_left)
        assert total.contains(Vec2.of(5, 0))
        assert total.contains(Vec2.of(-5, 0))
        assert not total.contains(Vec2.of(0, -0.1))

    def test_box_plus_halfplane(self):
        """Test a bounded slice added to an unbounded one next to an empty edge."""
        total = graph_sum(VPolyhedron2.box(0, 1, 0, 1), catalog.halfplane_graphs()[0])
        assert total.contains(Vec2.of(0.5, 0.5))
        assert total.contains(Vec2.of(0.5, 10))
        assert not total.contains(Vec2.of(0.5, 0.4))
        assert not total.contains(Vec2.of(1.5, 2))

    def test_three_way_intersection(self):
        """Test that two halfplanes and the cone intersect in the cone."""
        cone = catalog.cone_graph()
        meet = graph_intersection([*catalog.halfplane_graphs(), cone])
        for point in (Vec2.of(0, 0), Vec2.of(2, 2), Vec2.of(-1, 3), Vec2.of(0.5, 0.4)):
            assert meet.contains(point) == cone.contains(point)
