"""Unit tests for eps-subdifferentials of nearly convex functions."""

import math

import pytest
from pydantic import ValidationError

from nearly_convex.calculus.normals import enormal_interval
from nearly_convex.calculus.subdifferential import (
    EtaLadder,
    closure_subdifferential,
    esub_interval,
    esub_ladder,
    esub_limit,
    esub_membership,
    oracle_esub_interval,
    raw_inequality_holds,
    scalar_rule,
)
from nearly_convex.core.errors import NonPositiveScalarError, OutOfDomainError
from nearly_convex.core.expr import add, const, scale, var
from nearly_convex.core.interval import INF, Interval
from nearly_convex.func.piecewise import indicator_function, make_function, scale_function


class TestEsubInterval:
    """Test suite for esub_interval on -sqrt(x) raised at x = 1."""

    @pytest.mark.parametrize("eps", [0.1, 0.25, 0.5])
    def test_small_eps(self, phi, eps):
        """Test (-inf, -1/(4 eps)] for eps <= 1/2."""
        result = esub_interval(phi, 0.0, eps)
        assert result.unbounded_below
        assert not result.unbounded_above
        assert result.hi == pytest.approx(-1.0 / (4.0 * eps), abs=1e-6)

    @pytest.mark.parametrize("eps", [1.0, 1.5])
    def test_large_eps(self, phi, eps):
        """Test (-inf, eps - 1] once the raised endpoint binds."""
        result = esub_interval(phi, 0.0, eps)
        assert result.unbounded_below
        assert result.hi == pytest.approx(eps - 1.0, abs=1e-6)

    def test_zero_eps_is_empty(self, phi):
        """Test that the exact subdifferential at 0 is empty."""
        assert esub_interval(phi, 0.0, 0.0).is_empty

    def test_interior_point_of_abs(self, abs_fn):
        """Test a bounded set at an interior point."""
        result = esub_interval(abs_fn, 1.0, 0.5)
        assert result.lo == pytest.approx(0.5, abs=1e-6)
        assert result.hi == pytest.approx(1.0, abs=1e-6)

    def test_kink_of_abs(self, abs_fn):
        """Test the exact subdifferential at the kink."""
        result = esub_interval(abs_fn, 0.0, 0.0)
        assert result.lo == pytest.approx(-1.0, abs=1e-6)
        assert result.hi == pytest.approx(1.0, abs=1e-6)

    def test_raised_endpoint_gap_exceeds_eps(self, phi):
        """Test that the raised endpoint has an empty set while eps < 2."""
        assert esub_interval(phi, 1.0, 1.0).is_empty

    def test_raised_endpoint_unbounded_above(self, phi):
        """Test that the raised endpoint gives an upper half-line once eps > 2."""
        result = esub_interval(phi, 1.0, 3.0)
        assert result.unbounded_above
        assert not result.unbounded_below

    def test_out_of_domain(self, phi):
        """Test that a base point off the domain raises."""
        with pytest.raises(OutOfDomainError):
            esub_interval(phi, 2.0, 0.1)

    def test_negative_eps(self, phi):
        """Test that a negative tolerance raises ValueError."""
        with pytest.raises(ValueError):
            esub_interval(phi, 0.0, -0.1)


class TestExactEndpoints:
    """Test suite for endpoints attained at the domain ends or deep inside it."""

    @pytest.mark.parametrize("lo, hi, x_bar, eps", [
        (-1.2, 0.7, 0.3, 0.37),
        (0.0, 2.5, 1.9, 1.0),
        (-3.0, -1.0, -1.5, 0.1),
        (-0.651, 1.337, 0.0123, 0.75),
    ])
    def test_indicator_matches_normal_set(self, lo, hi, x_bar, eps):
        """Test that the indicator of [lo, hi] gives exactly the eps-normal set."""
        omega = Interval.closed(lo, hi)
        result = esub_interval(indicator_function(omega), x_bar, eps)
        expected = enormal_interval(omega, x_bar, eps)
        assert (result.lo, result.hi) == (expected.lo, expected.hi)

    def test_indicator_at_domain_end(self):
        """Test the half-line at the right end of the indicator's domain."""
        result = esub_interval(indicator_function(Interval.closed(0.0, 2.0)), 2.0, 0.5)
        assert result.lo == -0.25
        assert result.unbounded_above

    def test_affine_piece(self):
        """Test 2x + 1 on [0, 1] at 0.25, where both ends are secants to the domain ends."""
        unit = Interval.closed(0.0, 1.0)
        f = make_function(unit, [(unit, add(scale(2.0, var()), const(1.0)))], name="line")
        result = esub_interval(f, 0.25, 0.5)
        assert result.lo == pytest.approx(0.0, abs=1e-12)
        assert result.hi == pytest.approx(2.0 + 0.5 / 0.75, abs=1e-12)

    def test_small_eps_minimizer_near_base_point(self, phi):
        """Test -1/(4 eps) when the touching point 4 eps^2 is far below the grid spacing."""
        eps = 2.0 ** -20
        result = esub_interval(phi, 0.0, eps)
        assert result.hi == pytest.approx(-1.0 / (4.0 * eps), rel=1e-9)


class TestMembership:
    """Test suite for the membership tests."""

    def test_esub_membership(self, phi):
        """Test membership at and beyond the upper bound."""
        assert esub_membership(phi, 0.0, 0.25, -1.0)
        assert esub_membership(phi, 0.0, 0.25, -5.0)
        assert not esub_membership(phi, 0.0, 0.25, -0.9)

    def test_raw_inequality(self, phi):
        """Test the defining inequality on the sample grid."""
        assert raw_inequality_holds(phi, 0.0, 0.25, -1.0)
        assert not raw_inequality_holds(phi, 0.0, 0.25, -0.9)

    def test_closure_subdifferential(self, abs_fn, psi):
        """Test the exact subdifferential of the closure."""
        kink = closure_subdifferential(abs_fn, 0.0)
        assert (kink.lo, kink.hi) == (-1.0, 1.0)
        assert closure_subdifferential(psi, 0.0).is_empty


class TestOracle:
    """Test suite for the grid oracle."""

    def test_agrees_with_search(self, phi):
        """Test the oracle on a slope window around the upper bound."""
        result = oracle_esub_interval(phi, 0.0, 0.25, x_grid_size=4001,
                                      xi_window=Interval.closed(-2, 0), xi_grid_size=2001)
        assert result.hi == pytest.approx(-1.0, abs=2e-3)
        assert result.clipped_below
        assert not result.clipped_above

    def test_empty_window(self, phi):
        """Test a window containing no accepted slope."""
        result = oracle_esub_interval(phi, 0.0, 0.25, xi_window=Interval.closed(0, 1), xi_grid_size=11)
        assert result.is_empty


class TestLadder:
    """Test suite for tolerance ladders and limits."""

    def test_geometric(self):
        """Test the halving ladder."""
        ladder = EtaLadder.geometric(3)
        assert ladder.values == (1.0, 0.5, 0.25, 0.125)
        assert ladder.smallest == 0.125

    @pytest.mark.parametrize("values", [(), (1.0, 1.0), (0.5, -0.1)])
    def test_invalid_ladders(self, values):
        """Test that ladders must be positive and strictly decreasing."""
        with pytest.raises(ValidationError):
            EtaLadder(values=values)

    def test_ladder_sets_shrink(self, phi):
        """Test that the sets shrink along the ladder."""
        rungs = esub_ladder(phi, 0.0, EtaLadder.geometric(4, start=0.5))
        for (_, wide), (_, narrow) in zip(rungs, rungs[1:]):
            assert narrow.is_subset_of(wide, tol=1e-6)

    def test_limit_empty_for_escaping_endpoint(self, phi):
        """Test that an endpoint running off to -inf gives the empty set."""
        assert esub_limit(phi, 0.0, EtaLadder.geometric(12)).is_empty

    def test_limit_at_kink(self, abs_fn):
        """Test the limit at the kink of |x|."""
        result = esub_limit(abs_fn, 0.0, EtaLadder.geometric(12))
        assert result.lo == pytest.approx(-1.0, abs=1e-6)
        assert result.hi == pytest.approx(1.0, abs=1e-6)


class TestScalarRule:
    """Test suite for scalar_rule."""

    def test_scaled_set(self, phi):
        """Test d_eps(2 phi)(0) = 2 d_{eps/2} phi(0)."""
        result = scalar_rule(phi, 2.0, 0.0, 0.5)
        assert result.unbounded_below
        assert result.hi == pytest.approx(-2.0, abs=1e-6)

    def test_non_positive_factor(self, phi):
        """Test that lam <= 0 raises."""
        with pytest.raises(NonPositiveScalarError):
            scalar_rule(phi, 0.0, 0.0, 0.5)

    def test_matches_direct_computation(self, abs_fn):
        """Test the rule against the set of 3|x| computed directly."""
        direct = esub_interval(scale_function(3.0, abs_fn), 1.0, 0.6)
        ruled = scalar_rule(abs_fn, 3.0, 1.0, 0.6)
        assert ruled.lo == pytest.approx(direct.lo, abs=1e-6)
        assert ruled.hi == pytest.approx(direct.hi, abs=1e-6)
        assert not math.isinf(ruled.lo)
        assert ruled.hi < INF
