"""Shared fixtures: the worked example functions and the fixture directory."""

from pathlib import Path

import pytest

from nearly_convex.core.expr import abs_, var
from nearly_convex.core.interval import INF, Interval
from nearly_convex.func.piecewise import make_function
from nearly_convex.verification import catalog

FIXTURES_DIR = Path(__file__).resolve().parents[1] / "data" / "fixtures"


@pytest.fixture
def fixtures_dir():
    """Directory holding the example problem files."""
    return FIXTURES_DIR


@pytest.fixture
def phi():
    """-sqrt(x) on [0, 1) with phi(1) = 1."""
    return catalog.ex1_function()


@pytest.fixture
def psi():
    """-sqrt(x) on [0, 1]."""
    return catalog.neg_sqrt_function()


@pytest.fixture
def abs_fn():
    """|x| on R."""
    line = Interval(lo=-INF, hi=INF)
    return make_function(line, [(line, abs_(var()))], name="abs")
