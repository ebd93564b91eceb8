"""Unit tests for result frames, their rendering and SVG charts."""

import pytest

from nearly_convex.cli.output import FLOAT_FORMAT, build_frame, interval_columns, render
from nearly_convex.cli.plot import PlotSeries, emit_plot
from nearly_convex.core.interval import INF, IntervalSet

COLUMNS = ["eps", "lo", "hi", "unbounded_below", "unbounded_above"]


@pytest.fixture
def frame():
    """Two rows: a half-line and the empty set."""
    rows = [
        {"eps": 0.25, **interval_columns(IntervalSet.from_bounds(-INF, -1.0))},
        {"eps": 0.0, **interval_columns(IntervalSet.empty())},
    ]
    return build_frame(rows, COLUMNS)


class TestFrames:
    """Test suite for interval_columns and build_frame."""

    def test_interval_columns(self):
        """Test the four interval columns."""
        row = interval_columns(IntervalSet.from_bounds(-1.0, INF))
        assert row == {"lo": -1.0, "hi": INF, "unbounded_below": False, "unbounded_above": True}

    def test_empty_set_columns(self):
        """Test that the empty set prints as lo=inf, hi=-inf."""
        row = interval_columns(IntervalSet.empty())
        assert (row["lo"], row["hi"]) == (INF, -INF)

    def test_flags_become_integers(self, frame):
        """Test that boolean columns turn into 0/1."""
        assert list(frame.columns) == COLUMNS
        assert frame["unbounded_below"].tolist() == [1, 0]


class TestRender:
    """Test suite for render."""

    def test_csv(self, frame):
        """Test the CSV text with infinite endpoints."""
        assert render(frame) == (
            "eps,lo,hi,unbounded_below,unbounded_above\n"
            "0.25,-inf,-1,1,0\n"
            "0,inf,-inf,0,0\n"
        )

    def test_significant_digits(self):
        """Test that floats keep twelve significant digits."""
        out = render(build_frame([{"v": 1.0 / 3.0}], ["v"]))
        assert out == "v\n" + FLOAT_FORMAT % (1.0 / 3.0) + "\n"
        assert out.endswith("0.333333333333\n")

    def test_text(self, frame):
        """Test the aligned text table."""
        out = render(frame, "text")
        assert out.splitlines()[0].split() == COLUMNS
        assert "-inf" in out

    def test_empty_text(self):
        """Test that an empty frame still prints its header."""
        assert render(build_frame([], ["x", "m"]), "text") == "x m\n"


class TestEmitPlot:
    """Test suite for emit_plot."""

    def test_deterministic(self, tmp_path):
        """Test that identical input writes identical bytes."""
        series = PlotSeries(title="m", points=((0.0, 0.0), (0.5, 0.25), (1.0, 1.0)),
                            bands=((0.0, -INF, -1.0), (0.5, -2.0, 0.5)))
        first = emit_plot(series, tmp_path / "a.svg").read_bytes()
        second = emit_plot(series, tmp_path / "b.svg").read_bytes()
        assert first == second
        assert b"<svg" in first

    def test_empty_series(self, tmp_path):
        """Test that a series without data still writes a chart."""
        path = emit_plot(PlotSeries(title="nothing", bands=((0.0, INF, -INF),)), tmp_path / "empty.svg")
        assert path.exists()

    def test_unwritable_path(self, tmp_path):
        """Test that a missing directory raises OSError."""
        with pytest.raises(OSError):
            emit_plot(PlotSeries(), tmp_path / "missing" / "plot.svg")
