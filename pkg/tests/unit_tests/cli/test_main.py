"""Unit tests for the ncx entry point."""

import io

import pandas as pd
import pytest

from nearly_convex.cli.main import EXIT_DOMAIN, EXIT_INPUT, EXIT_OK, run_subcommand
from nearly_convex.core.interval import INF


@pytest.fixture
def run(fixtures_dir, capsys):
    """Run ncx against a fixture; returns the exit code and stdout as a frame or text."""

    def _run(command, stem, *flags, as_frame=True):
        argv = [command, "--file", str(fixtures_dir / f"{stem}.ncx"), *flags]
        code = run_subcommand(argv)
        out = capsys.readouterr().out
        if as_frame and code == EXIT_OK:
            return code, pd.read_csv(io.StringIO(out))
        return code, out

    return _run


class TestSubcommands:
    """Test suite for successful subcommands."""

    def test_esub(self, run):
        """Test the subdifferential rows of ex1 at 0."""
        code, frame = run("esub", "ex1", "--fn", "phi", "--at", "0", "--eps", "0.25", "1")
        assert code == EXIT_OK
        assert list(frame.columns) == ["x_bar", "eps", "lo", "hi", "unbounded_below", "unbounded_above"]
        assert frame["lo"].tolist() == [-INF, -INF]
        assert frame["hi"].tolist() == pytest.approx([-1.0, 0.0], abs=1e-6)
        assert frame["unbounded_below"].tolist() == [1, 1]
        assert frame["unbounded_above"].tolist() == [0, 0]

    def test_esub_empty(self, run):
        """Test that the empty set prints as lo=inf, hi=-inf."""
        code, frame = run("esub", "ex1", "--fn", "phi", "--at", "0")
        assert code == EXIT_OK
        assert (frame["lo"][0], frame["hi"][0]) == (INF, -INF)

    def test_eval(self, run):
        """Test values and closure values."""
        code, frame = run("eval", "ex1", "--fn", "phi", "--at", "0", "1")
        assert code == EXIT_OK
        assert frame["value"].tolist() == pytest.approx([0.0, 1.0])
        assert frame["closure_value"].tolist() == pytest.approx([0.0, -1.0])

    def test_sumrule(self, run):
        """Test the split of -1 at eps = 1."""
        code, frame = run("sumrule", "sum", "--fn", "phi", "psi", "--at", "0", "--eps", "1", "--xi", "-1")
        assert code == EXIT_OK
        row = frame.iloc[0]
        assert (row["eps1"], row["eps2"]) == pytest.approx((0.5, 0.5), abs=1e-9)
        assert (row["xi1"], row["xi2"]) == pytest.approx((-0.5, -0.5), abs=1e-9)

    def test_value_fn(self, run):
        """Test m(x) = 2|x| for the cone problem."""
        code, frame = run("value-fn", "ex4", "--problem", "P", "--at", "0", "0.5", "-1")
        assert code == EXIT_OK
        assert frame["m"].tolist() == pytest.approx([0.0, 1.0, 2.0], abs=1e-9)

    def test_coderiv_membership(self, run):
        """Test a pair in the coderivative of the cone."""
        code, frame = run("coderiv", "cones", "--set", "cone", "--at", "0", "0", "--v", "2", "--u", "1")
        assert code == EXIT_OK
        assert frame["member"].tolist() == [1]

    def test_check_opt(self, run):
        """Test the certificate of the origin."""
        code, frame = run("check-opt", "optimality", "--fn", "phi", "--set", "S", "--at", "0", "--eps", "0.5")
        assert code == EXIT_OK
        assert frame["eps1"][0] + frame["eps2"][0] == pytest.approx(0.5, abs=1e-10)

    def test_text_format(self, run):
        """Test the aligned text output."""
        code, out = run("eval", "ex1", "--fn", "phi", "--at", "0", "--format", "text", as_frame=False)
        assert code == EXIT_OK
        assert out.splitlines()[0].split() == ["x", "value", "closure_value"]

    def test_plot(self, run, tmp_path):
        """Test that --plot writes an SVG chart."""
        path = tmp_path / "m.svg"
        code, _ = run("value-fn", "ex4", "--problem", "Q", "--at", "-1", "0", "1", "--plot", str(path))
        assert code == EXIT_OK
        assert path.read_text().lstrip().startswith("<?xml")


class TestExitCodes:
    """Test suite for failing subcommands."""

    def test_missing_file(self, capsys, tmp_path):
        """Test that a missing problem file exits with 2."""
        code = run_subcommand(["eval", "--file", str(tmp_path / "none.ncx"), "--fn", "f", "--at", "0"])
        assert code == EXIT_INPUT
        assert capsys.readouterr().out == ""

    def test_unknown_function(self, run):
        """Test that an undeclared name exits with 2."""
        code, _ = run("eval", "ex1", "--fn", "nope", "--at", "0")
        assert code == EXIT_INPUT

    def test_bad_window(self, run):
        """Test that an empty slope window exits with 2."""
        code, _ = run("esub", "ex1", "--fn", "phi", "--at", "0", "--xi-window", "1", "1")
        assert code == EXIT_INPUT

    def test_malformed_file(self, capsys, tmp_path):
        """Test that a parse error exits with 2."""
        path = tmp_path / "bad.ncx"
        path.write_text("function f\n  domain [0, 1]\n")
        assert run_subcommand(["eval", "--file", str(path), "--fn", "f", "--at", "0"]) == EXIT_INPUT

    def test_not_eps_solution(self, run):
        """Test that a point that is not an eps-solution exits with 1."""
        code, _ = run("check-opt", "optimality", "--fn", "phi", "--set", "S", "--at", "1", "--eps", "1")
        assert code == EXIT_DOMAIN

    def test_point_outside_domain(self, run):
        """Test that x_bar off the domain exits with 1."""
        code, _ = run("esub", "ex1", "--fn", "phi", "--at", "2", "--eps", "0.5")
        assert code == EXIT_DOMAIN

    def test_wrong_point_count(self, run):
        """Test that --at with the wrong arity exits with 1."""
        code, _ = run("esub", "ex1", "--fn", "phi", "--at", "0", "1")
        assert code == EXIT_DOMAIN

    def test_missing_direction(self, run):
        """Test that a polyhedron normal needs --direction."""
        code, _ = run("normal", "cones", "--set", "cone", "--at", "0", "0")
        assert code == EXIT_DOMAIN

    def test_missing_flag(self):
        """Test that argparse rejects a missing required flag."""
        with pytest.raises(SystemExit):
            run_subcommand(["esub", "--file", "x.ncx", "--at", "0"])


class TestVerify:
    """Test suite for the verify subcommand."""

    def test_single_suite(self, capsys, tmp_path):
        """Test a passing suite and the report file."""
        out_path = tmp_path / "report.csv"
        code = run_subcommand(["verify", "--suite", "optimality", "--out", str(out_path)])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert out.startswith("suite,check,passed,detail\n")
        assert out_path.read_text() == out
