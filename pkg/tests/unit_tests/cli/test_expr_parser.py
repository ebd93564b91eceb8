"""Unit tests for the piece formula and interval reader."""

import pytest

from nearly_convex.cli.expr_parser import LineCursor, format_interval, parse_expression, parse_interval
from nearly_convex.core.errors import ParseError
from nearly_convex.core.expr import abs_, add, const, eval_expr, neg, scale, sq, sqrt, to_text, var
from nearly_convex.core.interval import INF, Interval


class TestParseExpression:
    """Test suite for parse_expression."""

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("x", var()),
            ("x + 1", add(var(), const(1.0))),
            ("x - 1", add(var(), neg(const(1.0)))),
            ("2*x", scale(2.0, var())),
            ("x*3", scale(3.0, var())),
            ("-sqrt(x)", neg(sqrt(var()))),
            ("x^2", sq(var())),
            ("sq(x)", sq(var())),
            ("0.5*abs(x)", scale(0.5, abs_(var()))),
            ("(-1)", const(-1.0)),
        ],
    )
    def test_shapes(self, text, expected):
        """Test the tree built for simple formulas."""
        assert parse_expression(text) == expected

    def test_precedence(self):
        """Test that * binds tighter than + and ^ tighter than unary minus."""
        e = parse_expression("1 + 2*x^2")
        assert eval_expr(e, 3.0) == pytest.approx(19.0)
        assert eval_expr(parse_expression("-x^2"), 2.0) == pytest.approx(-4.0)

    def test_constant_products(self):
        """Test that a folded constant factor is accepted."""
        e = parse_expression("(1 + 1)*sqrt(x)")
        assert e == scale(2.0, sqrt(var()))

    @pytest.mark.parametrize("text", ["x + (-1)", "0.5*(x + 1)", "-sqrt(x)", "abs(x) + sq(x)"])
    def test_reads_printed_text(self, text):
        """Test that printed formulas read back to the same text."""
        assert to_text(parse_expression(text)) == text

    @pytest.mark.parametrize(
        "text, col, fragment",
        [
            ("x*x", 2, "constant factor"),
            ("x^3", 4, "exponent 2"),
            ("foo(x)", 1, "unknown name"),
            ("x + ", 5, "expected"),
            ("x )", 3, "unexpected text"),
            ("", 1, "expected an expression"),
        ],
    )
    def test_errors(self, text, col, fragment):
        """Test the column and message of parse errors."""
        with pytest.raises(ParseError) as info:
            parse_expression(text, line=7)
        assert info.value.line == 7
        assert info.value.col == col
        assert fragment in info.value.message

    def test_offset_shifts_columns(self):
        """Test that the offset maps into the source line."""
        with pytest.raises(ParseError) as info:
            parse_expression("y", line=3, offset=10)
        assert info.value.col == 11
        assert str(info.value).startswith("line 3, column 11:")


class TestParseInterval:
    """Test suite for parse_interval and format_interval."""

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("[0, 1]", Interval.closed(0, 1)),
            ("[0, 1)", Interval(lo=0, hi=1, hi_closed=False)),
            ("(0, 1]", Interval(lo=0, hi=1, lo_closed=False)),
            ("(-inf, inf)", Interval(lo=-INF, hi=INF)),
            ("[-2.5, 1e1]", Interval.closed(-2.5, 10)),
        ],
    )
    def test_parse(self, text, expected):
        """Test bracket kinds and infinite ends."""
        assert parse_interval(LineCursor(text, 1)) == expected

    def test_empty_interval(self):
        """Test that lo > hi is rejected."""
        with pytest.raises(ParseError, match="empty interval"):
            parse_interval(LineCursor("[2, 1]", 1))

    def test_missing_bracket(self):
        """Test that an interval must open with a bracket."""
        with pytest.raises(ParseError) as info:
            parse_interval(LineCursor("  0, 1]", 4))
        assert info.value.col == 3

    @pytest.mark.parametrize("text", ["[0, 1]", "[0, 1)", "(-inf, 0.5]"])
    def test_format_reads_back(self, text):
        """Test that formatted intervals parse to the same interval."""
        iv = parse_interval(LineCursor(text, 1))
        assert parse_interval(LineCursor(format_interval(iv), 1)) == iv
