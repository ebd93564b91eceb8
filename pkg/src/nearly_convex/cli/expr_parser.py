"""Infix text of piece formulas and intervals, read back into library objects."""

import math
import re
from typing import Optional

from nearly_convex.core.errors import ParseError
from nearly_convex.core.expr import Expr, abs_, add, const, format_number, neg, scale, sq, sqrt, var
from nearly_convex.core.interval import Interval

_NUMBER = re.compile(r"[+-]?(inf|\d+(\.\d*)?([eE][+-]?\d+)?|\.\d+([eE][+-]?\d+)?)")
_FUNCTIONS = {"abs": abs_, "sqrt": sqrt, "sq": sq}


class LineCursor:
    """Left-to-right reader over one line that reports 1-based columns."""

    def __init__(self, text: str, line: int, offset: int = 0):
        self.text = text
        self.line = line
        self.offset = offset
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(self.line, self.offset + self.pos + 1, message)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def expect(self, char: str) -> None:
        if self.peek() != char:
            raise self.error(f"expected '{char}'")
        self.pos += 1

    def accept(self, char: str) -> bool:
        if self.peek() == char:
            self.pos += 1
            return True
        return False

    def number(self) -> float:
        self.skip()
        match = _NUMBER.match(self.text, self.pos)
        if not match:
            raise self.error("expected a number")
        self.pos = match.end()
        return float(match.group(0))

    def word(self) -> str:
        self.skip()
        match = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(self.text, self.pos)
        if not match:
            raise self.error("expected a name")
        self.pos = match.end()
        return match.group(0)

    def rest(self) -> str:
        self.skip()
        return self.text[self.pos:]

    def finish(self) -> None:
        if not self.at_end():
            raise self.error(f"unexpected text '{self.rest()}'")


def parse_interval(cur: LineCursor) -> Interval:
    """``[a, b]``, ``(a, b)``, half-open variants; ``inf`` and ``-inf`` allowed."""
    opener = cur.peek()
    if not opener or opener not in "[(":
        raise cur.error("expected '[' or '('")
    cur.pos += 1
    lo = cur.number()
    cur.expect(",")
    hi = cur.number()
    closer = cur.peek()
    if not closer or closer not in "])":
        raise cur.error("expected ']' or ')'")
    cur.pos += 1
    if lo > hi:
        raise cur.error(f"empty interval: {lo:g} > {hi:g}")
    return Interval(lo=lo, hi=hi, lo_closed=opener == "[", hi_closed=closer == "]")


def format_interval(iv: Interval) -> str:
    left = "[" if iv.lo_closed else "("
    right = "]" if iv.hi_closed else ")"
    return f"{left}{format_number(iv.lo)}, {format_number(iv.hi)}{right}"


def _constant_value(e: Expr) -> Optional[float]:
    """Value of a variable-free expression, None otherwise."""
    if e.kind == "const":
        return e.value
    if e.kind == "var":
        return None
    values = [_constant_value(c) for c in e.children]
    if any(v is None for v in values):
        return None
    if e.kind == "add":
        return values[0] + values[1]
    if e.kind == "scale":
        return e.value * values[0]
    if e.kind == "neg":
        return -values[0]
    if e.kind == "abs":
        return abs(values[0])
    if e.kind == "sq":
        return values[0] ** 2
    return math.sqrt(values[0]) if values[0] >= 0 else None


class ExprParser:
    """Recursive descent over ``+ - *``, ``^2``, ``abs()``, ``sq()``, ``sqrt()``, ``x`` and numbers."""

    def __init__(self, cur: LineCursor):
        self.cur = cur

    def parse(self) -> Expr:
        if self.cur.at_end():
            raise self.cur.error("expected an expression")
        e = self.sum()
        self.cur.finish()
        return e

    def sum(self) -> Expr:
        e = self.product()
        while True:
            if self.cur.accept("+"):
                e = add(e, self.product())
            elif self.cur.accept("-"):
                e = add(e, neg(self.product()))
            else:
                return e

    def product(self) -> Expr:
        e = self.unary()
        while self.cur.peek() == "*":
            col = self.cur.pos
            self.cur.pos += 1
            right = self.unary()
            left_value, right_value = _constant_value(e), _constant_value(right)
            if left_value is not None:
                e = scale(left_value, right)
            elif right_value is not None:
                e = scale(right_value, e)
            else:
                self.cur.pos = col
                raise self.cur.error("a product needs a constant factor")
        return e

    def unary(self) -> Expr:
        if self.cur.accept("-"):
            return neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        e = self.atom()
        if self.cur.accept("^"):
            if self.cur.number() != 2:
                raise self.cur.error("only the exponent 2 is supported")
            e = sq(e)
        return e

    def atom(self) -> Expr:
        ch = self.cur.peek()
        if ch == "(":
            self.cur.pos += 1
            start = self.cur.pos
            # "(-c)" is a negative constant
            if self.cur.peek() == "-":
                match = _NUMBER.match(self.cur.text, self.cur.pos)
                if match:
                    self.cur.pos = match.end()
                    if self.cur.accept(")"):
                        return const(float(match.group(0)))
                    self.cur.pos = start
            inner = self.sum()
            self.cur.expect(")")
            return inner
        if ch.isdigit() or ch == ".":
            return const(self.cur.number())
        if ch.isalpha():
            name = self.cur.word()
            if name == "x":
                return var()
            if name in _FUNCTIONS:
                self.cur.expect("(")
                inner = self.sum()
                self.cur.expect(")")
                return _FUNCTIONS[name](inner)
            self.cur.pos -= len(name)
            raise self.cur.error(f"unknown name '{name}'")
        raise self.cur.error("expected a number, 'x', a function or '('")


def parse_expression(text: str, line: int = 1, offset: int = 0) -> Expr:
    """Parse one piece formula; errors carry the line and column."""
    return ExprParser(LineCursor(text, line, offset)).parse()
