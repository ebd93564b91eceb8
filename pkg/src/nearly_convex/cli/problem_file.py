"""Problem files: functions, sets and parametric problems as plain text blocks.

A file is a sequence of blocks, each closed by ``end``::

    # Example ex1
    function phi
      domain [0, 1]
      on [0, 1): -sqrt(x)
      at 1: 1
    end

    set G
      polyhedron
      vertex 0 0
      ray 1 1
      ray -1 1
    end

    parametric P
      f1 f
      f2 g
      point 0.5 1: inf
      graph G
    end

Everything after ``#`` is a comment. Names referenced by a ``parametric``
block must be declared above it.
"""

import logging
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

import pydantic
from pydantic import BaseModel, ConfigDict

from nearly_convex.cli.expr_parser import ExprParser, LineCursor, format_interval, parse_interval
from nearly_convex.core.errors import ParseError
from nearly_convex.core.expr import Expr, format_number, to_text
from nearly_convex.core.interval import Interval
from nearly_convex.core.polyhedron import Vec2, VPolyhedron2
from nearly_convex.func.piecewise import NearlyConvexFn1D, make_function
from nearly_convex.func.separable import SeparableFn2D
from nearly_convex.func.validation import ensure_valid
from nearly_convex.problems.parametric import ParametricProblem

logger = logging.getLogger("CLI")

SetValue = Union[Interval, VPolyhedron2]
_Line = Tuple[int, str]


class ProblemFile(BaseModel):
    """Named objects of one problem file, in declaration order."""

    model_config = ConfigDict(frozen=True)

    functions: Dict[str, NearlyConvexFn1D] = {}
    sets: Dict[str, SetValue] = {}
    parametric: Dict[str, ParametricProblem] = {}

    def function(self, name: str) -> NearlyConvexFn1D:
        return _lookup(self.functions, name, "function")

    def interval_set(self, name: str) -> Interval:
        value = _lookup(self.sets, name, "set")
        if not isinstance(value, Interval):
            raise KeyError(f"set '{name}' is a polyhedron, not an interval")
        return value

    def polyhedron(self, name: str) -> VPolyhedron2:
        value = _lookup(self.sets, name, "set")
        if isinstance(value, Interval):
            raise KeyError(f"set '{name}' is an interval, not a polyhedron")
        return value

    def problem(self, name: str) -> ParametricProblem:
        return _lookup(self.parametric, name, "parametric problem")


def _lookup(table: dict, name: str, kind: str):
    if name not in table:
        known = ", ".join(table) or "none"
        raise KeyError(f"no {kind} named '{name}' (declared: {known})")
    return table[name]


def _strip_comment(text: str) -> str:
    cut = text.find("#")
    return text if cut < 0 else text[:cut]


def _build(line: int, factory: Callable, *args, **kwargs):
    """Run a model constructor, reporting pydantic errors at ``line``."""
    try:
        return factory(*args, **kwargs)
    except pydantic.ValidationError as exc:
        first = exc.errors()[0]
        raise ParseError(line, 1, first["msg"]) from exc


class _Parser:
    def __init__(self, text: str):
        self.lines: List[_Line] = [
            (number, _strip_comment(raw).rstrip()) for number, raw in enumerate(text.splitlines(), start=1)
        ]
        self.lines = [(n, t) for n, t in self.lines if t.strip()]
        self.index = 0
        self.functions: Dict[str, NearlyConvexFn1D] = {}
        self.sets: Dict[str, SetValue] = {}
        self.parametric: Dict[str, ParametricProblem] = {}

    def parse(self) -> ProblemFile:
        if not self.lines:
            raise ParseError(1, 1, "the file declares no function, set or problem")
        blocks = {"function": self._function, "set": self._set, "parametric": self._parametric}
        while self.index < len(self.lines):
            number, text = self.lines[self.index]
            self.index += 1
            cur = LineCursor(text, number)
            cur.skip()
            start = cur.pos
            kind = cur.word()
            if kind not in blocks:
                cur.pos = start
                raise cur.error(f"expected 'function', 'set' or 'parametric', got '{kind}'")
            name = cur.word()
            cur.finish()
            if name in self.functions or name in self.sets or name in self.parametric:
                raise ParseError(number, 1, f"'{name}' is declared twice")
            blocks[kind](number, name, list(self._body(number, name)))
        return ProblemFile(functions=self.functions, sets=self.sets, parametric=self.parametric)

    def _body(self, header: int, name: str) -> Iterator[_Line]:
        while self.index < len(self.lines):
            number, text = self.lines[self.index]
            self.index += 1
            if text.strip() == "end":
                return
            yield number, text
        raise ParseError(header, 1, f"block '{name}' is not closed with 'end'")

    # ------------------------------------------------------------------
    # Blocks
    # ------------------------------------------------------------------
    def _function(self, header: int, name: str, body: List[_Line]) -> None:
        domain: Optional[Interval] = None
        pieces: List[Tuple[Interval, Expr]] = []
        overrides: Dict[float, float] = {}
        for number, text in body:
            cur = LineCursor(text, number)
            key = cur.word()
            if key == "domain":
                if domain is not None:
                    raise ParseError(number, 1, "domain given twice")
                domain = parse_interval(cur)
                cur.finish()
            elif key == "on":
                interval = parse_interval(cur)
                cur.expect(":")
                pieces.append((interval, ExprParser(cur).parse()))
            elif key == "at":
                point = cur.number()
                cur.expect(":")
                value = cur.number()
                cur.finish()
                if point in overrides:
                    raise ParseError(number, 1, f"override at {point:g} given twice")
                overrides[point] = value
            else:
                raise ParseError(number, 1, f"unknown function line '{key}'")
        if domain is None:
            raise ParseError(header, 1, f"function '{name}' has no domain line")
        f = _build(header, make_function, domain, pieces, overrides, name=name)
        self.functions[name] = ensure_valid(f)
        logger.debug("parsed function %s with %d piece(s)", name, len(pieces))

    def _set(self, header: int, name: str, body: List[_Line]) -> None:
        if not body:
            raise ParseError(header, 1, f"set '{name}' is empty")
        number, text = body[0]
        cur = LineCursor(text, number)
        key = cur.word()
        if key == "interval":
            value = parse_interval(cur)
            cur.finish()
            if len(body) > 1:
                raise ParseError(body[1][0], 1, "an interval set takes one line")
            self.sets[name] = value
            return
        if key != "polyhedron":
            raise ParseError(number, 1, f"expected 'interval' or 'polyhedron', got '{key}'")
        cur.finish()
        vertices: List[Tuple[float, float]] = []
        rays: List[Tuple[float, float]] = []
        for number, text in body[1:]:
            cur = LineCursor(text, number)
            key = cur.word()
            if key not in ("vertex", "ray"):
                raise ParseError(number, 1, f"expected 'vertex' or 'ray', got '{key}'")
            pair = (cur.number(), cur.number())
            cur.finish()
            (vertices if key == "vertex" else rays).append(pair)
        if not vertices:
            raise ParseError(header, 1, f"polyhedron '{name}' has no vertex")
        self.sets[name] = _build(header, VPolyhedron2.from_points, vertices, rays)

    def _parametric(self, header: int, name: str, body: List[_Line]) -> None:
        parts: Dict[str, NearlyConvexFn1D] = {}
        points: List[Tuple[Vec2, float]] = []
        graph: Optional[VPolyhedron2] = None
        for number, text in body:
            cur = LineCursor(text, number)
            key = cur.word()
            if key in ("f1", "f2"):
                cur.skip()
                start = cur.pos
                ref = cur.word()
                cur.finish()
                if ref not in self.functions:
                    cur.pos = start
                    raise cur.error(f"function '{ref}' is not declared above")
                parts[key] = self.functions[ref]
            elif key == "point":
                x, y = cur.number(), cur.number()
                cur.expect(":")
                value = cur.number()
                cur.finish()
                points.append((_build(number, Vec2, x=x, y=y), value))
            elif key == "graph":
                cur.skip()
                start = cur.pos
                ref = cur.word()
                cur.finish()
                if not isinstance(self.sets.get(ref), VPolyhedron2):
                    cur.pos = start
                    raise cur.error(f"polyhedron '{ref}' is not declared above")
                graph = self.sets[ref]
            else:
                raise ParseError(number, 1, f"unknown parametric line '{key}'")
        for key in ("f1", "f2"):
            if key not in parts:
                raise ParseError(header, 1, f"parametric '{name}' has no {key} line")
        objective = _build(header, SeparableFn2D, f1=parts["f1"], f2=parts["f2"],
                           point_overrides=tuple(points), name=name)
        self.parametric[name] = _build(header, ParametricProblem, objective=objective,
                                       constraint_graph=graph, name=name)


def parse_problem_file(text: str) -> ProblemFile:
    """Parse problem-file text into validated library objects.

    Raises:
        ParseError: on malformed text, with the line and column.
        ValidationError: if a declared function is not nearly convex.
    """
    return _Parser(text).parse()


def load_problem_file(path: Union[str, Path]) -> ProblemFile:
    """Read and parse a problem file from disk."""
    path = Path(path)
    logger.info("Loading problem file %s", path)
    return parse_problem_file(path.read_text(encoding="utf-8"))


def _name_of(table: dict, value, kind: str) -> str:
    for name, candidate in table.items():
        if candidate == value:
            return name
    raise ValueError(f"the {kind} used by a parametric problem is not declared in the file")


def serialize_problem_file(pf: ProblemFile) -> str:
    """Canonical text of ``pf``; parsing it gives back an equal object model."""
    out: List[str] = []
    for name, f in pf.functions.items():
        out += [f"function {name}", f"  domain {format_interval(f.domain)}"]
        out += [f"  on {format_interval(p.interval)}: {to_text(p.expr)}" for p in f.pieces]
        out += [f"  at {format_number(point)}: {format_number(value)}" for point, value in f.overrides]
        out += ["end", ""]
    for name, value in pf.sets.items():
        out.append(f"set {name}")
        if isinstance(value, Interval):
            out.append(f"  interval {format_interval(value)}")
        else:
            out.append("  polyhedron")
            out += [f"  vertex {format_number(v.x)} {format_number(v.y)}" for v in value.vertices]
            out += [f"  ray {format_number(r.x)} {format_number(r.y)}" for r in value.rays]
        out += ["end", ""]
    for name, problem in pf.parametric.items():
        F = problem.objective
        out += [
            f"parametric {name}",
            f"  f1 {_name_of(pf.functions, F.f1, 'function')}",
            f"  f2 {_name_of(pf.functions, F.f2, 'function')}",
        ]
        out += [f"  point {format_number(p.x)} {format_number(p.y)}: {format_number(v)}"
                for p, v in F.point_overrides]
        if problem.constraint_graph is not None:
            out.append(f"  graph {_name_of(pf.sets, problem.constraint_graph, 'graph')}")
        out += ["end", ""]
    return "\n".join(out)
