"""A closed catalog of one-variable expressions used as piece formulas."""

import math
from typing import Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from nearly_convex.core.constants import TOL_EVAL
from nearly_convex.core.errors import DomainError

ExprKind = Literal["const", "var", "add", "scale", "abs", "sq", "sqrt", "neg"]

_ARITY = {"const": 0, "var": 0, "add": 2, "scale": 1, "abs": 1, "sq": 1, "sqrt": 1, "neg": 1}


class Expr(BaseModel):
    """One node of the expression tree.

    ``value`` carries the constant of ``const`` and the factor of ``scale``.
    """

    model_config = ConfigDict(frozen=True)

    kind: ExprKind
    value: Optional[float] = None
    children: Tuple["Expr", ...] = ()

    @model_validator(mode="after")
    def _check_shape(self) -> "Expr":
        if len(self.children) != _ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {_ARITY[self.kind]} operand(s)")
        if self.kind in ("const", "scale") and self.value is None:
            raise ValueError(f"{self.kind} needs a numeric value")
        return self

    def __str__(self) -> str:
        return to_text(self)


Expr.model_rebuild()


def const(c: float) -> Expr:
    return Expr(kind="const", value=float(c))


def var() -> Expr:
    return Expr(kind="var")


def add(a: Expr, b: Expr) -> Expr:
    return Expr(kind="add", children=(a, b))


def scale(c: float, e: Expr) -> Expr:
    return Expr(kind="scale", value=float(c), children=(e,))


def abs_(e: Expr) -> Expr:
    return Expr(kind="abs", children=(e,))


def sq(e: Expr) -> Expr:
    return Expr(kind="sq", children=(e,))


def sqrt(e: Expr) -> Expr:
    return Expr(kind="sqrt", children=(e,))


def neg(e: Expr) -> Expr:
    return Expr(kind="neg", children=(e,))


def sub(a: Expr, b: Expr) -> Expr:
    return add(a, neg(b))


ArrayLike = Union[float, np.ndarray]


def eval_expr(e: Expr, x: ArrayLike) -> ArrayLike:
    """Evaluate ``e`` at a scalar or elementwise over a numpy array.

    Raises:
        DomainError: if a square root receives a negative argument.
    """
    scalar = np.isscalar(x)
    out = _eval(e, np.asarray(x, dtype=float))
    return float(out) if scalar else out


def _eval(e: Expr, x: np.ndarray) -> np.ndarray:
    kind = e.kind
    if kind == "const":
        return np.full_like(x, e.value, dtype=float)
    if kind == "var":
        return x
    if kind == "add":
        return _eval(e.children[0], x) + _eval(e.children[1], x)
    inner = _eval(e.children[0], x)
    if kind == "scale":
        return e.value * inner
    if kind == "abs":
        return np.abs(inner)
    if kind == "sq":
        return inner * inner
    if kind == "neg":
        return -inner
    # sqrt
    if np.any(inner < -TOL_EVAL):
        bad = float(np.min(inner))
        raise DomainError(f"square root of negative value {bad:g}")
    return np.sqrt(np.maximum(inner, 0.0))


def uses_sqrt(e: Expr) -> bool:
    return e.kind == "sqrt" or any(uses_sqrt(c) for c in e.children)


def growth_degree(e: Expr) -> int:
    """Polynomial growth degree as |x| grows (sqrt counts as degree 1)."""
    kind = e.kind
    if kind == "const":
        return 0
    if kind == "var":
        return 1
    if kind == "add":
        return max(growth_degree(c) for c in e.children)
    if kind == "sq":
        return 2 * growth_degree(e.children[0])
    return growth_degree(e.children[0])


_PRECEDENCE = {"add": 1, "neg": 2, "scale": 3, "const": 4, "var": 4, "abs": 4, "sq": 4, "sqrt": 4}


def format_number(value: float) -> str:
    """Shortest text that reads back to the same float; integers without a decimal point."""
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return str(int(value)) if value.is_integer() else repr(value)


def to_text(e: Expr) -> str:
    """Canonical infix text that the problem-file parser reads back."""
    kind = e.kind
    if kind == "const":
        return format_number(e.value) if e.value >= 0 else f"({format_number(e.value)})"
    if kind == "var":
        return "x"
    if kind == "add":
        right = to_text(e.children[1])
        if e.children[1].kind == "add":
            right = f"({right})"
        return f"{to_text(e.children[0])} + {right}"
    child = e.children[0]
    if kind in ("abs", "sq", "sqrt"):
        return f"{kind}({to_text(child)})"
    text = to_text(child)
    if _PRECEDENCE[child.kind] < 4:
        text = f"({text})"
    if kind == "neg":
        return f"-{text}"
    factor = format_number(e.value) if e.value >= 0 else f"({format_number(e.value)})"
    return f"{factor}*{text}"


def directional_derivative(e: Expr, x: float, direction: float) -> float:
    """One-sided derivative lim_{t->0+} (e(x + t*direction) - e(x)) / t.

    ``direction`` is +1 or -1; the left derivative of ``e`` is
    ``-directional_derivative(e, x, -1)``. May return +/-inf (sqrt at 0).
    """
    _, slope = _dual(e, float(x), float(direction))
    return slope


def _dual(e: Expr, x: float, d: float) -> Tuple[float, float]:
    kind = e.kind
    if kind == "const":
        return e.value, 0.0
    if kind == "var":
        return x, d
    if kind == "add":
        (a, da), (b, db) = _dual(e.children[0], x, d), _dual(e.children[1], x, d)
        return a + b, da + db
    v, dv = _dual(e.children[0], x, d)
    if kind == "scale":
        return e.value * v, (e.value * dv if dv != 0 else 0.0)
    if kind == "neg":
        return -v, -dv
    if kind == "sq":
        if v == 0 and np.isinf(dv):
            return 0.0, _quotient(e, x, d)
        return v * v, (2.0 * v * dv if v != 0 else 0.0)
    if kind == "abs":
        if v > 0:
            return v, dv
        if v < 0:
            return -v, -dv
        return 0.0, abs(dv)
    # sqrt
    if v < -TOL_EVAL:
        raise DomainError(f"square root of negative value {v:g}")
    if v > 0:
        return float(np.sqrt(v)), dv / (2.0 * float(np.sqrt(v)))
    if dv > 0:
        return 0.0, np.inf
    # second-order contact: fall back to a difference quotient
    return 0.0, _quotient(e, x, d)


def _quotient(e: Expr, x: float, d: float) -> float:
    h = 1e-8 * max(1.0, abs(x))
    base = eval_expr(e, x)
    return (eval_expr(e, x + d * h) - base) / h
