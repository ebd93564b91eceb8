"""Nearly convex functions: piecewise model, validation and conjugation."""

from nearly_convex.func.conjugate import conjugate
from nearly_convex.func.piecewise import (
    NearlyConvexFn1D,
    Piece,
    add_affine,
    add_functions,
    closure_value,
    evaluate,
    indicator_function,
    make_function,
    scale_function,
)
from nearly_convex.func.separable import SeparableFn2D, conjugate2, evaluate2, y_slice
from nearly_convex.func.validation import ValidationReport, ensure_valid, validate

__all__ = [
    "conjugate",
    "NearlyConvexFn1D",
    "Piece",
    "add_affine",
    "add_functions",
    "closure_value",
    "evaluate",
    "indicator_function",
    "make_function",
    "scale_function",
    "SeparableFn2D",
    "conjugate2",
    "evaluate2",
    "y_slice",
    "ValidationReport",
    "ensure_valid",
    "validate",
]
