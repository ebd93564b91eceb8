"""Tabular output of the subcommands: CSV by default, aligned text on request."""

import io
from typing import Dict, Iterable, List, Union

import pandas as pd

from nearly_convex.core.interval import IntervalSet

FLOAT_FORMAT = "%.12g"

Row = Dict[str, Union[float, int, str, bool]]


def interval_columns(s: IntervalSet) -> Row:
    """lo, hi and the unbounded flags; the empty set prints as lo=inf, hi=-inf."""
    return {
        "lo": s.lo,
        "hi": s.hi,
        "unbounded_below": s.unbounded_below,
        "unbounded_above": s.unbounded_above,
    }


def build_frame(rows: Iterable[Row], columns: List[str]) -> pd.DataFrame:
    """A frame with a fixed column order; flags become 0/1."""
    frame = pd.DataFrame(list(rows), columns=columns)
    for name in frame.columns:
        if frame[name].dtype == bool:
            frame[name] = frame[name].astype(int)
    return frame


def render(frame: pd.DataFrame, output_format: str = "csv") -> str:
    """Deterministic text of ``frame`` with 12 significant digits."""
    if output_format == "text":
        if frame.empty:
            return " ".join(frame.columns) + "\n"
        return frame.to_string(index=False, float_format=lambda v: FLOAT_FORMAT % v) + "\n"
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()
