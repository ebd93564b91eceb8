"""Static SVG charts for ``--plot``: curves of (x, y) points and bands of intervals."""

import logging
import math
from pathlib import Path
from typing import List, Tuple, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from pydantic import BaseModel, ConfigDict  # noqa: E402

logger = logging.getLogger("CLI")

WIDTH_PX = 800
HEIGHT_PX = 600
# the SVG backend writes one user unit per point
_POINTS_PER_INCH = 72.0

_STYLE = {
    "svg.hashsalt": "nearly-convex",
    "svg.fonttype": "path",
    "path.simplify": False,
}


class PlotSeries(BaseModel):
    """What to draw: a curve through ``points`` and/or vertical bars ``(t, lo, hi)``."""

    model_config = ConfigDict(frozen=True)

    title: str = ""
    x_label: str = "x"
    y_label: str = ""
    points: Tuple[Tuple[float, float], ...] = ()
    bands: Tuple[Tuple[float, float, float], ...] = ()


def _clip_bands(bands: Tuple[Tuple[float, float, float], ...]) -> List[Tuple[float, float, float]]:
    """Replace infinite band ends by a margin beyond the finite data."""
    finite = [v for _, lo, hi in bands for v in (lo, hi) if math.isfinite(v)]
    if not finite:
        floor, ceiling = -1.0, 1.0
    else:
        span = max(1.0, max(finite) - min(finite))
        floor, ceiling = min(finite) - 0.25 * span, max(finite) + 0.25 * span
    clipped = []
    for t, lo, hi in bands:
        if lo > hi:
            continue
        clipped.append((t, lo if math.isfinite(lo) else floor, hi if math.isfinite(hi) else ceiling))
    return clipped


def emit_plot(series: PlotSeries, path: Union[str, Path]) -> Path:
    """Write ``series`` as an 800x600 SVG; identical input gives identical bytes.

    Raises:
        OSError: if the file cannot be written.
    """
    path = Path(path)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(WIDTH_PX / _POINTS_PER_INCH, HEIGHT_PX / _POINTS_PER_INCH))
        try:
            bands = _clip_bands(series.bands)
            if bands:
                ts = [b[0] for b in bands]
                ax.fill_between(ts, [b[1] for b in bands], [b[2] for b in bands],
                                color="tab:blue", alpha=0.3, step="mid")
                ax.plot(ts, [b[1] for b in bands], color="tab:blue", linewidth=1.0)
                ax.plot(ts, [b[2] for b in bands], color="tab:blue", linewidth=1.0)
            points = [(x, y) for x, y in series.points if math.isfinite(y)]
            if points:
                ax.plot([p[0] for p in points], [p[1] for p in points], color="tab:red", linewidth=1.5)
            ax.set_title(series.title)
            ax.set_xlabel(series.x_label)
            ax.set_ylabel(series.y_label)
            ax.grid(True, linewidth=0.5)
            fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
        finally:
            plt.close(fig)
    logger.info("Wrote plot %s", path)
    return path
