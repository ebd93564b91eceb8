"""Per-invocation settings: the package config overlaid with command-line flags."""

import argparse
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, PositiveInt, model_validator

from nearly_convex.calculus.subdifferential import EtaLadder
from nearly_convex.core.config import config
from nearly_convex.core.interval import Interval

OutputFormat = Literal["csv", "text"]


class RunConfig(BaseModel):
    """Grid sizes, ladder depth, slope window, output format and plot path of one run."""

    model_config = ConfigDict(frozen=True)

    eta_ladder_depth: PositiveInt = config.eta_ladder_depth
    value_fn_grid: PositiveInt = config.value_fn_grid
    sens_xi_grid: PositiveInt = config.sens_xi_grid
    xi_window_lo: float = config.xi_window_lo
    xi_window_hi: float = config.xi_window_hi
    output_format: OutputFormat = config.output_format
    plot: Optional[Path] = None

    @model_validator(mode="after")
    def _check_window(self) -> "RunConfig":
        if not self.xi_window_hi > self.xi_window_lo:
            raise ValueError(f"the slope window [{self.xi_window_lo:g}, {self.xi_window_hi:g}] has no width")
        return self

    @property
    def ladder(self) -> EtaLadder:
        return EtaLadder.geometric(self.eta_ladder_depth)

    @property
    def xi_window(self) -> Interval:
        return Interval.closed(self.xi_window_lo, self.xi_window_hi)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        """Build from parsed flags; flags left unset keep the config defaults."""
        overrides = {}
        if getattr(args, "eta_depth", None) is not None:
            overrides["eta_ladder_depth"] = args.eta_depth
        if getattr(args, "grid", None) is not None:
            overrides["value_fn_grid"] = args.grid
            overrides["sens_xi_grid"] = args.grid
        if getattr(args, "xi_window", None) is not None:
            overrides["xi_window_lo"], overrides["xi_window_hi"] = args.xi_window
        if getattr(args, "format", None) is not None:
            overrides["output_format"] = args.format
        if getattr(args, "plot", None) is not None:
            overrides["plot"] = Path(args.plot)
        return cls(**overrides)
