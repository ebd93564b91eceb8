import os

from dotenv import load_dotenv
from pydantic_settings import BaseSettings

load_dotenv(override=True)


class Config(BaseSettings):
    """Configuration settings for the nearly convex calculus toolkit."""
    # Application settings
    app_name: str = "Nearly Convex Calculus"
    app_version: str = "0.1.0"
    # Logging settings
    log_level: str = os.environ.get("NCX_LOG_LEVEL", "WARNING")
    debug: bool = os.environ.get("NCX_DEBUG", "false").lower() == "true"
    # Oracle grid settings
    oracle_x_grid: int = int(os.environ.get("NCX_ORACLE_X_GRID", "4001"))
    oracle_xi_grid: int = int(os.environ.get("NCX_ORACLE_XI_GRID", "2001"))
    convexity_grid: int = int(os.environ.get("NCX_CONVEXITY_GRID", "1025"))
    # Decomposition search settings
    subsplit_grid: int = int(os.environ.get("NCX_SUBSPLIT_GRID", "65"))
    # Sensitivity settings
    eta_ladder_depth: int = int(os.environ.get("NCX_ETA_LADDER_DEPTH", "20"))
    solution_set_samples: int = int(os.environ.get("NCX_SOLUTION_SET_SAMPLES", "257"))
    constrained_y_samples: int = int(os.environ.get("NCX_CONSTRAINED_Y_SAMPLES", "9"))
    sens_xi_grid: int = int(os.environ.get("NCX_SENS_XI_GRID", "161"))
    value_fn_grid: int = int(os.environ.get("NCX_VALUE_FN_GRID", "1025"))
    # Slope window
    xi_window_lo: float = float(os.environ.get("NCX_XI_WINDOW_LO", "-8"))
    xi_window_hi: float = float(os.environ.get("NCX_XI_WINDOW_HI", "8"))
    # Output settings
    output_format: str = os.environ.get("NCX_OUTPUT_FORMAT", "csv")
    fixtures_dir: str = os.environ.get("NCX_FIXTURES_DIRECTORY", "./data/fixtures")
    # Additional settings can be added here as needed

config = Config()
