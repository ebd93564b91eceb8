"""Unit tests for configuration and logging setup."""

import logging

from nearly_convex.core.config import Config, config
from nearly_convex.core.log_setup import setup_logging


class TestConfig:
    """Test suite for Config."""

    def test_defaults(self, monkeypatch):
        """Test default grid sizes and slope window."""
        for name in ("NCX_ORACLE_X_GRID", "NCX_ORACLE_XI_GRID", "NCX_XI_WINDOW_LO", "NCX_XI_WINDOW_HI"):
            monkeypatch.delenv(name, raising=False)
        fresh = Config()
        assert fresh.oracle_x_grid > 0
        assert fresh.xi_window_lo < fresh.xi_window_hi

    def test_module_level_instance(self):
        """Test that the shared config is a Config."""
        assert isinstance(config, Config)
        assert config.output_format in ("csv", "text")


class TestSetupLogging:
    """Test suite for setup_logging."""

    def test_accepts_level_name(self):
        """Test that setup_logging runs with an explicit level."""
        setup_logging("info")
        logger = logging.getLogger("CLI")
        assert isinstance(logger, logging.Logger)
