"""Provides unit tests for smisel.config.Config.init_app."""

import unittest
import unittest.mock

from smisel.config import AppConfig, Config, ProductionConfig


class TestSmiselConfigInitApp(unittest.TestCase):
    """Unit tests for smisel.config.Config.init_app."""

    def test_profile_sets_log_level(self) -> None:
        """Test that each profile applies its own log level."""
        for profile, level in (
            (Config, 20),
            (AppConfig["development"], 10),
            (AppConfig["testing"], 20),
            (ProductionConfig, 30),
        ):
            logger = unittest.mock.Mock()

            profile.init_app(logger)

            logger.set_level.assert_called_once_with(level)

    def test_default_profile(self) -> None:
        """Test that the default environment maps to the base profile."""
        self.assertIs(AppConfig["default"], Config)
        self.assertFalse(Config.DEBUG)
