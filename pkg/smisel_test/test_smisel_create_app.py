"""Provides unit tests for smisel.create_app."""

from types import SimpleNamespace
import unittest
import unittest.mock

from smisel import create_app
from smisel.config import AppConfig
from smisel.core.contract.error import SmiselError


class TestSmiselCreateApp(unittest.TestCase):
    """Unit tests for smisel.create_app."""

    def test_configuration_unavailable(self) -> None:
        """Test effects of a configuration without an environment."""
        logger = unittest.mock.Mock()

        with self.assertRaises(SmiselError):
            create_app(SimpleNamespace(), logger)

        logger.error.assert_called_once_with("Configuration unavailable.")

    def test_invalid_environment(self) -> None:
        """Test effects of an unknown environment name."""
        config = SimpleNamespace(smisel=SimpleNamespace(environment="staging"))
        logger = unittest.mock.Mock()

        with self.assertRaises(SmiselError):
            create_app(config, logger)

        logger.error.assert_called_once_with("Invalid environment name.")

    def test_valid_environment(self) -> None:
        """Test that a valid environment applies its profile."""
        config = SimpleNamespace(smisel=SimpleNamespace(environment="production"))
        logger = unittest.mock.Mock()

        profile = create_app(config, logger)

        self.assertIs(profile, AppConfig["production"])
        logger.set_level.assert_called_once_with(30)
        logger.error.assert_not_called()

    def test_logging_gateway_unavailable(self) -> None:
        """Test that a missing logging gateway is an error."""
        config = SimpleNamespace(smisel=SimpleNamespace(environment="testing"))

        with self.assertRaises(SmiselError):
            create_app(config, None)
