"""Configuration package."""

from galrel.config.constants import (
    CHECKS,
    DEFAULT_ETA_TOL,
    EXIT_CHECK_FAILED,
    EXIT_INPUT_ERROR,
    EXIT_PASS,
    EXIT_UNSUPPORTED,
    VARIANTS,
)
from galrel.config.settings import app_settings

__all__ = [
    "CHECKS",
    "DEFAULT_ETA_TOL",
    "EXIT_CHECK_FAILED",
    "EXIT_INPUT_ERROR",
    "EXIT_PASS",
    "EXIT_UNSUPPORTED",
    "VARIANTS",
    "app_settings",
]
