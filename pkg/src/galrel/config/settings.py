"""
Settings for galrel.
Holds the global numeric, lattice and search settings.
"""

import logging
import os
from dataclasses import dataclass, fields
from typing import Any, Dict

from dotenv import load_dotenv

logger = logging.getLogger(__name__)


@dataclass
class PrecisionSettings:
    """Working precision for certified numerics"""

    DEFAULT_BITS: int = 128
    MAX_BITS: int = 1024


@dataclass
class LatticeSettings:
    """Settings for reduction and enumeration"""

    LLL_DELTA: float = 0.99
    MAX_ENUMERATED_POINTS: int = 2_000_000


@dataclass
class SearchSettings:
    """Budgets and limits for bounded searches"""

    PRIMITIVE_ELEMENT_BUDGET: int = 10_000
    TORSION_TOLERANCE_EXPONENT: int = 20
    MAX_GROUP_ORDER: int = 64
    MAX_FIELD_DEGREE: int = 12
    MAX_PERMUTATION_DEGREE: int = 16


@dataclass
class LoggingSettings:
    """Settings for logging"""

    LOG_LEVEL: str = "WARNING"
    LOG_FILE: str = ""


@dataclass
class AppSettings:
    """Application settings"""

    precision: PrecisionSettings
    lattice: LatticeSettings
    search: SearchSettings
    logging: LoggingSettings

    def __init__(self) -> None:
        """Initialise with default values"""
        self.precision = PrecisionSettings()
        self.lattice = LatticeSettings()
        self.search = SearchSettings()
        self.logging = LoggingSettings()

    @classmethod
    def load_from_env(cls) -> "AppSettings":
        """
        Loads settings from environment variables when present.

        A `.env` file in the working directory is read first.

        Returns:
            AppSettings: Instance with updated settings
        """
        load_dotenv()
        try:
            instance = cls()

            env_vars = {
                "precision.DEFAULT_BITS": "GALREL_PRECISION",
                "precision.MAX_BITS": "GALREL_MAX_PRECISION",
                "lattice.LLL_DELTA": "GALREL_LLL_DELTA",
                "lattice.MAX_ENUMERATED_POINTS": "GALREL_MAX_POINTS",
                "search.PRIMITIVE_ELEMENT_BUDGET": "GALREL_PRIMITIVE_BUDGET",
                "logging.LOG_LEVEL": "GALREL_LOG_LEVEL",
                "logging.LOG_FILE": "GALREL_LOG_FILE",
            }

            for path, env_var in env_vars.items():
                if env_value := os.getenv(env_var):
                    try:
                        obj_name, attr_name = path.split(".")
                        obj = getattr(instance, obj_name)
                        field_type = type(getattr(obj, attr_name))
                        setattr(obj, attr_name, field_type(env_value))
                    except (ValueError, AttributeError) as e:
                        logger.warning("Could not convert %s: %s", env_var, e)

            return instance

        except (AttributeError, TypeError) as e:
            logger.error("Error while loading settings: %s", e)
            return cls()

    def to_dict(self) -> Dict[str, Any]:
        """
        Converts the settings to a dictionary.

        Returns:
            Dict[str, Any]: Settings as nested dictionary
        """
        return {
            group: {
                field.name: getattr(getattr(self, group), field.name)
                for field in fields(getattr(self, group))
            }
            for group in ("precision", "lattice", "search", "logging")
        }

    def validate(self) -> bool:
        """
        Validates that all settings hold sensible values.

        Returns:
            bool: True if every setting is valid
        """
        if not 53 <= self.precision.DEFAULT_BITS <= self.precision.MAX_BITS:
            logger.error("Invalid precision configured")
            return False

        if not 0.25 < self.lattice.LLL_DELTA < 1.0:
            logger.error("LLL delta must lie in (1/4, 1)")
            return False

        if self.lattice.MAX_ENUMERATED_POINTS <= 0:
            logger.error("Invalid enumeration limit configured")
            return False

        search = self.search
        limits = (
            search.PRIMITIVE_ELEMENT_BUDGET,
            search.TORSION_TOLERANCE_EXPONENT,
            search.MAX_GROUP_ORDER,
            search.MAX_FIELD_DEGREE,
            search.MAX_PERMUTATION_DEGREE,
        )
        if any(value <= 0 for value in limits):
            logger.error("Search limits must be positive")
            return False

        if logging.getLevelName(self.logging.LOG_LEVEL.upper()) == (
            f"Level {self.logging.LOG_LEVEL.upper()}"
        ):
            logger.error("Unknown log level %s", self.logging.LOG_LEVEL)
            return False

        return True


# Global instance
app_settings = AppSettings.load_from_env()

if not app_settings.validate():
    logger.error("Invalid configuration")
    raise ValueError("Invalid configuration")
