"""Logging configuration."""

import logging
import os
from typing import List, Optional

from galrel.config.settings import app_settings


def configure_logging(level: Optional[str] = None) -> None:
    """Configure logging for the application.

    Reports are written to stdout by the CLI, so log records go to stderr
    and, when GALREL_LOG_FILE is set, to that file as well.
    """
    log_level = (level or app_settings.logging.LOG_LEVEL).upper()
    log_file = app_settings.logging.LOG_FILE

    handlers: List[logging.Handler] = [logging.StreamHandler()]
    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        handlers=handlers,
        force=True,
    )
