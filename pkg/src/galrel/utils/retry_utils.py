"""Retry utilities for certified numerics."""

import functools
import logging
from typing import Any, Callable, Optional, TypeVar

from galrel.config.settings import app_settings
from galrel.errors import CertificationError

logger = logging.getLogger(__name__)

T = TypeVar("T")


def with_precision_retry(
    initial_bits: Optional[int] = None,
    max_bits: Optional[int] = None,
    backoff_factor: int = 2,
) -> Callable[[Callable[..., T]], Callable[..., T]]:
    """Decorator that reruns a computation at higher precision on failure.

    The wrapped callable must accept a ``precision_bits`` keyword. A call
    that raises CertificationError is repeated with the precision multiplied
    by ``backoff_factor`` until ``max_bits`` is exceeded.

    Args:
        initial_bits: Starting precision, defaults to the configured value
        max_bits: Precision ceiling, defaults to the configured value
        backoff_factor: Precision multiplier between attempts
    """

    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> T:
            bits = (
                kwargs.pop("precision_bits", None)
                or initial_bits
                or app_settings.precision.DEFAULT_BITS
            )
            ceiling = max_bits or app_settings.precision.MAX_BITS
            last_exception: Optional[CertificationError] = None

            while bits <= ceiling:
                try:
                    return func(*args, precision_bits=bits, **kwargs)
                except CertificationError as e:
                    last_exception = e
                    logger.warning(
                        "%s not certified at %d bits, retrying: %s",
                        func.__name__,
                        bits,
                        e,
                    )
                    bits *= backoff_factor

            if last_exception is not None:
                raise last_exception
            raise CertificationError("Precision ceiling below start", precision=bits)

        return wrapper

    return decorator
