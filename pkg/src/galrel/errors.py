"""
Defines the error classes raised by galrel.
"""

from typing import Optional


class Error(Exception):
    """Base class for all galrel errors."""


class InputError(Error):
    """Malformed input: bad spec file, bad argument, unparsable value."""

    def __init__(
        self, message: str = "Invalid input", field: Optional[str] = None
    ) -> None:
        self.field = field
        super().__init__(f"{message} (field {field})" if field else message)


class UnsupportedError(Error):
    """The configuration is valid but outside what galrel supports."""

    def __init__(
        self, message: str = "Unsupported configuration", reason: Optional[str] = None
    ) -> None:
        self.reason = reason
        super().__init__(f"{message}: {reason}" if reason else message)


class CertificationError(Error):
    """Numerics could not be certified at the working precision."""

    def __init__(
        self,
        message: str = "Certification failed",
        precision: Optional[int] = None,
    ) -> None:
        self.precision = precision
        super().__init__(
            f"{message} at {precision} bits" if precision is not None else message
        )


class BudgetExhaustedError(UnsupportedError):
    """A bounded search ran out of candidates."""

    def __init__(
        self, message: str = "Search budget exhausted", budget: int = 0
    ) -> None:
        self.budget = budget
        super().__init__(message, f"budget {budget}")


class MathError(Error):
    """A mathematical precondition does not hold."""


class NotSquarefreeError(MathError):
    """Polynomial has a repeated factor."""


class NotPositiveDefiniteError(MathError):
    """Gram matrix is not positive definite."""


class InfiniteQuotientError(MathError):
    """Relation matrix presents an infinite abelian group."""


class GroupAxiomError(MathError):
    """Multiplication table fails a group axiom."""


class NotRingClosedError(MathError):
    """Integral basis does not span a ring."""


class RecognitionError(CertificationError):
    """Automorphism recognition from numerical roots failed."""
