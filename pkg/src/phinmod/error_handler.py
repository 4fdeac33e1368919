"""Error types and error handling utilities for the workbench.

Every failure the library raises on purpose derives from ``PhinModError`` so
the CLI can map it to exit code 2 without swallowing genuine bugs.
"""

import sys
import traceback
from typing import Any, Callable, List, Optional, Sequence, Tuple, Type, TypeVar

from .logger import logger

T = TypeVar('T')


class PhinModError(Exception):
    """Base class for all workbench errors."""


class FieldError(PhinModError):
    """Invalid field specification (non-prime p, e <= 0)."""


class FieldMismatchError(FieldError):
    """Arithmetic between elements of different model fields."""


class FieldDivisionError(FieldError, ZeroDivisionError):
    """Division by the zero element."""


class DimensionError(PhinModError):
    """Shapes of matrices, vectors or subspaces do not fit together."""


class NotInvariantError(PhinModError):
    """A subspace is not stable under the operator it is restricted to."""


class InconsistentFamilyError(PhinModError):
    """A subobject family is not invariant or has a varying Newton invariant."""


class HodgeTypeError(PhinModError):
    """Hodge type outside 0 < r < s."""


class ModuleValidationError(PhinModError):
    """A filtered (phi,N)-module violates its defining invariants."""

    def __init__(self, violations: Sequence[str]):
        self.violations: List[str] = list(violations)
        super().__init__("; ".join(self.violations))


class NormalizationError(PhinModError):
    """(phi, N) cannot be brought to a standard shape."""


class NotAdmissibleError(PhinModError):
    """Operation requires an admissible module."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class NoFamilyMatchError(PhinModError):
    """An admissible module matched no catalog family (internal failure)."""


class AmbiguousMatchError(PhinModError):
    """An admissible module matched non-equivalent catalog families."""


class CatalogConstraintError(PhinModError):
    """Family parameters violate the family's constraints."""

    def __init__(self, family: str, violations: Sequence[str]):
        self.family = family
        self.violations: List[str] = list(violations)
        super().__init__(f"{family}: " + "; ".join(self.violations))


class ModuleFormatError(PhinModError):
    """A module or instance document could not be parsed."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ConfigError(PhinModError):
    """A setting was given a value outside its allowed range."""

    def __init__(self, errors: Sequence[str]):
        self.errors: List[str] = list(errors)
        super().__init__("; ".join(self.errors))


class ErrorHandler:
    """Last-resort handling for the CLI process."""

    @staticmethod
    def handle_exception(exc_type, exc_value, exc_tb) -> None:
        """``sys.excepthook`` replacement.

        Workbench errors are logged as one line; anything else is a bug and
        is logged with its traceback.
        """
        if issubclass(exc_type, KeyboardInterrupt):
            return
        if issubclass(exc_type, PhinModError):
            logger.error(f"{exc_type.__name__}: {exc_value}")
            return
        details = ''.join(traceback.format_exception(exc_type, exc_value, exc_tb))
        logger.error(f"Unhandled exception:\n{details}")

    @staticmethod
    def safe_call(func: Callable[..., T], *args, default: Optional[T] = None,
                  errors: Tuple[Type[BaseException], ...] = (PhinModError,), **kwargs) -> Optional[T]:
        """Call ``func``, turning the expected ``errors`` into ``default``.

        Other exceptions propagate unchanged.

        Args:
            func: Callable to run
            *args: Positional arguments for ``func``
            default: Value returned when ``func`` raises one of ``errors``
            errors: Exception types that count as an expected failure
            **kwargs: Keyword arguments for ``func``

        Returns:
            The result of ``func`` or ``default``
        """
        try:
            return func(*args, **kwargs)
        except errors as e:
            logger.debug(f"{func.__name__} gave up: {e}")
            return default


def install_global_handler() -> None:
    sys.excepthook = ErrorHandler.handle_exception
