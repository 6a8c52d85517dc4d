"""Errors raised by bruhat-lab."""

from craft_cli import CraftError


class BruhatLabError(CraftError):
    """Base class for bruhat-lab errors."""


class InvalidInputError(BruhatLabError):
    """Input rejected before any computation started (exit status 2)."""

    def __init__(self, message: str, *, resolution: str | None = None) -> None:
        super().__init__(message, resolution=resolution, retcode=2)


class InvalidSystemError(InvalidInputError):
    """A system descriptor or Coxeter matrix is not usable."""


class ElementParseError(InvalidInputError):
    """An element literal does not parse under the chosen system."""


class NotInIntervalError(InvalidInputError):
    """An element is not below the element it was paired with."""


class NotReducedError(InvalidInputError):
    """A word is not reduced where a reduced word is required."""


class ConsistencyError(BruhatLabError):
    """Two computations that must agree did not.

    This always indicates a bug, never bad input.
    """
