"""Exception hierarchy shared by every module.

The CLI maps each class onto a distinct exit status.
"""

from __future__ import annotations


class ChainParamsError(Exception):
    """Base class for all library errors."""


class ValidationError(ChainParamsError, ValueError):
    """Malformed input: wrong lengths, negative ranks, bad signatures."""


class PreconditionError(ChainParamsError):
    """Input is well formed but a mathematical prerequisite fails.

    ``label`` names the violated hypothesis, for example ``"d0-exceeds-d2"``.
    """

    def __init__(self, message: str, label: str | None = None) -> None:
        super().__init__(message)
        self.label = label


class CapExceededError(ChainParamsError):
    """An exhaustive enumeration would exceed its configured size cap."""


class AmbiguityError(ChainParamsError):
    """A query that should have a unique answer has several."""

    def __init__(self, message: str, candidates: tuple = ()) -> None:
        super().__init__(message)
        self.candidates = candidates
