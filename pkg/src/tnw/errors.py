"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "TnwError",
    "UsageError",
    "MalformedWeightError",
    "SignCoherenceError",
    "InvalidFoldingError",
    "InvalidSignatureError",
    "NoTwistError",
    "InconsistentDecompositionError",
    "ParseError",
]


class TnwError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(TnwError, ValueError):
    """An operation was called with arguments outside its contract."""


class MalformedWeightError(TnwError, ArithmeticError):
    """A composite mutation step produced a non-integer arrow count."""


class SignCoherenceError(TnwError):
    """A c-vector has entries of both signs."""


class InvalidFoldingError(TnwError, ValueError):
    pass


class InvalidSignatureError(TnwError, ValueError):
    pass


class NoTwistError(TnwError, ValueError):
    """Tails of weight 4 or more carry no twist element."""


class InconsistentDecompositionError(TnwError, ArithmeticError):
    pass


class ParseError(TnwError, ValueError):
    pass
