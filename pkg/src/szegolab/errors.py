"""Exception hierarchy shared across the package."""

from __future__ import annotations


class SzegolabError(Exception):
    """Base class for all package errors."""


class ParseError(SzegolabError):
    """Raised on malformed symbol or psi expressions.

    Carries the character position and the set of token kinds that would
    have been accepted there.
    """

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected one of: {', '.join(expected)})"
        super().__init__(detail)


class DomainError(SzegolabError):
    """Point outside the setting's domain, or invalid setting parameters."""


class ConfigError(SzegolabError):
    """Inconsistent or incomplete run configuration."""


class IntegrabilityError(SzegolabError):
    """Requested integral diverges (symbol not in the needed L^p class)."""


class AccuracyError(SzegolabError):
    """Adaptive refinement failed to reach the target tolerance.

    ``best`` holds the last estimate and ``estimate`` the residual bound,
    so callers can still inspect the failed computation.
    """

    def __init__(self, message: str, best: float, estimate: float):
        self.best = best
        self.estimate = estimate
        super().__init__(f"{message} (best value {best!r}, error estimate {estimate:.3e})")


class BasisMismatchError(SzegolabError):
    """Operators from incompatible settings/bases combined in one functional."""
