"""Exception types raised by the evaluation and verification routines."""

from __future__ import annotations


class QDigammaError(Exception):
    """Base class for all library-specific errors."""


class DomainError(QDigammaError, ValueError):
    """An argument lies outside the supported domain (t <= 0, q outside (0,1), ...)."""


class TruncationNotConverged(QDigammaError):
    """The certified tail bound could not reach the requested tolerance within the term cap.

    Carries the best bound that was achievable so callers can decide whether
    a degraded result is still useful.
    """

    def __init__(self, message: str, best_bound: float, terms_used: int):
        super().__init__(message)
        self.best_bound = best_bound
        self.terms_used = terms_used


class PositivityViolated(QDigammaError):
    """A ratio evaluation needed psi > 0 but the value (minus its tail bound) was not positive."""


class NoRootInBracket(QDigammaError):
    """The digamma deformation is already positive at the smallest evaluable argument."""

    def __init__(self, message: str, floor: float):
        super().__init__(message)
        self.floor = floor


class NoPositiveRegion(QDigammaError):
    """The digamma deformation never becomes positive, so no threshold exists."""
