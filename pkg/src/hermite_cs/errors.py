"""Exception and warning types raised by the library."""
from __future__ import annotations


class HermiteCSError(Exception):
    """Base class for library errors."""


class DomainError(HermiteCSError, ValueError):
    """A point lies outside the domain of a basis family or kernel."""


class NumericRangeError(HermiteCSError, OverflowError):
    """A value is not representable in double precision even after log scaling."""


class ConditioningError(HermiteCSError, ValueError):
    """Parameters too close to a singular limit to give trustworthy numbers."""


class ConvergenceError(HermiteCSError, RuntimeError):
    """An iterative or series evaluation hit its term cap before converging."""


class SeriesDivergenceError(HermiteCSError, ArithmeticError):
    """A partial sum failed the Cauchy tail test.

    Attributes
    ----------
    diagnostic : dict
        Tail mass, total mass and the threshold that was exceeded.
    """

    def __init__(self, message: str, diagnostic: dict | None = None):
        super().__init__(message)
        self.diagnostic = dict(diagnostic or {})


class NonFiniteIntegrandError(HermiteCSError, FloatingPointError):
    """The integrand returned inf or nan at a quadrature node."""

    def __init__(self, message: str, node=None, index: int | None = None):
        super().__init__(message)
        self.node = node
        self.index = index


class ToleranceWarning(UserWarning):
    """Results are computed but expected accuracy is degraded."""


class TruncationWarning(UserWarning):
    """A truncated Fock expansion has a non-negligible tail."""
