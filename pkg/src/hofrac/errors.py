"""Exception taxonomy shared by all hofrac modules.

The CLI maps these onto exit codes: usage/domain problems exit 2,
accuracy failures exit 3, capability gaps exit 4.
"""

from __future__ import annotations


class HofracError(Exception):
    """Base class for all package errors."""


class DomainError(HofracError, ValueError):
    """Mathematically invalid input (pole of Gamma, |z| != 1, rho < 0, ...)."""


class CapabilityError(HofracError):
    """Requested something the artifact deliberately does not support."""


class IntegrabilityError(HofracError):
    """A required integrability flag is missing or the declared decay diverges."""


class AccuracyFailure(HofracError):
    """Quadrature or extrapolation did not reach the requested tolerance.

    Carries the best available estimate and its error bound so callers can
    decide whether to proceed anyway.
    """

    def __init__(self, message: str, estimate: float = float("nan"),
                 error_bound: float = float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound
