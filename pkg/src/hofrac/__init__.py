"""hofrac: explicit kernel calculus for the higher-order fractional
Laplacian (-Delta)^s, s in (0, 2], on the unit ball.

Kernel evaluation (Green, boundary Poisson, nonlocal Poisson), pointwise
operator application through hypersingular integrals, Dirichlet solution
synthesis with weighted boundary traces, a variational Galerkin solver on
unions of intervals, and the maximum-principle counterexample experiments.
"""

from .errors import (AccuracyFailure, CapabilityError, DomainError,
                     HofracError, IntegrabilityError)
from .fields import ScalarField
from .quadrature import QuadratureConfig, QuadResult
from .specialfn import FracOrder, NormalizationSet, boggio_integral, constants, gamma_fn

__version__ = "0.1.0"

__all__ = [
    "AccuracyFailure", "CapabilityError", "DomainError", "HofracError",
    "IntegrabilityError", "ScalarField", "QuadratureConfig", "QuadResult",
    "FracOrder", "NormalizationSet", "boggio_integral", "constants",
    "gamma_fn", "__version__",
]
