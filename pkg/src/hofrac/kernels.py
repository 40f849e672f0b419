"""Closed-form kernels on the unit ball.

Green function G_s (Boggio's formula), the two boundary Poisson kernels
E_{s-1} and E_{s-2}, and the nonlocal Poisson kernel Gamma_s.  One code
path serves both order ranges s in (0,1) and s in (1,2): the sign (-1)^m
and the constant gamma_{N,sigma} are resolved through the order split
s = m + sigma.

All evaluations are pure and vectorized where it matters (the y-argument
of G_s and Gamma_s, which sits inside every solution quadrature).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specialfn import FracOrder, boggio_integral, constants

__all__ = ["BallDomain", "DeltaWeight", "KernelValue", "Regularity",
           "green_G", "eden_E", "nonlocal_Gamma", "harmonic_sum_1d"]

_DIAG_CUTOFF = 1e-8


@dataclass(frozen=True)
class BallDomain:
    """The unit ball B_1(0) in R^N.  Formulas hold for general N; evaluation
    is exercised for N in {1, 2, 3}."""

    N: int = 1

    def __post_init__(self):
        if self.N < 1:
            raise DomainError("BallDomain requires N >= 1")


class Regularity(enum.Enum):
    REGULAR = "regular"
    DIAGONAL_SINGULAR = "diagonal-singular"
    BOUNDARY_DEGENERATE = "boundary-degenerate"


@dataclass(frozen=True)
class KernelValue:
    value: float
    regularity_flag: Regularity = Regularity.REGULAR


class DeltaWeight:
    """The boundary weight delta(x)^beta = (1 - |x|^2)_+^beta.

    Evaluated in the factored form (1-|x|)(1+|x|) so that trace probes at
    delta ~ 1e-8 do not lose digits to cancellation.  For beta < 0 the
    value outside the closed ball is 0 by convention and the caller must
    guard the interior blow-up.
    """

    def __init__(self, beta: float):
        self.beta = float(beta)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        r = np.abs(x) if x.ndim <= 1 else np.linalg.norm(x, axis=-1)
        base = np.clip((1.0 - r) * (1.0 + r), 0.0, None)
        with np.errstate(divide="ignore"):
            out = np.where(base > 0.0, base ** self.beta, 0.0)
        return out if out.ndim else float(out)


def _norm(p) -> float:
    p = np.asarray(p, dtype=float)
    return abs(float(p)) if p.ndim == 0 else float(np.linalg.norm(p))


def _dist(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return abs(float(x - y)) if x.ndim == 0 and y.ndim == 0 else float(np.linalg.norm(x - y))


def _delta(p) -> float:
    r = _norm(p)
    return max((1.0 - r) * (1.0 + r), 0.0)


def green_G(order: FracOrder, x, y, N: int = 1) -> KernelValue:
    """Boggio's Green function G_s(x, y) for (-Delta)^s on the unit ball.

    Returns 0 with a boundary-degenerate flag when either argument leaves
    the ball (rho = 0).  Evaluation closer than 1e-8 to the diagonal is
    refused rather than regularized: every consumer integrates around the
    diagonal with substitutions, and silent smoothing would corrupt the
    convergence studies built on top of this kernel.
    """
    dxy = _dist(x, y)
    if dxy < _DIAG_CUTOFF:
        raise DomainError(
            f"green_G evaluated at |x-y| = {dxy:.3g} < {_DIAG_CUTOFF:g}: "
            f"diagonal singularity")
    dx, dy = _delta(x), _delta(y)
    if dx == 0.0 or dy == 0.0:
        return KernelValue(0.0, Regularity.BOUNDARY_DEGENERATE)
    rho = dx * dy / dxy ** 2
    k_ns = constants(order, N).k_Ns
    val = k_ns * dxy ** (2.0 * order.s - N) * boggio_integral(rho, order, N)
    return KernelValue(float(val), Regularity.REGULAR)


def green_values(order: FracOrder, x: float, y, N: int = 1) -> np.ndarray:
    """Vectorized 1D fast path: G_s(x, y_i) for an array of y (quadrature
    plumbing; diagonal entries must be excluded by the caller's panels)."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    dx = _delta(x)
    dy = np.clip((1.0 - np.abs(y)) * (1.0 + np.abs(y)), 0.0, None)
    dxy = np.abs(y - x)
    out = np.zeros_like(y)
    mask = (dy > 0.0) & (dx > 0.0)
    if not np.any(mask):
        return out
    rho = dx * dy[mask] / dxy[mask] ** 2
    k_ns = constants(order, N).k_Ns
    out[mask] = k_ns * dxy[mask] ** (2.0 * order.s - N) * boggio_integral(rho, order, N)
    return out


def _check_boundary_point(z, N: int):
    if abs(_norm(z) - 1.0) > 1e-12:
        raise DomainError(f"boundary kernel requires |z| = 1, got |z| = {_norm(z):.12g}")


def eden_E(order: FracOrder, k: str, x, z, N: int = 1) -> float:
    """Boundary Poisson kernels E_{s-1} ('sm1') and E_{s-2} ('sm2').

    E_{s-1}(x,z) = delta(x)^s / (2 omega_N |x-z|^N)
    E_{s-2}(x,z) = delta(x)^s (N delta(x) - (N-4)|x-z|^2) / (4 omega_N |x-z|^{N+2})

    Zero for |x| >= 1.
    """
    _check_boundary_point(z, N)
    if k not in ("sm1", "sm2"):
        raise DomainError(f"trace order selector must be 'sm1' or 'sm2', got {k!r}")
    dx = _delta(x)
    if dx == 0.0:
        return 0.0
    omega = constants(order, N).omega_N
    dxz = _dist(x, z)
    if dxz == 0.0:
        raise DomainError("eden_E requires x != z")
    if k == "sm1":
        return dx ** order.s / (2.0 * omega * dxz ** N)
    return dx ** order.s * (N * dx - (N - 4.0) * dxz ** 2) / (4.0 * omega * dxz ** (N + 2))


def nonlocal_Gamma(order: FracOrder, x, y, N: int = 1):
    """Nonlocal Poisson kernel Gamma_s(x, y) for exterior y.

    Gamma_s(x,y) = (-1)^m gamma_{N,sigma} |x-y|^{-N} (1-|x|^2)_+^s (|y|^2-1)^{-s}

    with s = m + sigma; positive for s in (0,1), negative for s in (1,2).
    Vectorized over y.  Zero for |x| >= 1; exterior |y| > 1 is required.
    """
    if order.is_local:
        raise DomainError("nonlocal_Gamma requires noninteger order")
    y_arr = np.atleast_1d(np.asarray(y, dtype=float))
    ynorm = np.abs(y_arr) if y_arr.ndim == 1 and N == 1 else np.linalg.norm(
        np.atleast_2d(y_arr), axis=-1)
    if np.any(ynorm <= 1.0):
        raise DomainError("nonlocal_Gamma requires exterior points |y| > 1")
    dx = _delta(x)
    if dx == 0.0:
        out = np.zeros_like(ynorm)
        return float(out[0]) if np.ndim(y) == 0 else out
    gam = constants(order, N).gamma_Nsigma
    sign = -1.0 if order.m % 2 else 1.0
    if N == 1:
        dxy = np.abs(y_arr - float(x))
    else:
        dxy = np.linalg.norm(np.atleast_2d(y_arr) - np.asarray(x, dtype=float), axis=-1)
    val = sign * gam * dx ** order.s / (dxy ** N * (ynorm ** 2 - 1.0) ** order.s)
    return float(val[0]) if np.ndim(y) == 0 else val


def nonlocal_Gamma_smooth(order: FracOrder, x, y, N: int = 1):
    """Gamma_s without its exterior weight factor (|y|^2-1)^{-s}.

    Quadratures over exterior regions touching the boundary feed this to
    the weighted integrator, which handles the (|y|^2-1)^{-s} singularity
    analytically.  Vectorized over y; safe to evaluate at |y| = 1.
    """
    if order.is_local:
        raise DomainError("nonlocal_Gamma requires noninteger order")
    y_arr = np.atleast_1d(np.asarray(y, dtype=float))
    dx = _delta(x)
    gam = constants(order, N).gamma_Nsigma
    sign = -1.0 if order.m % 2 else 1.0
    if dx == 0.0:
        out = np.zeros_like(y_arr if N == 1 else np.atleast_2d(y_arr)[:, 0])
        return float(out[0]) if np.ndim(y) == 0 else out
    if N == 1:
        dxy = np.abs(y_arr - float(x))
    else:
        dxy = np.linalg.norm(np.atleast_2d(y_arr) - np.asarray(x, dtype=float), axis=-1)
    val = sign * gam * dx ** order.s / dxy ** N
    return float(val[0]) if np.ndim(y) == 0 else val


def harmonic_sum_1d(order: FracOrder, x: float) -> float:
    """E_{s-2}(x,-1) + E_{s-2}(x,1) for N = 1; equals (1-x^2)^{s-2}.

    The boundary-kernel route is kept (no closed-form shortcut) so that the
    identity itself stays testable.
    """
    if abs(x) >= 1.0:
        raise DomainError(f"harmonic_sum_1d requires |x| < 1, got x = {x:g}")
    return eden_E(order, "sm2", x, -1.0) + eden_E(order, "sm2", x, 1.0)
