"""Scalar fields on R^N with the regularity/decay metadata the operators need.

A ScalarField bundles a vectorized evaluator with the analytic facts the
hypersingular machinery cannot infer from samples: where the field stops
being smooth, how it decays, and which weighted-L1 classes it belongs to.
Decay and membership are caller-declared, never guessed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

__all__ = ["ScalarField", "gaussian", "bump", "chi_interval", "delta_power",
           "x_delta_power", "affine", "polynomial", "constant", "arcsin_chi",
           "scale_field", "add_fields"]


@dataclass(frozen=True)
class ScalarField:
    """A real-valued function on R^N plus analytic metadata.

    eval_fn         vectorized evaluator (ndarray -> ndarray); for N = 1 the
                    argument is an array of abscissae
    dim             ambient dimension
    singular_points where smoothness fails (1D abscissae); quadratures split
                    there and operator evaluation keeps clear of them
    smooth_radius   radius within which the field is smooth enough for the
                    requested operator order (C^{2s+alpha} asserted by caller)
    support_radius  radius of the support, or inf
    decay_class     'compact', 'algebraic', or 'none'
    decay_exponent  p in the declared envelope |u(y)| <= C (1+|y|)^{-p}
                    (negative p = algebraic growth); only read for 'algebraic'
    boundary_blowup the field is unbounded near its singular points, so the
                    operators refuse evaluation closer than 0.1 to them
    fourier_fn      optional closed-form unitary transform, vectorized
    fourier_cutoff  effective support radius of the transform
    name            provenance label carried into CLI output
    meta            free-form flags (hyp flag, boundary values, ...)
    """

    eval_fn: Callable[[np.ndarray], np.ndarray]
    dim: int = 1
    singular_points: tuple = ()
    smooth_radius: float = math.inf
    support_radius: float = math.inf
    decay_class: str = "compact"
    decay_exponent: float = math.inf
    boundary_blowup: bool = False
    fourier_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None
    fourier_cutoff: Optional[float] = None
    name: str = "field"
    meta: dict = field(default_factory=dict, compare=False)

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        out = np.asarray(self.eval_fn(arr), dtype=float)
        return float(out) if np.ndim(x) == 0 and out.ndim == 0 else out

    def in_L1(self, t: float) -> bool:
        """Membership in the weighted class L^1_t (integral against
        (1+|y|)^{-N-2t}); decided from the declared decay."""
        if self.decay_class == "compact":
            return True
        if self.decay_class == "algebraic":
            # Envelope (1+|y|)^{-p}: the weighted integrand is
            # r^{N-1-p-N-2t}, integrable at infinity iff p + 2t > 0.
            return self.decay_exponent + 2.0 * t > 0.0
        return False

    def distance_to_singular(self, x: float) -> float:
        if not self.singular_points:
            return math.inf
        return min(abs(float(x) - p) for p in self.singular_points)

    def with_meta(self, **kw) -> "ScalarField":
        merged = dict(self.meta)
        merged.update(kw)
        return replace(self, meta=merged)


def constant(c: float) -> ScalarField:
    # Constant fields are L1_t for every t > 0 (envelope exponent 0).
    return ScalarField(lambda x: np.full_like(np.asarray(x, dtype=float), c),
                       decay_class="algebraic", decay_exponent=0.0,
                       name=f"const:{c:g}")


def affine(a: float, b: float) -> ScalarField:
    return ScalarField(lambda x: a + b * np.asarray(x, dtype=float),
                       decay_class="algebraic", decay_exponent=-1.0,
                       name=f"affine:{a:g},{b:g}")


def polynomial(coeffs) -> ScalarField:
    coeffs = tuple(float(c) for c in coeffs)
    deg = len(coeffs) - 1

    def ev(x):
        return np.polynomial.polynomial.polyval(np.asarray(x, dtype=float), coeffs)

    return ScalarField(ev, decay_class="algebraic", decay_exponent=-float(deg),
                       name="poly:" + ",".join(f"{c:g}" for c in coeffs))


def gaussian(center: float = 0.0, width: float = 1.0) -> ScalarField:
    """exp(-(x-c)^2 / (2 w^2)); numerically compactly supported in float64."""
    c, w = float(center), float(width)
    # exp underflows to exactly 0.0 beyond ~39 widths, so the tail zone of
    # the operators is exact with a compact declaration.
    rad = abs(c) + 40.0 * w

    def ev(x):
        x = np.asarray(x, dtype=float)
        return np.exp(-((x - c) ** 2) / (2.0 * w ** 2))

    def ft(xi):
        xi = np.asarray(xi, dtype=float)
        # unitary transform of the centered unit-width Gaussian is itself
        return w * np.exp(-(w * xi) ** 2 / 2.0) * np.exp(-1j * c * xi)

    return ScalarField(ev, support_radius=rad, decay_class="compact",
                       fourier_fn=ft, fourier_cutoff=40.0 / w,
                       name=f"gauss:{c:g},{w:g}")


def bump(center: float = 0.0, radius: float = 1.0, normalized: bool = False) -> ScalarField:
    """Quartic bump C (1 - ((x-c)/r)^2)_+^2, unit mass when normalized."""
    c, r = float(center), float(radius)
    amp = 15.0 / (16.0 * r) if normalized else 1.0

    def ev(x):
        t = (np.asarray(x, dtype=float) - c) / r
        return amp * np.clip(1.0 - t * t, 0.0, None) ** 2

    return ScalarField(ev, singular_points=(c - r, c + r),
                       smooth_radius=math.inf,  # C^1 everywhere, C^inf off edges
                       support_radius=abs(c) + r, decay_class="compact",
                       name=f"bump:{c:g},{r:g}")


def chi_interval(a: float, b: float) -> ScalarField:
    a, b = float(a), float(b)

    def ev(x):
        x = np.asarray(x, dtype=float)
        return ((x > a) & (x < b)).astype(float)

    return ScalarField(ev, singular_points=(a, b), support_radius=max(abs(a), abs(b)),
                       decay_class="compact", name=f"chi:{a:g},{b:g}")


def delta_power(beta: float) -> ScalarField:
    """(1 - x^2)_+^beta on the line; the workhorse of every closed form."""
    beta = float(beta)

    def ev(x):
        x = np.asarray(x, dtype=float)
        base = np.clip(1.0 - x * x, 0.0, None)
        with np.errstate(divide="ignore"):
            out = np.where(base > 0.0, base ** beta, 0.0)
        return out

    return ScalarField(ev, singular_points=(-1.0, 1.0), smooth_radius=1.0,
                       support_radius=1.0, decay_class="compact",
                       boundary_blowup=beta < 0.0, name=f"deltapow:{beta:g}")


def x_delta_power(beta: float) -> ScalarField:
    """x (1 - x^2)_+^beta."""
    base = delta_power(beta)

    def ev(x):
        x = np.asarray(x, dtype=float)
        return x * base.eval_fn(x)

    return replace(base, eval_fn=ev, name=f"xdeltapow:{beta:g}")


def arcsin_chi() -> ScalarField:
    """arcsin(x) restricted to (-1, 1), zero outside (jump at the edges)."""

    def ev(x):
        x = np.asarray(x, dtype=float)
        inside = np.abs(x) < 1.0
        out = np.zeros_like(x)
        out[inside] = np.arcsin(x[inside])
        return out

    return ScalarField(ev, singular_points=(-1.0, 1.0), smooth_radius=1.0,
                       support_radius=1.0, decay_class="compact", name="arcsin_chi")


def scale_field(alpha: float, u: ScalarField) -> ScalarField:
    def ev(x):
        return alpha * np.asarray(u.eval_fn(x), dtype=float)

    ft = None
    if u.fourier_fn is not None:
        ft = lambda xi: alpha * np.asarray(u.fourier_fn(xi))
    return replace(u, eval_fn=ev, fourier_fn=ft, name=f"{alpha:g}*{u.name}")


def add_fields(u: ScalarField, v: ScalarField) -> ScalarField:
    def ev(x):
        return np.asarray(u.eval_fn(x), dtype=float) + np.asarray(v.eval_fn(x), dtype=float)

    ft = None
    if u.fourier_fn is not None and v.fourier_fn is not None:
        ft = lambda xi: np.asarray(u.fourier_fn(xi)) + np.asarray(v.fourier_fn(xi))
    dec = "compact" if (u.decay_class == "compact" and v.decay_class == "compact") \
        else "algebraic"
    pmin = min(u.decay_exponent if u.decay_class != "none" else -math.inf,
               v.decay_exponent if v.decay_class != "none" else -math.inf)
    if u.decay_class == "none" or v.decay_class == "none":
        dec = "none"
    return ScalarField(
        ev, dim=u.dim,
        singular_points=tuple(sorted(set(u.singular_points) | set(v.singular_points))),
        smooth_radius=min(u.smooth_radius, v.smooth_radius),
        support_radius=max(u.support_radius, v.support_radius),
        decay_class=dec, decay_exponent=pmin if dec == "algebraic" else math.inf,
        boundary_blowup=u.boundary_blowup or v.boundary_blowup,
        fourier_fn=ft,
        fourier_cutoff=None if ft is None else max(u.fourier_cutoff or 0.0,
                                                   v.fourier_cutoff or 0.0),
        name=f"{u.name}+{v.name}")
