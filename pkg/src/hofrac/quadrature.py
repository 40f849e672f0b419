"""Reusable integration engines.

Adaptive 1D quadrature on 15-point Gauss-Kronrod pairs with bisection,
endpoint-singularity substitutions declared by the caller, algebraic
half-line tails, and boundary-sphere rules for N in {1, 2, 3}.

All engines are stateless and deterministic: given the same integrand,
interval and config they subdivide in the same order and sum segment
contributions in a fixed (position-sorted) order, so results are bitwise
reproducible.  Integrands must be vectorized: f(ndarray) -> ndarray.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import AccuracyFailure, CapabilityError, DomainError, IntegrabilityError
from .specialfn import gamma_fn

__all__ = [
    "QuadratureConfig",
    "QuadResult",
    "integrate_adaptive",
    "integrate_singular",
    "integrate_weighted",
    "integrate_tail",
    "SphereRule",
    "sphere_rule",
]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and cut radii governing every singular integral.

    inner_cut is the hypersingular split radius epsilon, outer_cut the
    tail split radius R; extrap_depth counts Richardson levels in the
    trace/composition machinery.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 512
    inner_cut: float = 0.05
    outer_cut: float = 10.0
    extrap_depth: int = 5

    def __post_init__(self):
        if not (0.0 < self.inner_cut < self.outer_cut):
            raise DomainError("QuadratureConfig requires 0 < inner_cut < outer_cut")
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise DomainError("QuadratureConfig tolerances must be positive")
        if self.max_subdivisions < 16:
            raise DomainError("QuadratureConfig requires max_subdivisions >= 16")

    def with_tols(self, rel_tol=None, abs_tol=None) -> "QuadratureConfig":
        kw = {}
        if rel_tol is not None:
            kw["rel_tol"] = rel_tol
        if abs_tol is not None:
            kw["abs_tol"] = abs_tol
        return replace(self, **kw)


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class QuadResult:
    """Estimate plus error bound; converged is False on budget exhaustion."""

    value: float
    error: float
    converged: bool

    def require(self, what: str = "integral") -> float:
        if not self.converged:
            raise AccuracyFailure(
                f"{what} did not converge: estimate {self.value:.6e} "
                f"+- {self.error:.3e}",
                estimate=self.value,
                error_bound=self.error,
            )
        return self.value

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(self.value + other.value, self.error + other.error,
                          self.converged and other.converged)


# 15-point Kronrod extension of 7-point Gauss (positive abscissae).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full node set on [-1, 1] in ascending order, with Kronrod weights and the
# embedded Gauss weights (zero where the node is Kronrod-only).
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KW = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GW_FULL = np.zeros_like(_KW)
# Gauss nodes are every second Kronrod node (indices 1, 3, ..., 13).
_GW_FULL[1:-1:2] = np.concatenate([_WG[:-1], _WG[::-1]])


def _gk15(f, a: float, b: float):
    """One Gauss-Kronrod panel: (estimate, error_bound)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid + half * _NODES
    y = np.asarray(f(x), dtype=float)
    resk = half * float(np.dot(_KW, y))
    resg = half * float(np.dot(_GW_FULL, y))
    # QUADPACK-style scaled error estimate: conservative for integrands
    # whose variation is resolved, and it never underestimates a clean
    # Gauss/Kronrod discrepancy.
    mean = resk / (b - a)
    resasc = half * float(np.dot(_KW, np.abs(y - mean)))
    err = abs(resk - resg)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    return resk, err


def integrate_adaptive(f, a: float, b: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                       *, points=()) -> QuadResult:
    """Adaptive Gauss-Kronrod integration of a vectorized f over [a, b].

    `points` lists known interior breakpoints (kinks, jumps); they seed the
    initial partition so adaptivity is only spent on genuine variation.
    Returns a QuadResult; a non-converged result is flagged, never silent.
    """
    if not (a < b):
        raise DomainError(f"integrate_adaptive requires a < b, got [{a}, {b}]")
    cuts = [a] + sorted(p for p in set(float(p) for p in points) if a < p < b) + [b]

    counter = 0
    heap = []
    total = 0.0
    total_err = 0.0
    segments = {}
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        val, err = _gk15(f, lo, hi)
        segments[counter] = (lo, hi, val, err)
        heapq.heappush(heap, (-err, counter))
        total += val
        total_err += err
        counter += 1

    nsub = len(segments)
    while total_err > max(cfg.abs_tol, cfg.rel_tol * abs(total)):
        if nsub >= cfg.max_subdivisions or not heap:
            break
        neg_err, key = heapq.heappop(heap)
        if key not in segments:
            continue
        lo, hi, val, err = segments.pop(key)
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            # Interval at floating-point resolution; keep its estimate.
            segments[key] = (lo, hi, val, err)
            continue
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        total += (v1 + v2) - val
        total_err += (e1 + e2) - err
        for seg in ((lo, mid, v1, e1), (mid, hi, v2, e2)):
            segments[counter] = seg
            heapq.heappush(heap, (-seg[3], counter))
            counter += 1
        nsub += 1

    ordered = sorted(segments.values(), key=lambda seg: seg[0])
    value = math.fsum(seg[2] for seg in ordered)
    error = math.fsum(seg[3] for seg in ordered)
    converged = error <= max(cfg.abs_tol, cfg.rel_tol * abs(value))
    return QuadResult(value, error, converged)


def integrate_singular(f, a: float, b: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                       *, gamma_a: float = 0.0, gamma_b: float = 0.0,
                       points=()) -> QuadResult:
    """Integrate f with declared power behavior (x-a)^gamma_a / (b-x)^gamma_b.

    The caller declares the endpoint exponents (gamma > -1); the engine
    applies the substitution x = a + (m-a) t^q with q = 2/(1+gamma), which
    turns the declared power into a linearly vanishing factor.  Exponent 0
    means a regular endpoint.
    """
    for g in (gamma_a, gamma_b):
        if g <= -1.0:
            raise IntegrabilityError(f"endpoint exponent gamma = {g:g} is not integrable")
    if gamma_a == 0.0 and gamma_b == 0.0:
        return integrate_adaptive(f, a, b, cfg, points=points)

    mid = 0.5 * (a + b)
    inner = [p for p in points if a < p < b]
    lo_pts = [p for p in inner if p < mid]
    hi_pts = [p for p in inner if p > mid]

    def one_side(end, other, gamma, side_points):
        # Map [0, 1] -> [end, other] with x = end + (other-end) t^q.
        q = max(1.0, 2.0 / (1.0 + gamma))
        span = other - end

        def g(t):
            t = np.asarray(t, dtype=float)
            x = end + span * t ** q
            return np.asarray(f(x), dtype=float) * abs(span) * q * t ** (q - 1.0)

        # abs(span) in the Jacobian keeps the mapped integral positively
        # oriented regardless of which endpoint owns the substitution.
        tpts = [abs((p - end) / span) ** (1.0 / q) for p in side_points]
        return integrate_adaptive(g, 0.0, 1.0, cfg, points=tpts)

    left = one_side(a, mid, gamma_a, lo_pts) if gamma_a != 0.0 else \
        integrate_adaptive(f, a, mid, cfg, points=lo_pts)
    right = one_side(b, mid, gamma_b, hi_pts) if gamma_b != 0.0 else \
        integrate_adaptive(f, mid, b, cfg, points=hi_pts)
    return left + right


def integrate_weighted(f_smooth, a: float, b: float,
                       cfg: QuadratureConfig = DEFAULT_CONFIG,
                       *, gamma_a: float = 0.0, gamma_b: float = 0.0,
                       points=()) -> QuadResult:
    """int_a^b (x-a)^gamma_a (b-x)^gamma_b f_smooth(x) dx with exact weights.

    Unlike integrate_singular, the singular factors are supplied as declared
    exponents and evaluated analytically in the substituted variable, so no
    precision is lost when the weight is strong (gamma close to -1): the
    mapped integrand carries an exact linear factor t and f_smooth is only
    ever evaluated where it is bounded.
    """
    for g in (gamma_a, gamma_b):
        if g <= -1.0:
            raise IntegrabilityError(f"weight exponent gamma = {g:g} is not integrable")
    if not (a < b):
        raise DomainError(f"integrate_weighted requires a < b, got [{a}, {b}]")
    mid = 0.5 * (a + b)
    inner = [p for p in points if a < p < b]

    def weighted_plain(lo, hi, side_points):
        def g(x):
            x = np.asarray(x, dtype=float)
            return ((x - a) ** gamma_a if gamma_a else 1.0) \
                * ((b - x) ** gamma_b if gamma_b else 1.0) \
                * np.asarray(f_smooth(x), dtype=float)
        return integrate_adaptive(g, lo, hi, cfg, points=side_points)

    def one_side(end, gamma, other_gamma, side_points, left_side):
        q = max(1.0, 2.0 / (1.0 + gamma))
        span = mid - end  # signed

        def g(t):
            t = np.asarray(t, dtype=float)
            x = end + span * t ** q
            own = abs(span) ** gamma * t ** (q * gamma)
            if left_side:
                other = (b - x) ** other_gamma if other_gamma else 1.0
            else:
                other = (x - a) ** other_gamma if other_gamma else 1.0
            jac = abs(span) * q * t ** (q - 1.0)
            return own * other * np.asarray(f_smooth(x), dtype=float) * jac

        tpts = [abs((p - end) / span) ** (1.0 / q) for p in side_points]
        return integrate_adaptive(g, 0.0, 1.0, cfg, points=tpts)

    lo_pts = [p for p in inner if p < mid]
    hi_pts = [p for p in inner if p > mid]
    left = one_side(a, gamma_a, gamma_b, lo_pts, True) if gamma_a != 0.0 \
        else weighted_plain(a, mid, lo_pts)
    right = one_side(b, gamma_b, gamma_a, hi_pts, False) if gamma_b != 0.0 \
        else weighted_plain(mid, b, hi_pts)
    return left + right


def integrate_tail(f, p: float, R: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                   *, points=()) -> QuadResult:
    """int_R^inf f(y) dy for f with declared decay |f(y)| <= C y^{-p}, p > 1.

    Uses the algebraic substitution y = R/t mapping the half line onto
    (0, 1]; the mapped integrand behaves like t^{p-2} at t = 0, which is
    declared to the singular engine when p < 2.
    """
    if p <= 1.0:
        raise IntegrabilityError(
            f"tail decay exponent p = {p:g} <= 1: integral diverges")
    if R <= 0.0:
        raise DomainError("integrate_tail requires R > 0")

    def g(t):
        t = np.asarray(t, dtype=float)
        y = R / t
        return np.asarray(f(y), dtype=float) * R / t ** 2

    tpts = [R / p_ for p_ in points if p_ > R]
    gamma_a = min(p - 2.0, 0.0)
    return integrate_singular(g, 0.0, 1.0, cfg, gamma_a=gamma_a, points=tpts)


# ---------------------------------------------------------------------------
# Boundary-sphere rules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SphereRule:
    """Nodes and weights integrating over the unit sphere in R^N.

    Weights sum to omega_N = |S^{N-1}|.  In dimension one the rule is the
    exact two-point convention {(-1, 1), (+1, 1)}.
    """

    N: int
    nodes: np.ndarray   # shape (k, N)
    weights: np.ndarray  # shape (k,)
    exact_degree: int

    def integrate(self, g) -> float:
        vals = np.asarray(g(self.nodes), dtype=float)
        return float(np.dot(self.weights, vals))


def sphere_rule(N: int, resolution: int = 16) -> SphereRule:
    """Surface quadrature for the unit sphere, N in {1, 2, 3}.

    N=1: exact two-point rule. N=2: trapezoid on the circle (spectral for
    smooth integrands, exact for trig polynomials of degree < resolution).
    N=3: Gauss-Legendre in the polar cosine times trapezoid in azimuth.
    """
    if N == 1:
        nodes = np.array([[-1.0], [1.0]])
        weights = np.array([1.0, 1.0])
        return SphereRule(1, nodes, weights, exact_degree=10 ** 9)
    if N == 2:
        m = max(8, int(resolution))
        ang = 2.0 * math.pi * np.arange(m) / m
        nodes = np.column_stack([np.cos(ang), np.sin(ang)])
        weights = np.full(m, 2.0 * math.pi / m)
        return SphereRule(2, nodes, weights, exact_degree=m - 1)
    if N == 3:
        npol = max(4, int(resolution))
        naz = 2 * npol
        mu, wmu = np.polynomial.legendre.leggauss(npol)
        ang = 2.0 * math.pi * np.arange(naz) / naz
        sin_t = np.sqrt(1.0 - mu ** 2)
        nodes = []
        weights = []
        for i in range(npol):
            for j in range(naz):
                nodes.append((sin_t[i] * math.cos(ang[j]),
                              sin_t[i] * math.sin(ang[j]),
                              mu[i]))
                weights.append(wmu[i] * 2.0 * math.pi / naz)
        return SphereRule(3, np.array(nodes), np.array(weights),
                          exact_degree=2 * npol - 1)
    raise CapabilityError(f"sphere_rule supports N in {{1, 2, 3}}, got N = {N}")


def omega_n(N: int) -> float:
    """|S^{N-1}|, provided here to keep quadrature self-contained."""
    return 2.0 * math.pi ** (N / 2.0) / gamma_fn(N / 2.0)
