"""Geometry of the model spaces: warp functions, volumes, areas, constants.

A model space is Euclidean space, hyperbolic space, or a round sphere,
described by :class:`SpaceForm`. Geodesic balls are radial objects, so every
volume and area reduces to one-dimensional integrals of powers of the warp
function. Those integrals have exact power-reduction antiderivatives, which
we use directly; adaptive quadrature is kept as an independent cross-check
route (:func:`ball_volume_quadrature`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .errors import DomainError, NumericalError

__all__ = [
    "SpaceForm",
    "ModelConstants",
    "zeta",
    "zeta_derivative",
    "wallis",
    "unit_ball_volume",
    "ball_volume",
    "ball_volume_quadrature",
    "sphere_area",
    "total_volume",
    "inverse_ball_volume",
    "model_sphere_radius",
    "flat_disk_volume_ratio",
    "model_constants",
]


@dataclass(frozen=True)
class SpaceForm:
    """A simply connected model geometry of constant curvature sign.

    ``sphere_radius`` is set only for the compact round-sphere model, whose
    warp is ``R sin(r/R)``; otherwise the warp is ``r``, ``sin r`` or
    ``sinh r`` according to ``curvature_sign``. Radii live in ``[0, pi*R)``
    for sphere-type warps and ``[0, inf)`` otherwise.
    """

    curvature_sign: int
    dimension: int
    sphere_radius: float | None = None

    def __post_init__(self):
        if self.curvature_sign not in (-1, 0, 1):
            raise DomainError(f"curvature_sign must be -1, 0 or +1, got {self.curvature_sign}")
        if self.dimension < 2:
            raise DomainError(f"dimension must be >= 2, got {self.dimension}")
        if self.sphere_radius is not None and not self.sphere_radius > 0:
            raise DomainError(f"sphere_radius must be positive, got {self.sphere_radius}")

    @property
    def warp_scale(self) -> float | None:
        """Radius of the sin-type warp, or None for r / sinh r warps."""
        if self.sphere_radius is not None:
            return self.sphere_radius
        if self.curvature_sign == 1:
            return 1.0
        return None

    @property
    def max_radius(self) -> float:
        """Supremum of admissible radii (pole excluded on sphere models)."""
        a = self.warp_scale
        return math.pi * a if a is not None else math.inf


def _check_radius(sf: SpaceForm, r):
    arr = np.asarray(r, dtype=float)
    if np.any(arr < 0) or np.any(arr >= sf.max_radius):
        raise DomainError(f"radius {r} outside [0, {sf.max_radius}) for {sf}")
    return arr


def zeta(sf: SpaceForm, r):
    """Warp function of the model space, vectorized over ``r``."""
    arr = _check_radius(sf, r)
    a = sf.warp_scale
    if a is not None:
        out = a * np.sin(arr / a)
    elif sf.curvature_sign == 0:
        out = arr.copy()
    else:
        out = np.sinh(arr)
    return float(out) if np.isscalar(r) or arr.ndim == 0 else out


def zeta_derivative(sf: SpaceForm, r):
    """Derivative of the warp function."""
    arr = _check_radius(sf, r)
    a = sf.warp_scale
    if a is not None:
        out = np.cos(arr / a)
    elif sf.curvature_sign == 0:
        out = np.ones_like(arr)
    else:
        out = np.cosh(arr)
    return float(out) if np.isscalar(r) or arr.ndim == 0 else out


def wallis(n: int) -> float:
    """Integral of sin^(n-1) over [0, pi], by the exact two-step recursion."""
    if n < 1:
        raise DomainError(f"wallis requires n >= 1, got {n}")
    w = [math.pi, 2.0]  # n = 1, 2
    for k in range(3, n + 1):
        w.append(w[-2] * (k - 2) / (k - 1))
    return w[n - 1]


def _gamma_half(m: int) -> float:
    """Gamma(m/2) for integer m >= 1 by the exact recursion."""
    val = math.sqrt(math.pi) if m % 2 == 1 else 1.0
    k = 1 if m % 2 == 1 else 2
    while k < m:
        val *= k / 2.0
        k += 2
    return val


def unit_ball_volume(n: int) -> float:
    """Volume of the n-dimensional Euclidean unit ball."""
    if n < 1:
        raise DomainError(f"unit_ball_volume requires n >= 1, got {n}")
    return math.pi ** (n / 2.0) / _gamma_half(n + 2)


def _sin_power_integral(m: int, x):
    """Integral of sin^m over [0, x] via power reduction (vectorized)."""
    x = np.asarray(x, dtype=float)
    prev = np.array(x, dtype=float)          # m = 0
    cur = 1.0 - np.cos(x)                    # m = 1
    if m == 0:
        return prev
    s, c = np.sin(x), np.cos(x)
    for k in range(2, m + 1):
        prev, cur = cur, (-(s ** (k - 1)) * c + (k - 1) * prev) / k
    return cur


def _sinh_power_integral(m: int, x):
    """Integral of sinh^m over [0, x] via power reduction (vectorized)."""
    x = np.asarray(x, dtype=float)
    prev = np.array(x, dtype=float)          # m = 0
    cur = np.cosh(x) - 1.0                   # m = 1
    if m == 0:
        return prev
    s, c = np.sinh(x), np.cosh(x)
    for k in range(2, m + 1):
        prev, cur = cur, ((s ** (k - 1)) * c - (k - 1) * prev) / k
    return cur


def ball_volume(sf: SpaceForm, r):
    """Volume of the geodesic ball of radius ``r`` (exact antiderivatives)."""
    arr = _check_radius(sf, r)
    n = sf.dimension
    nwn = n * unit_ball_volume(n)
    a = sf.warp_scale
    if a is not None:
        out = nwn * a**n * _sin_power_integral(n - 1, arr / a)
    elif sf.curvature_sign == 0:
        out = unit_ball_volume(n) * arr**n
    else:
        out = nwn * _sinh_power_integral(n - 1, arr)
    return float(out) if np.isscalar(r) or arr.ndim == 0 else out


def ball_volume_quadrature(sf: SpaceForm, r: float) -> float:
    """Ball volume by adaptive quadrature; independent check of ball_volume."""
    _check_radius(sf, r)
    n = sf.dimension
    val, _ = integrate.quad(lambda w: zeta(sf, w) ** (n - 1), 0.0, r,
                            epsabs=1e-12, epsrel=1e-12, limit=200)
    return n * unit_ball_volume(n) * val


def sphere_area(sf: SpaceForm, r):
    """Area of the geodesic sphere of radius ``r`` (derivative of the volume)."""
    arr = _check_radius(sf, r)
    n = sf.dimension
    out = n * unit_ball_volume(n) * zeta(sf, arr) ** (n - 1)
    return float(out) if np.isscalar(r) or arr.ndim == 0 else out


def total_volume(sf: SpaceForm) -> float:
    """Total volume of a compact (sphere-type) model space."""
    a = sf.warp_scale
    if a is None:
        return math.inf
    n = sf.dimension
    return n * unit_ball_volume(n) * a**n * wallis(n)


def inverse_ball_volume(sf: SpaceForm, volume: float) -> float:
    """Radius of the geodesic ball with the prescribed volume.

    The volume is strictly increasing in the radius, so the inverse is found
    by bracketed root finding to near machine accuracy.
    """
    if volume <= 0:
        raise DomainError(f"volume must be positive, got {volume}")
    if volume >= total_volume(sf):
        raise DomainError(
            f"volume {volume} exceeds the total model volume {total_volume(sf)}")
    hi = sf.max_radius * (1 - 1e-13) if math.isfinite(sf.max_radius) else 1.0
    if not math.isfinite(sf.max_radius):
        while ball_volume(sf, hi) < volume:
            hi *= 2.0
    root = optimize.brentq(lambda r: ball_volume(sf, r) - volume, 0.0, hi,
                           xtol=1e-15, rtol=8.9e-16, maxiter=300)
    return float(root)


def model_sphere_radius(kappa: int, n: int, diameter: float | None = None) -> float:
    """Radius of the round-sphere model for a compact space of diameter ``d``.

    For positive curvature bound the radius is 1. Otherwise it is fixed by a
    volume-normalization condition: a closed form for ``kappa = 0`` and, for
    ``kappa = -1``, the reciprocal of the unique positive root ``C`` of

        C * integral_0^d (cosh t + C sinh t)^(n-1) dt = integral_0^pi sin^(n-1).

    The left side is strictly increasing in ``C``, so the root is found by
    doubling a bracket and bisecting.
    """
    if kappa == 1:
        return 1.0
    if diameter is None or diameter <= 0:
        raise DomainError(f"positive diameter required for kappa={kappa}")
    if n < 2:
        raise DomainError(f"dimension must be >= 2, got {n}")
    wn = wallis(n)
    if kappa == 0:
        return diameter / ((1.0 + n * wn) ** (1.0 / n) - 1.0)
    if kappa != -1:
        raise DomainError(f"kappa must be -1, 0 or +1, got {kappa}")

    def residual(x: float) -> float:
        val, _ = integrate.quad(
            lambda t: (math.cosh(t) + x * math.sinh(t)) ** (n - 1),
            0.0, diameter, epsabs=1e-13, epsrel=1e-13, limit=200)
        return x * val - wn

    lo, hi = 1e-8, 1.0
    while residual(hi) < 0:
        hi *= 2.0
        if hi > 1e12:
            raise NumericalError("bracket for C(d) not found below 1e12")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if residual(mid) > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-13 * hi:
            break
    else:
        raise NumericalError(
            f"C(d) bisection stalled; residual {residual(0.5 * (lo + hi)):.3e}")
    return 1.0 / (0.5 * (lo + hi))


def flat_disk_volume_ratio(avr: float, n: int, m: int) -> float:
    """Volume-ratio constant for codimension-m flat-disk comparison.

    Equals the asymptotic volume ratio for m <= 2 and picks up the unit-ball
    volume factor (n+m) w_{n+m} / (m w_m w_n) for m > 2.
    """
    if not 0 < avr <= 1:
        raise DomainError(f"avr must lie in (0, 1], got {avr}")
    if n < 1 or m < 1:
        raise DomainError(f"n and m must be >= 1, got n={n}, m={m}")
    if m <= 2:
        return avr
    return avr * (n + m) * unit_ball_volume(n + m) / (
        m * unit_ball_volume(m) * unit_ball_volume(n))


@dataclass(frozen=True)
class ModelConstants:
    """Dimensionless comparison constants attached to a model geometry."""

    alpha: float
    theta: float
    avr: float
    diameter: float | None = None

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not 0 < self.avr <= 1:
            raise DomainError(f"avr must lie in (0, 1], got {self.avr}")


def model_constants(n: int, m: int = 1, *, avr: float = 1.0,
                    alpha: float | None = None, hyperbolic: bool = False,
                    diameter: float | None = None) -> ModelConstants:
    """Assemble the comparison constants for one setting.

    In the hyperbolic setting the volume fraction ``alpha`` is 1; in the
    nonnegative-curvature setting it defaults to the asymptotic volume ratio
    unless supplied explicitly (compact case, where it is a volume quotient).
    """
    if alpha is None:
        alpha = 1.0 if hyperbolic else avr
    return ModelConstants(alpha=alpha, theta=flat_disk_volume_ratio(avr, n, m),
                          avr=avr, diameter=diameter)
