"""Superlevel-set geometry of solved profiles and the comparison functional.

For a solved eigenfunction v with sup norm 1 and a bounded radial weight phi,
the functional evaluated here is

    H(t, phi) = ( int_{inner bdry} |phi|^(p-1) dA + beta |outer part on dOmega|
                  - (p-1) int_{U_t} |phi|^p dV ) / |U_t|,

with U_t = {v > t}. With phi the logarithmic gradient of v this equals the
eigenvalue identically in t, which is the identity the tests drive; for any
other bounded phi the minimum over t falls below the eigenvalue.

Superlevel sets of radial profiles are balls or shells, so all areas and
volumes reduce to exact sphere/ball formulas at crossing radii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import geometry
from .errors import DomainError, EmptyLevelSetError
from .problem import Ball, domain_span
from .profiles import CumulativeIntegral, RadialProfile
from .shooting import RadialSolution

__all__ = ["LevelSetData", "LevelGeometry", "level_geometry", "level_set_data",
           "HFunctional", "h_functional", "h_identity_deviation", "h_minimum",
           "default_levels"]


@dataclass(frozen=True)
class LevelSetData:
    """Per-level volume and boundary split of a superlevel set."""

    t: float
    volume: float
    interior_area: float
    exterior_area: float


@dataclass(frozen=True)
class LevelGeometry:
    """Radial description of one superlevel set.

    ``slabs`` are the radius intervals covered by the set; ``crossings`` are
    (radius, sphere area) pairs on the interior boundary.
    """

    t: float
    slabs: tuple[tuple[float, float], ...]
    crossings: tuple[tuple[float, float], ...]
    exterior_area: float
    volume: float


def _vprofile(sol: RadialSolution) -> RadialProfile:
    prof = getattr(sol, "_vprof", None)
    if prof is None:
        prof = RadialProfile(sol.grid, sol.v)
        sol._vprof = prof
    return prof


def level_geometry(sol: RadialSolution, t: float) -> LevelGeometry:
    """Slab decomposition of {v > t} for a solved ball or annulus profile."""
    if not 0.0 < t < 1.0:
        raise DomainError(f"level t must lie in (0, 1), got {t}")
    if t >= sol.v.max():
        raise EmptyLevelSetError(f"level {t} at or above max v = {sol.v.max()}")
    sf = sol.space
    prof = _vprofile(sol)
    lo, hi = domain_span(sol.domain)

    if isinstance(sol.domain, Ball):
        vb = sol.v[-1]
        if t <= vb:
            return LevelGeometry(t, ((lo, hi),), (),
                                 geometry.sphere_area(sf, hi),
                                 geometry.ball_volume(sf, hi))
        roots = prof.crossings(t)
        rho = roots[-1]
        return LevelGeometry(t, ((lo, rho),),
                             ((rho, geometry.sphere_area(sf, rho)),),
                             0.0, geometry.ball_volume(sf, rho))

    imax = int(np.argmax(sol.v))
    rmax = sol.grid[imax]
    left_val, right_val = sol.v[0], sol.v[-1]
    crossings = []
    exterior = 0.0
    if t > left_val:
        a = prof.crossings(t, lo, rmax)[0]
        crossings.append((a, geometry.sphere_area(sf, a)))
    else:
        a = lo
        exterior += geometry.sphere_area(sf, lo)
    if t > right_val:
        b = prof.crossings(t, rmax, hi)[-1]
        crossings.append((b, geometry.sphere_area(sf, b)))
    else:
        b = hi
        exterior += geometry.sphere_area(sf, hi)
    volume = geometry.ball_volume(sf, b) - geometry.ball_volume(sf, a)
    return LevelGeometry(t, ((a, b),), tuple(crossings), exterior, volume)


def level_set_data(sol: RadialSolution, t: float) -> LevelSetData:
    """Volume and boundary areas of the superlevel set at level ``t``."""
    geo = level_geometry(sol, t)
    return LevelSetData(t=t, volume=geo.volume,
                        interior_area=sum(area for _, area in geo.crossings),
                        exterior_area=geo.exterior_area)


def _as_profile(sol: RadialSolution, phi) -> RadialProfile:
    if isinstance(phi, RadialProfile):
        return phi
    arr = np.asarray(phi, dtype=float)
    if arr.ndim == 0:
        arr = np.full_like(sol.grid, float(arr))
    if arr.shape != sol.grid.shape:
        raise DomainError("phi must be scalar or sampled on the solution grid")
    return RadialProfile(sol.grid, arr)


class HFunctional:
    """Evaluator of H(t, phi) for one solution and one weight profile.

    Precomputes the cumulative volume integral of |phi|^p so that level
    queries cost O(1); build one per (solution, phi) pair when scanning.
    """

    def __init__(self, sol: RadialSolution, phi):
        self.sol = sol
        self.phi = _as_profile(sol, phi)
        sf, p = sol.space, sol.params.p
        nwn = sf.dimension * geometry.unit_ball_volume(sf.dimension)
        spline = self.phi.spline

        def integrand(x):
            return np.abs(spline(x)) ** p * geometry.zeta(sf, x) ** (sf.dimension - 1)

        self._cum = CumulativeIntegral(sol.grid, integrand)
        self._nwn = nwn

    def value(self, t: float) -> float:
        sol = self.sol
        p, beta = sol.params.p, sol.params.beta
        geo = level_geometry(sol, t)
        num = beta * geo.exterior_area
        for rho, area in geo.crossings:
            num += abs(float(self.phi(rho))) ** (p - 1.0) * area
        bulk = sum(self._cum.between(a, b) for a, b in geo.slabs)
        num -= (p - 1.0) * self._nwn * bulk
        return num / geo.volume

    def scan(self, levels) -> np.ndarray:
        return np.array([self.value(t) for t in np.asarray(levels, dtype=float)])


def h_functional(sol: RadialSolution, phi, t: float) -> float:
    """One-off evaluation of H(t, phi); use HFunctional for scans."""
    return HFunctional(sol, phi).value(t)


def default_levels(sol: RadialSolution, count: int = 199) -> np.ndarray:
    """Scan levels in (0, 1), nudged off the boundary values of v.

    Equispaced levels, refined geometrically between the largest boundary
    value and 1: for nearly constant eigenfunctions (small Robin
    coefficient) every level with an interior crossing lives in that window,
    which an equispaced grid can miss entirely.

    The identity and comparison statements hold for almost every level; the
    excluded levels are exactly the boundary values, so levels within 1e-9 of
    one are shifted by 1e-8 to its far side.
    """
    levels = np.arange(1, count + 1) / (count + 1.0)
    boundary_vals = [float(sol.v[-1])]
    if not isinstance(sol.domain, Ball):
        boundary_vals.append(float(sol.v[0]))
    top = max(boundary_vals)
    if top < 1.0:
        levels = np.concatenate(
            [levels, 1.0 - (1.0 - top) * 2.0 ** (-np.arange(1.0, 15.0))])
    for bv in boundary_vals:
        near = np.abs(levels - bv) < 1e-9
        levels[near] = bv + np.where(levels[near] >= bv, 1e-8, -1e-8)
    return np.unique(np.clip(levels, 1e-12, 1.0 - 1e-12))


def h_identity_deviation(sol: RadialSolution, levels=None) -> float:
    """Max over levels of |H(t, f) - lam| for the solution's log-gradient."""
    if levels is None:
        levels = default_levels(sol)
    scan = HFunctional(sol, sol.f).scan(levels)
    return float(np.max(np.abs(scan - sol.lam)))


def h_minimum(sol: RadialSolution, phi, levels=None) -> tuple[float, float]:
    """Grid minimizer of H(., phi): returns (t_star, h_min)."""
    if levels is None:
        levels = default_levels(sol)
    levels = np.asarray(levels, dtype=float)
    scan = HFunctional(sol, phi).scan(levels)
    k = int(np.argmin(scan))
    return float(levels[k]), float(scan[k])
