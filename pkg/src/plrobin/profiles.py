"""Sampled radial profiles: monotone interpolation, crossings, integrals."""

from __future__ import annotations

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from .errors import DomainError

__all__ = ["RadialProfile", "CumulativeIntegral"]


class RadialProfile:
    """Profile values on a strictly increasing radius grid.

    Evaluation uses monotone piecewise-cubic interpolation, so between two
    grid nodes the interpolant stays between the node values and a level is
    crossed at most once per bracketing interval.
    """

    def __init__(self, grid, values):
        self.grid = np.asarray(grid, dtype=float)
        self.values = np.asarray(values, dtype=float)
        if self.grid.ndim != 1 or self.grid.size < 2:
            raise DomainError("profile needs at least two nodes")
        if self.values.shape != self.grid.shape:
            raise DomainError("grid/values shape mismatch")
        if np.any(np.diff(self.grid) <= 0):
            raise DomainError("profile grid must be strictly increasing")
        self._spline = None

    @property
    def spline(self) -> PchipInterpolator:
        if self._spline is None:
            self._spline = PchipInterpolator(self.grid, self.values)
        return self._spline

    def __call__(self, r):
        return self.spline(r)

    def monotone_runs(self) -> list[tuple[int, int, int]]:
        """Maximal index runs (i0, i1, direction) with direction -1/0/+1."""
        signs = np.sign(np.diff(self.values)).astype(int)
        runs = []
        start = 0
        for i in range(1, signs.size):
            if signs[i] != signs[start]:
                runs.append((start, i, int(signs[start])))
                start = i
        runs.append((start, signs.size, int(signs[start])))
        return runs

    def crossings(self, level: float, lo: float | None = None,
                  hi: float | None = None) -> list[float]:
        """Sorted radii in [lo, hi] where the interpolant crosses ``level``."""
        lo = self.grid[0] if lo is None else lo
        hi = self.grid[-1] if hi is None else hi
        f = self.values - level
        spl = self.spline
        out = list(self.grid[f == 0.0])
        for i in np.nonzero(f[:-1] * f[1:] < 0.0)[0]:
            out.append(brentq(lambda r: spl(r) - level,
                              self.grid[i], self.grid[i + 1],
                              xtol=1e-15, rtol=8.9e-16))
        out.sort()
        span = self.grid[-1] - self.grid[0]
        dedup: list[float] = []
        for r in out:
            if lo - 1e-12 * span <= r <= hi + 1e-12 * span:
                if not dedup or r - dedup[-1] > 1e-13 * span:
                    dedup.append(min(max(r, lo), hi))
        return dedup


class CumulativeIntegral:
    """Cumulative integral of a smooth integrand over a fixed grid.

    Gauss-Legendre panels per grid interval; queries between arbitrary radii
    add a partial panel, so the result is exact for piecewise-cubic data.
    """

    def __init__(self, grid, fn, order: int = 8):
        self.grid = np.asarray(grid, dtype=float)
        self.fn = fn
        self.xi, self.wq = np.polynomial.legendre.leggauss(order)
        mid = 0.5 * (self.grid[:-1] + self.grid[1:])
        half = 0.5 * np.diff(self.grid)
        nodes = mid[:, None] + half[:, None] * self.xi[None, :]
        panels = (fn(nodes) @ self.wq) * half
        self.cum = np.concatenate([[0.0], np.cumsum(panels)])

    def upto(self, r):
        """Integral from the grid start to each radius in ``r``."""
        r = np.asarray(r, dtype=float)
        scalar = r.ndim == 0
        rr = np.atleast_1d(r)
        idx = np.clip(np.searchsorted(self.grid, rr, side="right") - 1,
                      0, self.grid.size - 2)
        a = self.grid[idx]
        half = 0.5 * (rr - a)
        mid = 0.5 * (rr + a)
        nodes = mid[:, None] + half[:, None] * self.xi[None, :]
        partial = (self.fn(nodes) @ self.wq) * half
        out = self.cum[idx] + partial
        return float(out[0]) if scalar else out

    def between(self, a, b):
        return self.upto(b) - self.upto(a)
