"""Volume-matched transplantation of radial profiles between domains.

A solved profile u on a source domain and a radial weight psi on a model
ball are linked through the matched-radius map

    rho(t) = (ball volume)^(-1) ( |{u > t}| / alpha ),

which carries the superlevel set {u > t} to the ball of equal (alpha-scaled)
volume. The transplanted weight q -> psi(rho(u(q))) is then equimeasurable
with psi level by level, so all its integral norms over {u > t} match the
alpha-scaled norms of psi over the matched ball. Both statements are checked
numerically here, each by two independent routes (interval measures vs
layer-cake integration).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import geometry
from .errors import DomainError
from .geometry import SpaceForm
from .levelsets import level_geometry
from .problem import Ball, domain_volume
from .profiles import CumulativeIntegral, RadialProfile
from .shooting import RadialSolution, first_eigenvalue

__all__ = ["Transplant", "LpNorms", "log_gradient_transplant"]


@dataclass(frozen=True)
class LpNorms:
    """The two sides of the transplanted norm identity, by two routes each."""

    lhs_direct: float
    rhs_direct: float
    lhs_layer: float
    rhs_layer: float


class Transplant:
    """Transplant context: source solution, target space, weight psi."""

    def __init__(self, source: RadialSolution, target_space: SpaceForm,
                 psi: RadialProfile, alpha: float = 1.0):
        if not 0.0 < alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
        self.source = source
        self.target_space = target_space
        self.psi = psi
        self.alpha = alpha
        self.source_volume = domain_volume(source.space, source.domain)
        self.sharp_radius = geometry.inverse_ball_volume(
            target_space, self.source_volume / alpha)
        if psi.grid[0] > 1e-9 * self.sharp_radius or \
                psi.grid[-1] < self.sharp_radius * (1 - 1e-9):
            raise DomainError(
                f"psi must span [0, {self.sharp_radius}], got "
                f"[{psi.grid[0]}, {psi.grid[-1]}]")
        self._cum_cache: dict[tuple[str, float], CumulativeIntegral] = {}

    def matched_radius(self, t: float) -> float:
        """Radius of the target ball carrying the volume of {u > t}."""
        vol = level_geometry(self.source, t).volume
        return geometry.inverse_ball_volume(self.target_space, vol / self.alpha)

    def _superlevel_volumes(self, levels: np.ndarray) -> np.ndarray:
        """Volumes of {u > s} for many levels at once (vectorized bisection)."""
        src = self.source
        sf = src.space
        spline = RadialProfile(src.grid, src.v).spline

        def branch_crossings(i0, i1, increasing, s):
            vals = src.v[i0:i1 + 1]
            sub = src.grid[i0:i1 + 1]
            if increasing:
                idx = np.clip(np.searchsorted(vals, s), 1, vals.size - 1)
            else:
                idx = np.clip(np.searchsorted(-vals, -s), 1, vals.size - 1)
            lo, hi = sub[idx - 1].copy(), sub[idx].copy()
            for _ in range(90):
                mid = 0.5 * (lo + hi)
                above = spline(mid) > s
                go_right = above if not increasing else ~above
                lo = np.where(go_right, mid, lo)
                hi = np.where(go_right, hi, mid)
            return 0.5 * (lo + hi)

        lo_r, hi_r = src.grid[0], src.grid[-1]
        if isinstance(src.domain, Ball):
            inner = np.full_like(levels, lo_r)
            outer = np.where(levels <= src.v[-1], hi_r,
                             branch_crossings(0, src.grid.size - 1, False, levels))
        else:
            imax = int(np.argmax(src.v))
            inner = np.where(levels <= src.v[0], lo_r,
                             branch_crossings(0, imax, True, levels))
            outer = np.where(levels <= src.v[-1], hi_r,
                             branch_crossings(imax, src.grid.size - 1, False, levels))
        return geometry.ball_volume(sf, outer) - geometry.ball_volume(sf, inner)

    def _matched_radii(self, levels: np.ndarray) -> np.ndarray:
        """Vectorized matched_radius over an array of levels."""
        vols = self._superlevel_volumes(levels) / self.alpha
        sf = self.target_space
        hi0 = sf.max_radius * (1 - 1e-13) if math.isfinite(sf.max_radius) \
            else self.sharp_radius * 2.0 + 1.0
        lo = np.zeros_like(vols)
        hi = np.full_like(vols, hi0)
        for _ in range(110):
            mid = 0.5 * (lo + hi)
            too_big = geometry.ball_volume(sf, mid) > vols
            lo = np.where(too_big, lo, mid)
            hi = np.where(too_big, mid, hi)
        return 0.5 * (lo + hi)

    @cached_property
    def transplanted(self) -> RadialProfile:
        """The weight psi(rho(u(r))) sampled on a cusp-refined source grid.

        At an interior maximum of u the composition behaves like
        |r - r_max|^(1/n), so the sampling grid is refined dyadically around
        that radius; elsewhere the solution grid is fine enough.
        """
        src = self.source
        grid = src.grid
        if not isinstance(src.domain, Ball):
            width = grid[-1] - grid[0]
            wprof = RadialProfile(src.grid, src.w)
            zeros = wprof.crossings(0.0)
            if zeros:
                rmax = min(zeros, key=lambda r: abs(r - src.grid[int(np.argmax(src.v))]))
                window, floor, ratio = width / 8.0, 1e-13 * width, 1.01
                count = int(math.ceil(math.log(window / floor) / math.log(ratio)))
                offs = window * ratio ** (-np.arange(count, dtype=float))
                extra = np.concatenate([rmax - offs, [rmax], rmax + offs])
                extra = extra[(extra > grid[0]) & (extra < grid[-1])]
                grid = np.unique(np.concatenate([grid, extra]))
                keep = np.concatenate([[True], np.diff(grid) > 1e-16 * width])
                grid = grid[keep]
        uvals = np.clip(np.asarray(RadialProfile(src.grid, src.v)(grid), dtype=float),
                        1e-13, 1.0 - 1e-13)
        radii = self._matched_radii(uvals)
        return RadialProfile(grid, np.asarray(self.psi(radii), dtype=float))

    def _source_pieces(self, t: float, level: float, slabs=None):
        """Sub-intervals of {u > t} where the transplanted weight exceeds level."""
        if slabs is None:
            slabs = level_geometry(self.source, t).slabs
        g = self.transplanted
        pieces = []
        for a, b in slabs:
            cuts = [a] + g.crossings(level, a, b) + [b]
            for x1, x2 in zip(cuts[:-1], cuts[1:]):
                if x2 > x1 and float(g(0.5 * (x1 + x2))) > level:
                    pieces.append((x1, x2))
        return pieces

    def _target_pieces(self, sigma: float, level: float):
        """Sub-intervals of [0, sigma] where psi exceeds level."""
        cuts = [0.0] + self.psi.crossings(level, 0.0, sigma) + [sigma]
        return [(x1, x2) for x1, x2 in zip(cuts[:-1], cuts[1:])
                if x2 > x1 and float(self.psi(0.5 * (x1 + x2))) > level]

    def equimeasurable_volumes(self, t: float, level: float) -> tuple[float, float]:
        """|{u > t} and {transplant > level}| vs alpha-scaled target volume."""
        src_sf, tgt_sf = self.source.space, self.target_space
        lhs = sum(geometry.ball_volume(src_sf, b) - geometry.ball_volume(src_sf, a)
                  for a, b in self._source_pieces(t, level))
        sigma = self.matched_radius(t)
        rhs = self.alpha * sum(
            geometry.ball_volume(tgt_sf, b) - geometry.ball_volume(tgt_sf, a)
            for a, b in self._target_pieces(sigma, level))
        return lhs, rhs

    def _cumulative(self, profile: RadialProfile, sf: SpaceForm, q: float):
        spline = profile.spline
        nm1 = sf.dimension - 1

        def integrand(x):
            return np.abs(spline(x)) ** q * geometry.zeta(sf, x) ** nm1

        return CumulativeIntegral(profile.grid, integrand)

    def _critical_levels(self, profile: RadialProfile, lo: float, hi: float):
        """Levels where piece counting can change: run-boundary values."""
        vals = [float(profile(lo)), float(profile(hi))]
        for i0, i1, _ in profile.monotone_runs():
            for idx in (i0, i1):
                r = profile.grid[idx]
                if lo <= r <= hi:
                    vals.append(float(profile.values[idx]))
        return vals

    def _layer_cake(self, volume_of_level, critical, q: float) -> float:
        """Integral q l^(q-1) V(l) dl via the substitution m = l^q.

        Between consecutive critical levels V(m^(1/q)) is smooth except for
        fractional-power tails at the ends, so each interval is subdivided
        dyadically toward both endpoints before Gauss panels are applied.
        """
        top = max(critical)
        if top <= 0.0:
            return 0.0
        raw = sorted({min(max(v, 0.0), top) ** q for v in critical} | {0.0, top**q})
        ms = [raw[0]]
        for m in raw[1:]:  # collapse near-duplicate critical levels
            if m - ms[-1] > 1e-9 * raw[-1]:
                ms.append(m)
        ms[-1] = raw[-1]
        xi, wq = np.polynomial.legendre.leggauss(8)
        fractions = 2.0 ** (-np.arange(1, 12, dtype=float))
        total = 0.0
        for m0, m1 in zip(ms[:-1], ms[1:]):
            width = m1 - m0
            if width <= 0.0:
                continue
            cuts = np.unique(np.concatenate(
                [[m0, m1], m0 + width * fractions, m1 - width * fractions]))
            for a, b in zip(cuts[:-1], cuts[1:]):
                half, mid = 0.5 * (b - a), 0.5 * (a + b)
                nodes = mid + half * xi
                total += half * sum(w * volume_of_level(m ** (1.0 / q))
                                    for w, m in zip(wq, nodes))
        return total

    def lp_norms(self, t: float, q: float) -> LpNorms:
        """Norm of the transplanted weight over {u > t}, both sides/routes.

        Direct route: radial quadrature of |weight|^q against the volume
        element. Layer-cake route: integral of q l^(q-1) times the
        equimeasurable volumes. All four numbers agree for a valid transplant.
        """
        if q <= 0:
            raise DomainError(f"exponent must be positive, got {q}")
        src, tgt = self.source.space, self.target_space
        nwn_src = src.dimension * geometry.unit_ball_volume(src.dimension)
        nwn_tgt = tgt.dimension * geometry.unit_ball_volume(tgt.dimension)

        geo = level_geometry(self.source, t)
        cum_src = self._cum_cache.get(("src", q))
        if cum_src is None:
            cum_src = self._cum_cache.setdefault(
                ("src", q), self._cumulative(self.transplanted, src, q))
        lhs_direct = nwn_src * sum(cum_src.between(a, b) for a, b in geo.slabs)

        sigma = self.matched_radius(t)
        cum_tgt = self._cum_cache.get(("tgt", q))
        if cum_tgt is None:
            cum_tgt = self._cum_cache.setdefault(
                ("tgt", q), self._cumulative(self.psi, tgt, q))
        rhs_direct = self.alpha * nwn_tgt * cum_tgt.between(0.0, sigma)

        crit_src = []
        for a, b in geo.slabs:
            crit_src += self._critical_levels(self.transplanted, a, b)
        slabs = geo.slabs
        lhs_layer = self._layer_cake(
            lambda l: sum(
                geometry.ball_volume(src, b) - geometry.ball_volume(src, a)
                for a, b in self._source_pieces(t, l, slabs)),
            crit_src, q)
        crit_tgt = self._critical_levels(self.psi, 0.0, sigma)
        rhs_layer = self._layer_cake(
            lambda l: self.alpha * sum(
                geometry.ball_volume(tgt, b) - geometry.ball_volume(tgt, a)
                for a, b in self._target_pieces(sigma, l)),
            crit_tgt, q)
        return LpNorms(lhs_direct, rhs_direct, lhs_layer, rhs_layer)


def log_gradient_transplant(source: RadialSolution, target_space: SpaceForm | None = None,
                            alpha: float = 1.0, opts=None
                            ) -> tuple[Transplant, RadialSolution]:
    """Transplant whose weight is the log-gradient of the matched-ball eigenfunction.

    Solves the first eigenpair on the volume-matched ball in the target space
    (defaulting to the source space) and uses its |v'|/v profile as psi.
    """
    from .shooting import SolverOptions

    tgt = source.space if target_space is None else target_space
    sharp = geometry.inverse_ball_volume(
        tgt, domain_volume(source.space, source.domain) / alpha)
    ball_sol = first_eigenvalue(tgt, source.params, Ball(sharp),
                                opts or SolverOptions())
    psi = RadialProfile(ball_sol.grid, ball_sol.f)
    return Transplant(source, tgt, psi, alpha), ball_sol
