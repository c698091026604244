"""Problem data: Robin parameters and radial domains."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import geometry
from .errors import DomainError

__all__ = ["RobinParams", "Ball", "Annulus", "RadialDomain",
           "domain_volume", "domain_perimeter", "domain_span"]


@dataclass(frozen=True)
class RobinParams:
    """Exponent p of the p-Laplacian and Robin coefficient beta."""

    p: float
    beta: float

    def __post_init__(self):
        if not self.p > 1:
            raise DomainError(f"p must exceed 1, got {self.p}")
        if not self.beta > 0:
            raise DomainError(f"beta must be positive, got {self.beta}")


@dataclass(frozen=True)
class Ball:
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError(f"ball radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class Annulus:
    inner: float
    outer: float

    def __post_init__(self):
        if not 0 < self.inner < self.outer:
            raise DomainError(
                f"annulus needs 0 < inner < outer, got ({self.inner}, {self.outer})")


RadialDomain = Ball | Annulus


def _check_domain(sf: geometry.SpaceForm, dom: RadialDomain) -> None:
    outer = dom.radius if isinstance(dom, Ball) else dom.outer
    if outer >= sf.max_radius:
        raise DomainError(
            f"outer radius {outer} must stay below {sf.max_radius} in {sf}")


def domain_volume(sf: geometry.SpaceForm, dom: RadialDomain) -> float:
    _check_domain(sf, dom)
    if isinstance(dom, Ball):
        return geometry.ball_volume(sf, dom.radius)
    return geometry.ball_volume(sf, dom.outer) - geometry.ball_volume(sf, dom.inner)


def domain_perimeter(sf: geometry.SpaceForm, dom: RadialDomain) -> float:
    """Total area of the boundary spheres."""
    _check_domain(sf, dom)
    if isinstance(dom, Ball):
        return geometry.sphere_area(sf, dom.radius)
    return geometry.sphere_area(sf, dom.inner) + geometry.sphere_area(sf, dom.outer)


def domain_span(dom: RadialDomain) -> tuple[float, float]:
    """Radial interval covered by the domain."""
    if isinstance(dom, Ball):
        return 0.0, dom.radius
    return dom.inner, dom.outer
