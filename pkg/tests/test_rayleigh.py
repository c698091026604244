"""Variational cross-check: quotient evaluation and descent minimizer."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import disk_robin_eigenvalue
from plrobin import Annulus, Ball, DomainError, RobinParams, SpaceForm, first_eigenvalue
from plrobin.problem import domain_perimeter, domain_volume
from plrobin.rayleigh import DiscreteProfile, minimize_quotient, rayleigh_quotient


def _uniform_profile(dom, values_fn, m=256):
    lo, hi = (0.0, dom.radius) if isinstance(dom, Ball) else (dom.inner, dom.outer)
    grid = np.linspace(lo, hi, m + 1)
    return DiscreteProfile(grid, values_fn(grid))


def test_constant_profile_gives_boundary_ratio():
    sf = SpaceForm(0, 2)
    par = RobinParams(2.0, 1.0)
    dom = Ball(1.0)
    prof = _uniform_profile(dom, np.ones_like)
    expected = par.beta * domain_perimeter(sf, dom) / domain_volume(sf, dom)
    assert rayleigh_quotient(sf, par, dom, prof) == pytest.approx(expected, rel=1e-5)


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=0.1, max_value=7.0))
def test_quotient_zero_homogeneous(c):
    sf = SpaceForm(-1, 2)
    par = RobinParams(2.5, 0.7)
    dom = Annulus(0.5, 1.5)
    grid = np.linspace(0.5, 1.5, 129)
    values = 1.0 + np.sin(3.0 * grid) ** 2
    q1 = rayleigh_quotient(sf, par, dom, DiscreteProfile(grid, values))
    q2 = rayleigh_quotient(sf, par, dom, DiscreteProfile(grid, c * values))
    assert q2 == pytest.approx(q1, rel=1e-12)


def test_quotient_of_shooting_eigenfunction():
    sf = SpaceForm(0, 2)
    par = RobinParams(2.0, 1.0)
    dom = Ball(1.0)
    sol = first_eigenvalue(sf, par, dom)
    prof = DiscreteProfile(sol.grid, sol.v)
    assert rayleigh_quotient(sf, par, dom, prof) == pytest.approx(sol.lam, rel=1e-4)


def test_minimize_matches_bessel_oracle():
    sf = SpaceForm(0, 2)
    par = RobinParams(2.0, 1.0)
    lam_est, prof = minimize_quotient(sf, par, Ball(1.0), 2048)
    assert lam_est == pytest.approx(disk_robin_eigenvalue(1.0), rel=1e-3)
    assert np.all(prof.values >= 0)
    assert prof.values.max() == pytest.approx(1.0)


def test_minimize_small_beta():
    sf = SpaceForm(0, 2)
    par = RobinParams(2.0, 1e-6)
    dom = Ball(1.0)
    lam_est, _ = minimize_quotient(sf, par, dom, 512)
    expected = par.beta * domain_perimeter(sf, dom) / domain_volume(sf, dom)
    assert lam_est == pytest.approx(expected, rel=0.05)


def test_minimize_annulus_agrees_with_shooting():
    sf = SpaceForm(0, 2)
    par = RobinParams(2.0, 1.0)
    dom = Annulus(1.0, 2.0)
    lam_sh = first_eigenvalue(sf, par, dom).lam
    lam_va, _ = minimize_quotient(sf, par, dom, 2048)
    assert lam_va == pytest.approx(lam_sh, rel=1e-3)


def test_minimizer_is_lower_envelope():
    sf = SpaceForm(1, 2)
    par = RobinParams(3.0, 1.0)
    dom = Ball(1.0)
    lam_est, prof = minimize_quotient(sf, par, dom, 512)
    rng = np.random.default_rng(7)
    for _ in range(5):
        bump = np.abs(prof.values + 0.1 * rng.standard_normal(prof.values.size))
        trial = DiscreteProfile(prof.grid, bump)
        assert rayleigh_quotient(sf, par, dom, trial) >= lam_est - 1e-10


def test_profile_validation():
    grid = np.linspace(0.0, 1.0, 65)
    with pytest.raises(DomainError):
        DiscreteProfile(grid, -np.ones_like(grid))
    with pytest.raises(DomainError):
        DiscreteProfile(grid, np.zeros_like(grid))
    with pytest.raises(DomainError):
        DiscreteProfile(np.linspace(0, 1, 8), np.ones(8))
    with pytest.raises(DomainError):
        minimize_quotient(SpaceForm(0, 2), RobinParams(2.0, 1.0), Ball(1.0), 16)


def test_quotient_grid_must_span_domain():
    sf = SpaceForm(0, 2)
    par = RobinParams(2.0, 1.0)
    prof = _uniform_profile(Ball(0.5), np.ones_like)
    with pytest.raises(DomainError):
        rayleigh_quotient(sf, par, Ball(1.0), prof)


def test_quotient_on_nonuniform_grid():
    # clustered grid, same eigenfunction: quotient still near the eigenvalue
    sf = SpaceForm(0, 2)
    par = RobinParams(2.0, 1.0)
    sol = first_eigenvalue(sf, par, Ball(1.0))
    grid = 0.5 * (1.0 - np.cos(np.linspace(0.0, math.pi, 257)))
    grid[0], grid[-1] = 0.0, 1.0
    values = np.interp(grid, sol.grid, sol.v)
    quot = rayleigh_quotient(sf, par, Ball(1.0), DiscreteProfile(grid, values))
    assert quot == pytest.approx(sol.lam, rel=1e-3)
