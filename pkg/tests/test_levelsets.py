"""Superlevel-set geometry and the comparison functional."""

import math

import numpy as np
import pytest

from oracles import disk_robin_eigenvalue
from plrobin import (Annulus, Ball, DomainError, EmptyLevelSetError, RobinParams,
                     SpaceForm, ball_volume, first_eigenvalue, sphere_area)
from plrobin.levelsets import (HFunctional, default_levels, h_functional,
                               h_identity_deviation, h_minimum, level_set_data)
from plrobin.profiles import RadialProfile


@pytest.fixture(scope="module")
def disk_solution():
    return first_eigenvalue(SpaceForm(0, 2), RobinParams(2.0, 1.0), Ball(1.0))


@pytest.fixture(scope="module")
def annulus_solution():
    return first_eigenvalue(SpaceForm(0, 2), RobinParams(2.0, 1.0), Annulus(1.0, 2.0))


def test_sublevel_contains_boundary(disk_solution):
    sol = disk_solution
    t = 0.5 * sol.v[-1]
    data = level_set_data(sol, t)
    sf = sol.space
    assert data.exterior_area == pytest.approx(sphere_area(sf, 1.0))
    assert data.interior_area == 0.0
    assert data.volume == pytest.approx(ball_volume(sf, 1.0))


def test_level_set_shrinks_to_center(disk_solution):
    data = level_set_data(disk_solution, 1.0 - 1e-9)
    assert data.volume < 1e-6


def test_level_set_limits_at_zero(disk_solution):
    data = level_set_data(disk_solution, 1e-9)
    sf = disk_solution.space
    assert data.volume == pytest.approx(ball_volume(sf, 1.0), rel=1e-12)
    assert data.exterior_area == pytest.approx(sphere_area(sf, 1.0), rel=1e-12)
    assert data.interior_area == 0.0


def test_ball_level_volume_matches_crossing(disk_solution):
    sol = disk_solution
    prof = RadialProfile(sol.grid, sol.v)
    for t in (0.7, 0.8, 0.95):  # above v(R) ~ 0.643, so the set is interior
        rho = prof.crossings(t)[0]
        data = level_set_data(sol, t)
        assert data.volume == pytest.approx(math.pi * rho**2, rel=1e-10)
        assert data.interior_area == pytest.approx(2 * math.pi * rho, rel=1e-10)


def test_level_monotonicity(annulus_solution):
    levels = np.linspace(0.05, 0.95, 40)
    data = [level_set_data(annulus_solution, t) for t in levels]
    vols = [d.volume for d in data]
    exts = [d.exterior_area for d in data]
    assert all(b <= a + 1e-12 for a, b in zip(vols, vols[1:]))
    assert all(b <= a + 1e-12 for a, b in zip(exts, exts[1:]))


def test_level_set_errors(disk_solution):
    with pytest.raises(DomainError):
        level_set_data(disk_solution, 0.0)
    with pytest.raises(DomainError):
        level_set_data(disk_solution, 1.0)
    # a profile whose sup falls short of 1 has empty sets above it
    import dataclasses
    shrunk = dataclasses.replace(disk_solution, v=0.9 * disk_solution.v)
    with pytest.raises(EmptyLevelSetError):
        level_set_data(shrunk, 0.95)


def test_h_zero_weight_is_exterior_ratio(disk_solution):
    sol = disk_solution
    t = 0.5 * sol.v[-1]
    value = h_functional(sol, 0.0, t)
    data = level_set_data(sol, t)
    assert value == pytest.approx(sol.params.beta * data.exterior_area / data.volume,
                                  rel=1e-12)


def test_h_constant_weight_closed_form(disk_solution):
    sol = disk_solution
    sf = sol.space
    c = 0.7
    t = 0.7  # above the boundary value: interior crossing at rho
    prof = RadialProfile(sol.grid, sol.v)
    rho = prof.crossings(t)[0]
    beta = sol.params.beta
    expected = (c * sphere_area(sf, rho) - c**2 * ball_volume(sf, rho)) \
        / ball_volume(sf, rho)
    assert h_functional(sol, c, t) == pytest.approx(expected, rel=1e-9)


def test_h_identity_bessel_cell(disk_solution):
    dev = h_identity_deviation(disk_solution)
    assert dev <= 1e-6 * disk_solution.lam
    assert disk_solution.lam == pytest.approx(disk_robin_eigenvalue(1.0), rel=1e-6)


def test_h_identity_annulus(annulus_solution):
    dev = h_identity_deviation(annulus_solution)
    assert dev <= 1e-5 * annulus_solution.lam


def test_h_minimum_weight_families(annulus_solution):
    sol = annulus_solution
    fb = sol.params.beta ** (1.0 / (sol.params.p - 1.0))
    families = {
        "shrunk": 0.5 * sol.f,
        "stretched": 1.2 * sol.f,
        "shifted": sol.f + 0.1,
        "constant": np.full_like(sol.f, fb),
        "truncated": np.minimum(sol.f, 0.8 * fb),
    }
    for name, phi in families.items():
        _, h_min = h_minimum(sol, phi)
        assert h_min <= sol.lam * (1 + 1e-6), name


def test_h_minimum_at_log_gradient_is_eigenvalue(disk_solution):
    _, h_min = h_minimum(disk_solution, disk_solution.f)
    assert h_min == pytest.approx(disk_solution.lam, rel=1e-6)


def test_default_levels_avoid_boundary_values(annulus_solution):
    levels = default_levels(annulus_solution)
    assert levels.size >= 199
    assert np.all((levels > 0) & (levels < 1))
    for bv in (annulus_solution.v[0], annulus_solution.v[-1]):
        assert np.all(np.abs(levels - bv) >= 1e-9)
    # the window between the top boundary value and 1 is sampled
    top = max(annulus_solution.v[0], annulus_solution.v[-1])
    assert np.any(levels > top)


def test_hfunctional_scan_matches_pointwise(disk_solution):
    func = HFunctional(disk_solution, disk_solution.f)
    ts = np.array([0.2, 0.5, 0.9])
    scan = func.scan(ts)
    for t, val in zip(ts, scan):
        assert val == pytest.approx(h_functional(disk_solution, disk_solution.f, t))
