"""Model-space geometry: warps, volumes, constants."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from plrobin import (DomainError, SpaceForm, ball_volume, flat_disk_volume_ratio,
                     inverse_ball_volume, model_constants, model_sphere_radius,
                     sphere_area, total_volume, unit_ball_volume, wallis, zeta,
                     zeta_derivative)
from plrobin.geometry import ball_volume_quadrature


def test_zeta_cases():
    assert zeta(SpaceForm(0, 2), 0.7) == pytest.approx(0.7, abs=0)
    assert zeta(SpaceForm(1, 2), math.pi / 2) == pytest.approx(1.0, rel=1e-15)
    assert zeta(SpaceForm(-1, 2), 1.0) == pytest.approx(1.1752012, abs=1e-7)
    assert zeta(SpaceForm(1, 3, sphere_radius=2.0), math.pi) == pytest.approx(2.0)


@given(st.floats(min_value=1e-6, max_value=100.0))
def test_zeta_flat_is_identity(r):
    sf = SpaceForm(0, 3)
    assert zeta(sf, r) == r
    assert zeta_derivative(sf, r) == 1.0


def test_zeta_derivative_matches_finite_difference():
    h = 1e-6
    for sf in (SpaceForm(-1, 2), SpaceForm(1, 2), SpaceForm(0, 3, sphere_radius=1.5)):
        for r in (0.3, 1.0, 2.0):
            fd = (zeta(sf, r + h) - zeta(sf, r - h)) / (2 * h)
            assert zeta_derivative(sf, r) == pytest.approx(fd, rel=1e-8)


def test_zeta_domain_errors():
    with pytest.raises(DomainError):
        zeta(SpaceForm(1, 2), math.pi)
    with pytest.raises(DomainError):
        zeta(SpaceForm(0, 2), -0.1)
    with pytest.raises(DomainError):
        zeta(SpaceForm(1, 2, sphere_radius=2.0), 2.0 * math.pi)


def test_wallis_base_cases():
    assert wallis(1) == pytest.approx(math.pi, abs=0)
    assert wallis(2) == 2.0
    assert wallis(3) == pytest.approx(math.pi / 2, rel=1e-15)


@pytest.mark.parametrize("n", range(1, 13))
def test_wallis_matches_quadrature(n):
    val, _ = integrate.quad(lambda t: math.sin(t) ** (n - 1), 0.0, math.pi,
                            epsabs=1e-13, epsrel=1e-13)
    assert abs(wallis(n) - val) < 1e-12


def test_wallis_domain_error():
    with pytest.raises(DomainError):
        wallis(0)


def test_unit_ball_volumes():
    assert unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-15)
    assert unit_ball_volume(3) == pytest.approx(4 * math.pi / 3, rel=1e-15)
    assert unit_ball_volume(5) == pytest.approx(8 * math.pi**2 / 15, rel=1e-14)


def test_ball_volume_closed_forms():
    assert ball_volume(SpaceForm(0, 2), 1.0) == pytest.approx(math.pi, rel=1e-15)
    assert ball_volume(SpaceForm(0, 3), 2.0) == pytest.approx(4 * math.pi / 3 * 8,
                                                              rel=1e-15)
    assert ball_volume(SpaceForm(-1, 2), 1.0) == pytest.approx(
        2 * math.pi * (math.cosh(1.0) - 1.0), rel=1e-14)
    assert sphere_area(SpaceForm(0, 2), 1.0) == pytest.approx(2 * math.pi, rel=1e-15)


@pytest.mark.parametrize("sf", [SpaceForm(-1, 2), SpaceForm(-1, 3),
                                SpaceForm(0, 4), SpaceForm(1, 3),
                                SpaceForm(1, 2, sphere_radius=1.7)])
def test_ball_volume_matches_quadrature(sf):
    for r in (0.3, 1.0, 2.5):
        if r >= sf.max_radius:
            continue
        assert ball_volume(sf, r) == pytest.approx(
            ball_volume_quadrature(sf, r), abs=1e-11, rel=1e-12)


def test_ball_volume_strictly_increasing():
    for sf in (SpaceForm(-1, 3), SpaceForm(1, 2), SpaceForm(0, 2)):
        radii = np.linspace(0.05, min(3.0, sf.max_radius * 0.99), 40)
        vols = ball_volume(sf, radii)
        assert np.all(np.diff(vols) > 0)


def test_sphere_area_is_volume_derivative():
    h = 1e-5
    for sf in (SpaceForm(-1, 2), SpaceForm(1, 3), SpaceForm(0, 3)):
        for r in (0.4, 1.1, 2.0):
            if r + h >= sf.max_radius:
                continue
            fd = (ball_volume(sf, r + h) - ball_volume(sf, r - h)) / (2 * h)
            assert sphere_area(sf, r) == pytest.approx(fd, rel=1e-8)


def test_compact_total_volume():
    sf = SpaceForm(1, 2, sphere_radius=1.0)
    near_pole = ball_volume(sf, math.pi * (1 - 1e-12))
    assert abs(near_pole - total_volume(sf)) < 1e-8
    assert total_volume(sf) == pytest.approx(4 * math.pi, rel=1e-12)
    sf3 = SpaceForm(1, 3, sphere_radius=1.0)
    assert total_volume(sf3) == pytest.approx(2 * math.pi**2, rel=1e-12)


def test_inverse_ball_volume_roundtrip():
    for sf in (SpaceForm(0, 2), SpaceForm(-1, 3), SpaceForm(1, 2)):
        for r in (0.2, 0.9, 1.8):
            if r >= sf.max_radius:
                continue
            vol = ball_volume(sf, r)
            assert inverse_ball_volume(sf, vol) == pytest.approx(r, rel=1e-12)
    with pytest.raises(DomainError):
        inverse_ball_volume(SpaceForm(1, 2), 5.0 * math.pi)


def test_model_sphere_radius_positive_curvature():
    assert model_sphere_radius(1, 2) == 1.0


def test_model_sphere_radius_flat():
    expected = 1.0 / (math.sqrt(5.0) - 1.0)
    assert model_sphere_radius(0, 2, 1.0) == pytest.approx(expected, rel=1e-12)
    assert model_sphere_radius(0, 2, 1.0) == pytest.approx(0.8090170, abs=1e-7)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("d", [0.5, 1.0, 2.0])
def test_model_sphere_radius_hyperbolic_plugback(n, d):
    radius = model_sphere_radius(-1, n, d)
    c = 1.0 / radius
    val, _ = integrate.quad(lambda t: (math.cosh(t) + c * math.sinh(t)) ** (n - 1),
                            0.0, d, epsabs=1e-13, epsrel=1e-13)
    assert abs(c * val - wallis(n)) < 1e-10


def test_model_sphere_radius_errors():
    with pytest.raises(DomainError):
        model_sphere_radius(0, 2, None)
    with pytest.raises(DomainError):
        model_sphere_radius(-1, 2, -1.0)


def test_flat_disk_volume_ratio():
    assert flat_disk_volume_ratio(0.5, 7, 1) == 0.5
    assert flat_disk_volume_ratio(1.0, 3, 2) == 1.0
    expected = 5 * unit_ball_volume(5) / (3 * unit_ball_volume(3) * unit_ball_volume(2))
    assert flat_disk_volume_ratio(1.0, 2, 3) == pytest.approx(expected, rel=1e-14)
    assert flat_disk_volume_ratio(1.0, 2, 3) == pytest.approx(2.0 / 3.0, rel=1e-14)
    with pytest.raises(DomainError):
        flat_disk_volume_ratio(1.5, 2, 3)


def test_model_constants_invariants():
    assert model_constants(3, 1, avr=0.4, hyperbolic=True).alpha == 1.0
    mc = model_constants(3, 2, avr=0.7)
    assert mc.alpha == 0.7 and mc.theta == 0.7
    with pytest.raises(DomainError):
        model_constants(3, 1, avr=0.5, alpha=1.2)


def test_space_form_validation():
    with pytest.raises(DomainError):
        SpaceForm(2, 2)
    with pytest.raises(DomainError):
        SpaceForm(0, 1)
    with pytest.raises(DomainError):
        SpaceForm(1, 2, sphere_radius=-1.0)
