"""Compiled vs pure-Python integrator kernels: same results, same contract."""

import numpy as np
import pytest

import plrobin._integrate_py as pykern
from plrobin import kernel_backend

try:
    import plrobin._integrate as cykern
except ImportError:
    cykern = None

CASES = [
    # warp, scale, n, p, lam, r0, v0, w0, r_end
    (pykern.WARP_EUCLID, 0.0, 2, 2.0, 5.0, 1e-6, 1.0, -2.5e-6, 1.0),
    (pykern.WARP_EUCLID, 0.0, 3, 1.5, 1.0, 1e-6, 1.0, -3.3e-7, 1.0),
    (pykern.WARP_SIN, 1.0, 3, 3.0, 2.0, 0.5, 1.0, 1.0, 2.0),
    (pykern.WARP_SIN, 2.0, 2, 2.0, 0.7, 0.3, 1.0, 0.2, 4.0),
    (pykern.WARP_SINH, 0.0, 2, 4.0, 0.9, 1e-6, 1.0, -4.5e-7, 1.5),
]


def _run(kern, case, targets):
    warp, scale, n, p, lam, r0, v0, w0, r_end = case
    tg = np.asarray(targets, dtype=float)
    v = np.empty_like(tg)
    w = np.empty_like(tg)
    vmin, status = kern.integrate_flux(warp, scale, n, p, lam, r0, v0, w0, tg,
                                       1e-11, 1e-13, (r_end - r0) / 64, v, w)
    return v, w, vmin, status


@pytest.mark.skipif(cykern is None, reason="compiled kernel not built")
@pytest.mark.parametrize("case", CASES)
def test_kernels_agree_endpoint(case):
    targets = [case[-1]]
    vc, wc, mc, sc = _run(cykern, case, targets)
    vp, wp, mp, sp = _run(pykern, case, targets)
    assert sc == sp == 0
    assert vc[0] == pytest.approx(vp[0], rel=1e-12, abs=1e-14)
    assert wc[0] == pytest.approx(wp[0], rel=1e-12, abs=1e-14)
    assert mc == pytest.approx(mp, rel=1e-12, abs=1e-14)


@pytest.mark.skipif(cykern is None, reason="compiled kernel not built")
def test_kernels_agree_on_grid():
    case = CASES[0]
    targets = np.linspace(0.01, case[-1], 97)
    vc, wc, _, _ = _run(cykern, case, targets)
    vp, wp, _, _ = _run(pykern, case, targets)
    np.testing.assert_allclose(vc, vp, rtol=1e-12, atol=1e-14)
    np.testing.assert_allclose(wc, wp, rtol=1e-12, atol=1e-14)


def test_python_kernel_blowup_status():
    # absurd initial flux: v' = |w|^2 pushes v past the state cap immediately
    v = np.empty(1)
    w = np.empty(1)
    vmin, status = pykern.integrate_flux(
        pykern.WARP_EUCLID, 0.0, 2, 1.5, 1.0, 1.0, 1.0, 1e80,
        np.array([2.0]), 1e-11, 1e-13, 1.0, v, w)
    assert status == 1
    assert v[0] > 0


def test_backend_reports_selection():
    assert kernel_backend() in ("cython", "python")
    if cykern is not None:
        assert kernel_backend() == "cython"
