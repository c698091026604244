# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled adaptive integrator for the radial flux system.

Same contract as ``_integrate_py`` (the pure-Python fallback): embedded
Dormand-Prince 5(4) stepping of the state (v, w), with w the flux
|v'|^(p-2) v'. Status codes: 0 success, 1 blow-up, 2 step underflow,
3 step-count limit.
"""

from libc.math cimport sin, cos, sinh, cosh, pow, fabs, sqrt, copysign

BACKEND = "cython"

WARP_EUCLID = 0
WARP_SIN = 1
WARP_SINH = 2

cdef double _CAP = 1e100


cdef inline double _cot_coeff(int warp, double scale, double nm1, double r) noexcept nogil:
    cdef double x
    if warp == 0:
        return nm1 / r
    if warp == 1:
        x = r / scale
        return nm1 * cos(x) / (scale * sin(x))
    return nm1 * cosh(r) / sinh(r)


cdef inline void _rhs(int warp, double scale, double nm1, double pinv, double pm1,
                      double lam, double r, double v, double w,
                      double* dv, double* dw) noexcept nogil:
    cdef double av
    dv[0] = copysign(pow(fabs(w), pinv), w) if w != 0.0 else 0.0
    av = copysign(pow(fabs(v), pm1), v) if v != 0.0 else 0.0
    dw[0] = -lam * av - _cot_coeff(warp, scale, nm1, r) * w


def integrate_flux(int warp, double scale, int n, double p, double lam,
                   double r, double v, double w, double[:] targets,
                   double rtol, double atol, double max_step,
                   double[:] v_out, double[:] w_out):
    """Integrate from r through each target radius; see _integrate_py."""
    cdef double nm1 = n - 1.0
    cdef double pinv = 1.0 / (p - 1.0)
    cdef double pm1 = p - 1.0
    cdef Py_ssize_t ntarg = targets.shape[0]
    cdef double span = targets[ntarg - 1] - r
    cdef double hmin = 1e-15 * span
    cdef double h = max_step if max_step < 1e-2 * span else 1e-2 * span
    cdef double vmin = v
    cdef int status = 0
    cdef Py_ssize_t idx = 0
    cdef long nstep = 0
    cdef double rt, ht, fac, err, sv, sw, ev, ew, yv, yw
    cdef bint clamped
    cdef double k1v, k1w, k2v, k2w, k3v, k3w, k4v, k4w, k5v, k5w, k6v, k6w, k7v, k7w

    _rhs(warp, scale, nm1, pinv, pm1, lam, r, v, w, &k1v, &k1w)
    while idx < ntarg:
        rt = targets[idx]
        if rt - r <= 1e-14 * span:
            v_out[idx] = v
            w_out[idx] = w
            idx += 1
            continue
        clamped = False
        ht = h
        if r + ht >= rt:
            ht = rt - r
            clamped = True

        _rhs(warp, scale, nm1, pinv, pm1, lam, r + 0.2 * ht,
             v + ht * 0.2 * k1v, w + ht * 0.2 * k1w, &k2v, &k2w)
        _rhs(warp, scale, nm1, pinv, pm1, lam, r + 0.3 * ht,
             v + ht * (3.0 / 40.0 * k1v + 9.0 / 40.0 * k2v),
             w + ht * (3.0 / 40.0 * k1w + 9.0 / 40.0 * k2w), &k3v, &k3w)
        _rhs(warp, scale, nm1, pinv, pm1, lam, r + 0.8 * ht,
             v + ht * (44.0 / 45.0 * k1v - 56.0 / 15.0 * k2v + 32.0 / 9.0 * k3v),
             w + ht * (44.0 / 45.0 * k1w - 56.0 / 15.0 * k2w + 32.0 / 9.0 * k3w),
             &k4v, &k4w)
        _rhs(warp, scale, nm1, pinv, pm1, lam, r + 8.0 / 9.0 * ht,
             v + ht * (19372.0 / 6561.0 * k1v - 25360.0 / 2187.0 * k2v
                       + 64448.0 / 6561.0 * k3v - 212.0 / 729.0 * k4v),
             w + ht * (19372.0 / 6561.0 * k1w - 25360.0 / 2187.0 * k2w
                       + 64448.0 / 6561.0 * k3w - 212.0 / 729.0 * k4w),
             &k5v, &k5w)
        _rhs(warp, scale, nm1, pinv, pm1, lam, r + ht,
             v + ht * (9017.0 / 3168.0 * k1v - 355.0 / 33.0 * k2v
                       + 46732.0 / 5247.0 * k3v + 49.0 / 176.0 * k4v
                       - 5103.0 / 18656.0 * k5v),
             w + ht * (9017.0 / 3168.0 * k1w - 355.0 / 33.0 * k2w
                       + 46732.0 / 5247.0 * k3w + 49.0 / 176.0 * k4w
                       - 5103.0 / 18656.0 * k5w),
             &k6v, &k6w)
        yv = v + ht * (35.0 / 384.0 * k1v + 500.0 / 1113.0 * k3v + 125.0 / 192.0 * k4v
                       - 2187.0 / 6784.0 * k5v + 11.0 / 84.0 * k6v)
        yw = w + ht * (35.0 / 384.0 * k1w + 500.0 / 1113.0 * k3w + 125.0 / 192.0 * k4w
                       - 2187.0 / 6784.0 * k5w + 11.0 / 84.0 * k6w)
        _rhs(warp, scale, nm1, pinv, pm1, lam, r + ht, yv, yw, &k7v, &k7w)

        ev = ht * (71.0 / 57600.0 * k1v - 71.0 / 16695.0 * k3v + 71.0 / 1920.0 * k4v
                   - 17253.0 / 339200.0 * k5v + 22.0 / 525.0 * k6v - 1.0 / 40.0 * k7v)
        ew = ht * (71.0 / 57600.0 * k1w - 71.0 / 16695.0 * k3w + 71.0 / 1920.0 * k4w
                   - 17253.0 / 339200.0 * k5w + 22.0 / 525.0 * k6w - 1.0 / 40.0 * k7w)
        sv = atol + rtol * (fabs(v) if fabs(v) > fabs(yv) else fabs(yv))
        sw = atol + rtol * (fabs(w) if fabs(w) > fabs(yw) else fabs(yw))
        err = sqrt(0.5 * ((ev / sv) * (ev / sv) + (ew / sw) * (ew / sw)))

        if err <= 1.0:  # NaN fails and rejects
            r += ht
            v = yv
            w = yw
            k1v = k7v
            k1w = k7w
            if v < vmin:
                vmin = v
            if fabs(v) > _CAP or fabs(w) > _CAP:
                status = 1
                break
            if rt - r <= 1e-14 * span:
                v_out[idx] = v
                w_out[idx] = w
                idx += 1
            if not clamped:
                if err == 0.0:
                    fac = 5.0
                else:
                    fac = 0.9 * pow(err, -0.2)
                    if fac > 5.0:
                        fac = 5.0
                    elif fac < 0.2:
                        fac = 0.2
                h = ht * fac
                if h > max_step:
                    h = max_step
        else:
            if err == err:
                fac = 0.9 * pow(err, -0.2)
                if fac > 5.0:
                    fac = 5.0
                elif fac < 0.2:
                    fac = 0.2
            else:
                fac = 0.2
            h = ht * fac
        if h < hmin:
            status = 2
            break
        nstep += 1
        if nstep > 20000000:
            status = 3
            break

    while idx < ntarg:
        v_out[idx] = v
        w_out[idx] = w
        idx += 1
    return vmin, status
