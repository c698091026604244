"""Pure-Python adaptive integrator for the radial flux system.

Fallback kernel with the same contract as the compiled ``_integrate``
module. The state is (v, w) with w the flux |v'|^(p-2) v', which keeps the
right-hand side regular where v' vanishes:

    v' = sign(w) |w|^(1/(p-1)),
    w' = -lam * sign(v) |v|^(p-1) - (n-1) (zeta'/zeta) w.

Stepping is an embedded Dormand-Prince 5(4) pair with PI-free step control.
Status codes: 0 success, 1 state blow-up (capped), 2 step underflow,
3 step-count limit.
"""

import math

BACKEND = "python"

# warp codes shared with the compiled kernel
WARP_EUCLID = 0
WARP_SIN = 1
WARP_SINH = 2

_CAP = 1e100


def _cot_coeff(warp, scale, nm1, r):
    if warp == WARP_EUCLID:
        return nm1 / r
    if warp == WARP_SIN:
        x = r / scale
        return nm1 * math.cos(x) / (scale * math.sin(x))
    return nm1 * math.cosh(r) / math.sinh(r)


def integrate_flux(warp, scale, n, p, lam, r, v, w, targets,
                   rtol, atol, max_step, v_out, w_out):
    """Integrate the flux system from r through each target radius.

    ``targets`` must be strictly increasing with targets[0] > r. Fills
    ``v_out``/``w_out`` at the targets and returns ``(vmin, status)`` where
    ``vmin`` is the minimum of v over all accepted states.
    """
    nm1 = n - 1.0
    pinv = 1.0 / (p - 1.0)
    pm1 = p - 1.0

    def rhs(rr, vv, ww):
        dv = math.copysign(abs(ww) ** pinv, ww) if ww != 0.0 else 0.0
        dw = -lam * (math.copysign(abs(vv) ** pm1, vv) if vv != 0.0 else 0.0) \
            - _cot_coeff(warp, scale, nm1, rr) * ww
        return dv, dw

    ntarg = len(targets)
    span = targets[ntarg - 1] - r
    hmin = 1e-15 * span
    h = min(max_step, 1e-2 * span)
    k1v, k1w = rhs(r, v, w)
    vmin = v
    status = 0
    idx = 0
    nstep = 0
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

        k2v, k2w = rhs(r + 0.2 * ht, v + ht * 0.2 * k1v, w + ht * 0.2 * k1w)
        k3v, k3w = rhs(r + 0.3 * ht,
                       v + ht * (3.0 / 40.0 * k1v + 9.0 / 40.0 * k2v),
                       w + ht * (3.0 / 40.0 * k1w + 9.0 / 40.0 * k2w))
        k4v, k4w = rhs(r + 0.8 * ht,
                       v + ht * (44.0 / 45.0 * k1v - 56.0 / 15.0 * k2v + 32.0 / 9.0 * k3v),
                       w + ht * (44.0 / 45.0 * k1w - 56.0 / 15.0 * k2w + 32.0 / 9.0 * k3w))
        k5v, k5w = rhs(r + 8.0 / 9.0 * ht,
                       v + ht * (19372.0 / 6561.0 * k1v - 25360.0 / 2187.0 * k2v
                                 + 64448.0 / 6561.0 * k3v - 212.0 / 729.0 * k4v),
                       w + ht * (19372.0 / 6561.0 * k1w - 25360.0 / 2187.0 * k2w
                                 + 64448.0 / 6561.0 * k3w - 212.0 / 729.0 * k4w))
        k6v, k6w = rhs(r + ht,
                       v + ht * (9017.0 / 3168.0 * k1v - 355.0 / 33.0 * k2v
                                 + 46732.0 / 5247.0 * k3v + 49.0 / 176.0 * k4v
                                 - 5103.0 / 18656.0 * k5v),
                       w + ht * (9017.0 / 3168.0 * k1w - 355.0 / 33.0 * k2w
                                 + 46732.0 / 5247.0 * k3w + 49.0 / 176.0 * k4w
                                 - 5103.0 / 18656.0 * k5w))
        yv = v + ht * (35.0 / 384.0 * k1v + 500.0 / 1113.0 * k3v + 125.0 / 192.0 * k4v
                       - 2187.0 / 6784.0 * k5v + 11.0 / 84.0 * k6v)
        yw = w + ht * (35.0 / 384.0 * k1w + 500.0 / 1113.0 * k3w + 125.0 / 192.0 * k4w
                       - 2187.0 / 6784.0 * k5w + 11.0 / 84.0 * k6w)
        k7v, k7w = rhs(r + ht, yv, yw)

        ev = ht * (71.0 / 57600.0 * k1v - 71.0 / 16695.0 * k3v + 71.0 / 1920.0 * k4v
                   - 17253.0 / 339200.0 * k5v + 22.0 / 525.0 * k6v - 1.0 / 40.0 * k7v)
        ew = ht * (71.0 / 57600.0 * k1w - 71.0 / 16695.0 * k3w + 71.0 / 1920.0 * k4w
                   - 17253.0 / 339200.0 * k5w + 22.0 / 525.0 * k6w - 1.0 / 40.0 * k7w)
        sv = atol + rtol * max(abs(v), abs(yv))
        sw = atol + rtol * max(abs(w), abs(yw))
        err = math.sqrt(0.5 * ((ev / sv) ** 2 + (ew / sw) ** 2))

        if err <= 1.0:  # NaN fails the test and rejects the step
            r += ht
            v, w = yv, yw
            k1v, k1w = k7v, k7w
            if v < vmin:
                vmin = v
            if abs(v) > _CAP or abs(w) > _CAP:
                status = 1
                break
            if rt - r <= 1e-14 * span:
                v_out[idx] = v
                w_out[idx] = w
                idx += 1
            if not clamped:
                fac = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
                h = min(max_step, ht * fac)
        else:
            fac = min(5.0, max(0.2, 0.9 * err ** -0.2)) if err == err else 0.2
            h = ht * fac
        if h < hmin:
            status = 2
            break
        nstep += 1
        if nstep > 20_000_000:
            status = 3
            break

    while idx < ntarg:  # on failure, propagate the last state
        v_out[idx] = v
        w_out[idx] = w
        idx += 1
    return vmin, status
