"""Pure-Python RK4 kernels; same contract and operation order as ``_rk4.pyx``."""

import numpy as np


def _step(y, p, q0, qm, q1, h):
    half = 0.5 * h
    k1y = p
    k1p = -q0 * y
    k2y = p + half * k1p
    k2p = -qm * (y + half * k1y)
    k3y = p + half * k2p
    k3p = -qm * (y + half * k2y)
    k4y = p + h * k3p
    k4p = -q1 * (y + h * k3y)
    return (
        y + (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
        p + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
    )


def rk4_transfer(q, h):
    """Propagate the canonical solutions (1, 0) and (0, 1); return M as a 4-tuple."""
    qs = [complex(v) for v in q]
    nsteps = (len(qs) - 1) // 2
    y1, p1, y2, p2 = 1 + 0j, 0j, 0j, 1 + 0j
    for j in range(nsteps):
        q0, qm, q1 = qs[2 * j], qs[2 * j + 1], qs[2 * j + 2]
        y1, p1 = _step(y1, p1, q0, qm, q1, h)
        y2, p2 = _step(y2, p2, q0, qm, q1, h)
    return (y1, y2, p1, p2)


def rk4_trajectory(q, h, y0, dy0):
    """Integrate from (y0, dy0); return (y, dy) at every node."""
    qs = [complex(v) for v in q]
    nsteps = (len(qs) - 1) // 2
    ys = np.empty(nsteps + 1, dtype=np.complex128)
    ps = np.empty(nsteps + 1, dtype=np.complex128)
    y, p = complex(y0), complex(dy0)
    ys[0], ps[0] = y, p
    for j in range(nsteps):
        y, p = _step(y, p, qs[2 * j], qs[2 * j + 1], qs[2 * j + 2], h)
        ys[j + 1], ps[j + 1] = y, p
    return ys, ps


def _coupled_step(a, b, u0, um, u1, e0, em, e1, h):
    half = 0.5 * h
    c0, cm, c1 = e0.conjugate(), em.conjugate(), e1.conjugate()
    k1a = u0 * (a + c0 * b)
    k1b = -u0 * (e0 * a + b)
    ta = a + half * k1a
    tb = b + half * k1b
    k2a = um * (ta + cm * tb)
    k2b = -um * (em * ta + tb)
    ta = a + half * k2a
    tb = b + half * k2b
    k3a = um * (ta + cm * tb)
    k3b = -um * (em * ta + tb)
    ta = a + h * k3a
    tb = b + h * k3b
    k4a = u1 * (ta + c1 * tb)
    k4b = -u1 * (e1 * ta + tb)
    return (
        a + (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a),
        b + (h / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b),
    )


def rk4_coupled(u, e2, h):
    """Propagator of plane-wave amplitudes in the interaction picture; 4-tuple."""
    us = [complex(v) for v in u]
    es = [complex(v) for v in e2]
    nsteps = (len(us) - 1) // 2
    a1, b1, a2, b2 = 1 + 0j, 0j, 0j, 1 + 0j
    for j in range(nsteps):
        coeffs = (us[2 * j], us[2 * j + 1], us[2 * j + 2], es[2 * j], es[2 * j + 1], es[2 * j + 2], h)
        a1, b1 = _coupled_step(a1, b1, *coeffs)
        a2, b2 = _coupled_step(a2, b2, *coeffs)
    return (a1, a2, b1, b2)
