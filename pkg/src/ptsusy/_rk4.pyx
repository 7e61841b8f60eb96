# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled fixed-step RK4 kernels for y'' + q(z) y = 0 with complex q.

Coefficients are sampled at nodes and midpoints: ``q[2*j]`` at ``z_j`` and
``q[2*j + 1]`` at ``z_j + h/2``, so ``len(q) == 2*nsteps + 1``.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline void _step(double complex *y, double complex *p,
                       double complex q0, double complex qm, double complex q1,
                       double h) noexcept nogil:
    cdef double complex y0 = y[0]
    cdef double complex p0 = p[0]
    cdef double half = 0.5 * h
    cdef double complex k1y = p0
    cdef double complex k1p = -q0 * y0
    cdef double complex k2y = p0 + half * k1p
    cdef double complex k2p = -qm * (y0 + half * k1y)
    cdef double complex k3y = p0 + half * k2p
    cdef double complex k3p = -qm * (y0 + half * k2y)
    cdef double complex k4y = p0 + h * k3p
    cdef double complex k4p = -q1 * (y0 + h * k3y)
    y[0] = y0 + (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
    p[0] = p0 + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)


def rk4_transfer(const double complex[::1] q, double h):
    """Propagate the canonical solutions (1, 0) and (0, 1); return M as a 4-tuple."""
    cdef Py_ssize_t nsteps = (q.shape[0] - 1) // 2
    cdef Py_ssize_t j
    cdef double complex y1 = 1.0, p1 = 0.0, y2 = 0.0, p2 = 1.0
    cdef double complex q0, qm, q1
    with nogil:
        for j in range(nsteps):
            q0 = q[2 * j]
            qm = q[2 * j + 1]
            q1 = q[2 * j + 2]
            _step(&y1, &p1, q0, qm, q1, h)
            _step(&y2, &p2, q0, qm, q1, h)
    return (y1, y2, p1, p2)


def rk4_trajectory(const double complex[::1] q, double h,
                   double complex y0, double complex dy0):
    """Integrate from (y0, dy0); return (y, dy) at every node."""
    cdef Py_ssize_t nsteps = (q.shape[0] - 1) // 2
    cdef Py_ssize_t j
    ys = np.empty(nsteps + 1, dtype=np.complex128)
    ps = np.empty(nsteps + 1, dtype=np.complex128)
    cdef double complex[::1] yv = ys
    cdef double complex[::1] pv = ps
    cdef double complex y = y0, p = dy0
    yv[0] = y
    pv[0] = p
    with nogil:
        for j in range(nsteps):
            _step(&y, &p, q[2 * j], q[2 * j + 1], q[2 * j + 2], h)
            yv[j + 1] = y
            pv[j + 1] = p
    return ys, ps


cdef inline void _coupled_step(double complex *a, double complex *b,
                               double complex u0, double complex um, double complex u1,
                               double complex e0, double complex em, double complex e1,
                               double h) noexcept nogil:
    # (a, b)' = u [[1, 1/e], [-e, -1]] (a, b), |e| = 1
    cdef double complex a0 = a[0]
    cdef double complex b0 = b[0]
    cdef double half = 0.5 * h
    cdef double complex c0 = e0.conjugate()
    cdef double complex cm = em.conjugate()
    cdef double complex c1 = e1.conjugate()
    cdef double complex k1a = u0 * (a0 + c0 * b0)
    cdef double complex k1b = -u0 * (e0 * a0 + b0)
    cdef double complex ta = a0 + half * k1a
    cdef double complex tb = b0 + half * k1b
    cdef double complex k2a = um * (ta + cm * tb)
    cdef double complex k2b = -um * (em * ta + tb)
    ta = a0 + half * k2a
    tb = b0 + half * k2b
    cdef double complex k3a = um * (ta + cm * tb)
    cdef double complex k3b = -um * (em * ta + tb)
    ta = a0 + h * k3a
    tb = b0 + h * k3b
    cdef double complex k4a = u1 * (ta + c1 * tb)
    cdef double complex k4b = -u1 * (e1 * ta + tb)
    a[0] = a0 + (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
    b[0] = b0 + (h / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)


def rk4_coupled(const double complex[::1] u, const double complex[::1] e2, double h):
    """Propagator of plane-wave amplitudes in the interaction picture; 4-tuple."""
    cdef Py_ssize_t nsteps = (u.shape[0] - 1) // 2
    cdef Py_ssize_t j
    cdef double complex a1 = 1.0, b1 = 0.0, a2 = 0.0, b2 = 1.0
    with nogil:
        for j in range(nsteps):
            _coupled_step(&a1, &b1, u[2 * j], u[2 * j + 1], u[2 * j + 2],
                          e2[2 * j], e2[2 * j + 1], e2[2 * j + 2], h)
            _coupled_step(&a2, &b2, u[2 * j], u[2 * j + 1], u[2 * j + 2],
                          e2[2 * j], e2[2 * j + 1], e2[2 * j + 2], h)
    return (a1, a2, b1, b2)
