"""Backend selection for the RK4 hot loops.

The compiled ``_rk4`` extension is used when it imports; otherwise the
pure-Python module with the same interface. Set ``PTSUSY_PURE_PYTHON=1``
to force the fallback.
"""

import os

import numpy as np

from . import _rk4_py

if os.environ.get("PTSUSY_PURE_PYTHON", "") not in ("", "0"):
    _impl = _rk4_py
    BACKEND = "python"
else:
    try:
        from . import _rk4 as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _rk4_py
        BACKEND = "python"


def _as_q(q):
    q = np.ascontiguousarray(q, dtype=np.complex128)
    if q.ndim != 1 or q.size < 3 or q.size % 2 == 0:
        raise ValueError("q must hold 2*nsteps + 1 samples (nodes and midpoints)")
    return q


def rk4_transfer(q, h, impl=None):
    """Transfer matrix of y'' + q y = 0 across the sampled interval.

    Returns a 2x2 complex array mapping (y, y') at the left end to the
    right end.
    """
    m11, m12, m21, m22 = (impl or _impl).rk4_transfer(_as_q(q), float(h))
    return np.array([[m11, m12], [m21, m22]], dtype=np.complex128)


def rk4_trajectory(q, h, y0, dy0, impl=None):
    """Solution (y, y') of y'' + q y = 0 at every node."""
    return (impl or _impl).rk4_trajectory(_as_q(q), float(h), complex(y0), complex(dy0))


def rk4_coupled(u, e2, h, impl=None):
    """Amplitude propagator of (a, b)' = u [[1, 1/e2], [-e2, -1]] (a, b).

    With E = a e^{ikz} + b e^{-ikz}, u = i (q - k^2) / 2k and e2 = e^{2ikz}
    this is E'' + q E = 0 with free propagation factored out, so a
    background-only medium gives the identity exactly.
    """
    u, e2 = _as_q(u), _as_q(e2)
    if u.shape != e2.shape:
        raise ValueError("u and e2 must have the same length")
    t11, t12, t21, t22 = (impl or _impl).rk4_coupled(u, e2, float(h))
    return np.array([[t11, t12], [t21, t22]], dtype=np.complex128)
