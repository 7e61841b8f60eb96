"""Reflection and transmission of a finite grating under E'' + k^2 (n/n_bg)^2 E = 0.

The grating fills [0, L] with an integer number of periods; outside it the
index is the background. Plane waves are referenced globally: left
incidence is e^{ikz} + r_left e^{-ikz} for z < 0 and t e^{ikz} for z > L;
right incidence is e^{-ikz} + r_right e^{ikz} for z > L and t e^{-ikz}
for z < 0. With this reference a bare background gives t = 1, r = 0.

Integration is fixed-step RK4 on the plane-wave amplitudes (a, b) of
E = a e^{ikz} + b e^{-ikz}, with free propagation factored out, so the
background alone is propagated exactly at any length. The 2x2 transfer
matrix of (E, E') follows from the amplitude propagator; its determinant
is the Wronskian and must stay at 1.
"""

from dataclasses import dataclass, replace
import math

import numpy as np

from .errors import DegenerateTransferMatrix, InputError, NonPositiveWavenumber
from .kernels import rk4_coupled
from .profiles import Grid

DET_TOL = 1e-6
MIN_STEPS_PER_PERIOD = 64


@dataclass(frozen=True)
class GratingSpec:
    profile: object
    periods: int
    k: float
    integrator_steps_per_period: int = 256

    def __post_init__(self):
        if int(self.periods) != self.periods or self.periods < 1:
            raise InputError(f"periods must be a positive integer, got {self.periods!r}")
        if not (self.k > 0 and math.isfinite(self.k)):
            raise NonPositiveWavenumber(f"k must be > 0, got {self.k!r}")
        if self.integrator_steps_per_period < MIN_STEPS_PER_PERIOD:
            raise InputError(
                f"integrator_steps_per_period must be >= {MIN_STEPS_PER_PERIOD}, "
                f"got {self.integrator_steps_per_period}"
            )

    @property
    def length(self):
        return self.periods * self.profile.period

    @property
    def nsteps(self):
        return self.periods * self.integrator_steps_per_period

    def sample_nodes(self):
        """RK4 nodes and midpoints on [0, L]."""
        return Grid(0.0, self.length, 2 * self.nsteps + 1).nodes()

    def q_samples(self):
        """k^2 (n/n_bg)^2 at the RK4 nodes and midpoints."""
        ratio = self.profile(self.sample_nodes()) / self.profile.background
        return self.k**2 * ratio * ratio


@dataclass(frozen=True)
class ScatteringResult:
    k: float
    r_left: complex
    r_right: complex
    t: complex
    determinant: complex

    @property
    def R_left(self):
        return abs(self.r_left) ** 2

    @property
    def R_right(self):
        return abs(self.r_right) ** 2

    @property
    def T(self):
        return abs(self.t) ** 2


def _free_basis(k, z):
    """Columns e^{ikz}, e^{-ikz} as (E, E') vectors."""
    e = np.exp(1j * k * z)
    return np.array([[e, 1 / e], [1j * k * e, -1j * k / e]])


def amplitude_propagator(g):
    """Map of (a, b) from z = 0 to z = L."""
    z = g.sample_nodes()
    delta = g.q_samples() - g.k**2
    return rk4_coupled(0.5j * delta / g.k, np.exp(2j * g.k * z), g.length / g.nsteps)


def transfer_matrix(g):
    """(E, E') transfer matrix across the grating."""
    P = amplitude_propagator(g)
    return _free_basis(g.k, g.length) @ P @ np.linalg.inv(_free_basis(g.k, 0.0))


def amplitudes_from_transfer(M, k, length):
    """(r_left, r_right, t) from the (E, E') transfer matrix over [0, length].

    Converts M to the map of plane-wave coefficients (a, b) of
    a e^{ikz} + b e^{-ikz} from z = 0 to z = length.
    """
    c0 = np.array([[1, 1], [1j * k, -1j * k]])
    phase = np.array([np.exp(-1j * k * length), np.exp(1j * k * length)])
    T = (phase[:, None] * np.linalg.solve(c0, M)) @ c0
    return _amplitudes(T)


def _amplitudes(P):
    t = 1 / P[1, 1]
    return -P[1, 0] * t, P[0, 1] * t, t


def solve_scattering(g):
    P = amplitude_propagator(g)
    # similarity to the (E, E') transfer matrix preserves the determinant
    det = complex(P[0, 0] * P[1, 1] - P[0, 1] * P[1, 0])
    if not (np.all(np.isfinite(P)) and abs(det - 1) <= DET_TOL):
        raise DegenerateTransferMatrix(
            f"det(M) = {det:.12g} deviates from 1 by {abs(det - 1):.3e} "
            f"(k = {g.k}, {g.integrator_steps_per_period} steps/period)"
        )
    r_left, r_right, t = _amplitudes(P)
    return ScatteringResult(g.k, complex(r_left), complex(r_right), complex(t), det)


def detuning_sweep(g, k_values):
    """solve_scattering at each k, in input order."""
    results = []
    for i, k in enumerate(k_values):
        try:
            results.append(solve_scattering(replace(g, k=k)))
        except (InputError, DegenerateTransferMatrix) as exc:
            raise type(exc)(f"sweep point {i} (k = {k!r}): {exc}") from exc
    return results


def convergence_order(g, levels=4, quantity="r_right"):
    """Observed integrator order from successive step doublings.

    Uses differences of a complex amplitude between levels, so no reference
    solution is needed: order = log2(|d_i| / |d_{i+1}|), least squares over
    the ladder.
    """
    steps = [g.integrator_steps_per_period * 2**i for i in range(levels)]
    vals = [
        getattr(solve_scattering(replace(g, integrator_steps_per_period=s)), quantity)
        for s in steps
    ]
    diffs = np.abs(np.diff(vals))
    h = np.array([g.profile.period / s for s in steps[:-1]])
    return float(np.polyfit(np.log(h), np.log(diffs), 1)[0])
