"""Grid verification of the SUSY operator identities.

With O = d/dz + W and O^dagger = -d/dz + W (no conjugation),

    H(+) = O O^dagger = -d2 + V(+) - lambda
    H(-) = O^dagger O = -d2 + V(-) - lambda

so O psi0 = 0 gives H(-) psi0 = 0 and O H(-) = H(+) O. Every identity is
checked with finite-difference operators of order 2 or 4 and summarised
by a log-log convergence fit over a ladder of refined grids.

Boundaries: ``"periodic"`` wraps a closed grid whose last node repeats the
first; ``"dirichlet"`` assumes nothing outside the window and switches to
one-sided stencils of the same order in the boundary layer. Residual norms
always drop ``stencil_order`` nodes at each end.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import GridMismatch, InputError
from .kernels import rk4_trajectory
from .profiles import ComplexField, Grid
from .susy_core import ResidualReport, riccati_combination

BOUNDARIES = ("dirichlet", "periodic")
ORDER_WINDOW = 0.3


def fd_weights(offsets, deriv):
    """Finite-difference weights for the ``deriv``-th derivative on integer offsets.

    Solves the moment conditions sum_j w_j o_j^m / m! = delta(m, deriv).
    """
    offsets = np.asarray(offsets, dtype=float)
    n = offsets.size
    if deriv >= n:
        raise InputError("need more stencil points than the derivative order")
    A = np.vander(offsets, n, increasing=True).T
    b = np.zeros(n)
    b[deriv] = math.factorial(deriv)
    return np.linalg.solve(A, b)


def _check_order(stencil_order):
    if stencil_order not in (2, 4):
        raise InputError(f"stencil_order must be 2 or 4, got {stencil_order!r}")


# central weights by half-offset 1, 2, ...; first derivatives are antisymmetric
_CENTRAL = {
    (1, 2): (0.0, (0.5,)),
    (1, 4): (0.0, (2.0 / 3.0, -1.0 / 12.0)),
    (2, 2): (-2.0, (1.0,)),
    (2, 4): (-2.5, (4.0 / 3.0, -1.0 / 12.0)),
}


def _central(f, deriv, stencil_order, periodic):
    centre, weights = _CENTRAL[deriv, stencil_order]
    sign = -1.0 if deriv == 1 else 1.0
    if periodic:
        out = centre * f
        for o, w in enumerate(weights, start=1):
            out = out + w * (np.roll(f, -o) + sign * np.roll(f, o))
        return out
    n, half = f.size, len(weights)
    mid = f[half : n - half]
    out = centre * mid
    for o, w in enumerate(weights, start=1):
        out = out + w * (f[half + o : n - half + o] + sign * f[half - o : n - half - o])
    return out


def derivative(values, h, deriv, stencil_order=2, boundary="dirichlet"):
    """First or second derivative of nodal values with accuracy O(h^stencil_order)."""
    _check_order(stencil_order)
    if deriv not in (1, 2):
        raise InputError("only first and second derivatives are supported")
    if boundary not in BOUNDARIES:
        raise InputError(f"boundary must be one of {BOUNDARIES}, got {boundary!r}")
    f = np.asarray(values, dtype=np.complex128)
    n = f.size
    scale = h**deriv

    if boundary == "periodic":
        out = _central(f[:-1], deriv, stencil_order, periodic=True) / scale
        return np.append(out, out[0])

    half = stencil_order // 2
    width = stencil_order + deriv
    if n < width + 1:
        raise InputError(f"grid too small for a {width}-point one-sided stencil")
    out = np.empty_like(f)
    out[half : n - half] = _central(f, deriv, stencil_order, periodic=False) / scale
    for i in range(half):
        offs = np.arange(-i, -i + width)
        out[i] = fd_weights(offs, deriv) @ f[i + offs] / scale
        j = n - 1 - i
        out[j] = fd_weights(-offs, deriv) @ f[j - offs] / scale
    return out


@dataclass(frozen=True)
class DiscreteOperatorSpec:
    """-D2 + diag(V) - lambda on ``grid``."""

    grid: Grid
    potential: ComplexField
    lam: float = 0.0
    stencil_order: int = 2
    boundary: str = "dirichlet"

    def __post_init__(self):
        _check_order(self.stencil_order)
        if self.boundary not in BOUNDARIES:
            raise InputError(f"boundary must be one of {BOUNDARIES}")
        if self.potential.grid != self.grid:
            raise GridMismatch("potential is sampled on a different grid")
        if self.boundary == "periodic":
            gap = abs(self.potential.values[0] - self.potential.values[-1])
            if gap > 1e-10:
                raise InputError(f"periodic boundary needs V(z_start) = V(z_end); gap {gap:.3e}")


@dataclass(frozen=True)
class ConvergenceReport:
    spacings: tuple
    residual_norms: tuple
    estimated_order: float

    def order_ok(self, target, window=ORDER_WINDOW):
        return abs(self.estimated_order - target) <= window

    @property
    def finest(self):
        return self.residual_norms[-1]

    @property
    def exact(self):
        return all(r == 0.0 for r in self.residual_norms)


def estimate_order(spacings, norms):
    """Least-squares slope of log(norm) against log(h).

    Returns inf when every level is exactly zero and nan when only some are.
    """
    h = np.asarray(spacings, dtype=float)
    r = np.asarray(norms, dtype=float)
    if len(h) < 2 or np.any(np.diff(h) >= 0):
        raise InputError("spacings must be strictly decreasing with at least two levels")
    if np.all(r == 0):
        return math.inf
    if np.any(r <= 0):
        return math.nan
    return float(np.polyfit(np.log(h), np.log(r), 1)[0])


def _convergence(grids, norms):
    spacings = tuple(g.spacing for g in grids)
    return ConvergenceReport(spacings, tuple(norms), estimate_order(spacings, norms))


def _interior(values, stencil_order):
    return values[stencil_order:-stencil_order]


def _interior_report(grid, residual, stencil_order, tolerance=math.inf):
    layer = stencil_order
    return ResidualReport.from_residual(
        grid.nodes()[layer:-layer], _interior(residual, layer), tolerance
    )


def _same_grid(*fields):
    grids = {f.grid for f in fields}
    if len(grids) != 1:
        raise GridMismatch("fields are sampled on different grids")
    return grids.pop()


def apply_hamiltonian(spec, psi):
    """(-D2 + diag(V) - lambda) psi."""
    if psi.grid != spec.grid:
        raise GridMismatch("psi is sampled on a different grid than the operator")
    d2 = derivative(psi.values, spec.grid.spacing, 2, spec.stencil_order, spec.boundary)
    v = spec.potential.values - spec.lam
    return ComplexField(spec.grid, -d2 + v * psi.values)


def apply_O(w, psi, stencil_order=2, boundary="dirichlet", adjoint=False):
    """(D + W) psi, or (-D + W) psi when ``adjoint``."""
    d = derivative(psi.values, psi.grid.spacing, 1, stencil_order, boundary)
    wz = w(psi.grid.nodes())
    return ComplexField(psi.grid, (-d if adjoint else d) + wz * psi.values)


def apply_factorized(w, psi, sign, stencil_order=2, boundary="dirichlet"):
    """O O^dagger psi for sign=+1, O^dagger O psi for sign=-1, as composed first-order stencils."""
    if sign > 0:
        inner = apply_O(w, psi, stencil_order, boundary, adjoint=True)
        return apply_O(w, inner, stencil_order, boundary)
    inner = apply_O(w, psi, stencil_order, boundary)
    return apply_O(w, inner, stencil_order, boundary, adjoint=True)


def ground_state(w, grid):
    """psi0(z) = exp(-int_{z_start}^z W dt), normalised to psi0(z_start) = 1."""
    z = grid.nodes()
    return ComplexField(grid, np.exp(-(w.antiderivative(z) - w.antiderivative(grid.z_start))))


def annihilation_residual(w, grids, stencil_order=2, boundary="dirichlet"):
    """max |(D + W) psi0| over the interior of each grid level."""
    norms = []
    for grid in grids:
        res = apply_O(w, ground_state(w, grid), stencil_order, boundary).values
        norms.append(float(np.max(np.abs(_interior(res, stencil_order)))))
    return _convergence(grids, norms)


def hamiltonian_pair(w, grid, lam=0.0, stencil_order=2, boundary="dirichlet"):
    """Operator specs for H(+) and H(-) built from W on ``grid``."""
    z = grid.nodes()
    return tuple(
        DiscreteOperatorSpec(
            grid,
            ComplexField(grid, riccati_combination(w, z, s) + lam),
            lam,
            stencil_order,
            boundary,
        )
        for s in (+1, -1)
    )


def intertwining_defect(v_plus, v_minus, w, psi, stencil_order=2, lam=0.0, boundary="dirichlet"):
    """(O H(-) - H(+) O) psi on one grid, boundary layer excluded."""
    grid = _same_grid(v_plus, v_minus, psi)
    h_plus = DiscreteOperatorSpec(grid, v_plus, lam, stencil_order, boundary)
    h_minus = DiscreteOperatorSpec(grid, v_minus, lam, stencil_order, boundary)
    left = apply_O(w, apply_hamiltonian(h_minus, psi), stencil_order, boundary)
    right = apply_hamiltonian(h_plus, apply_O(w, psi, stencil_order, boundary))
    return _interior_report(grid, left.values - right.values, stencil_order)


def intertwining_residual(
    w, grids, test_psi, stencil_order=2, lam=0.0, boundary="dirichlet", potential_source=None
):
    """Intertwining defect across grid levels.

    ``test_psi`` is a callable z -> psi(z). V(+/-) are built from
    ``potential_source`` (default ``w``); passing a different superpotential
    gives the mismatched case, whose defect plateaus instead of converging.
    """
    source = potential_source or w
    norms = []
    for grid in grids:
        h_plus, h_minus = hamiltonian_pair(source, grid, lam, stencil_order, boundary)
        psi = ComplexField(grid, test_psi(grid.nodes()))
        rep = intertwining_defect(
            h_plus.potential, h_minus.potential, w, psi, stencil_order, lam, boundary
        )
        norms.append(rep.max_abs_residual)
    return _convergence(grids, norms)


def random_trig_polynomial(rng, degree=3, scale=1.0):
    """Smooth complex test function sum_j c_j exp(i j scale z), j = -degree..degree."""
    coeffs = (rng.standard_normal(2 * degree + 1) + 1j * rng.standard_normal(2 * degree + 1)) / (
        2 * degree + 1
    )
    freqs = scale * np.arange(-degree, degree + 1)

    def psi(z):
        z = np.asarray(z, dtype=float)
        return np.exp(1j * np.multiply.outer(z, freqs)) @ coeffs

    return psi


def eigen_residual(spec, psi, energy):
    """max |(H - E) psi| over the interior."""
    res = apply_hamiltonian(spec, psi).values - energy * psi.values
    return _interior_report(spec.grid, res, spec.stencil_order)


def susy_map_solution(w, psi_minus, stencil_order=2, boundary="dirichlet", psi_prime=None):
    """O psi = psi' + W psi; carries an H(-) solution at energy E to an H(+) solution at E.

    ``psi_prime`` supplies psi' when it is known (e.g. from the ODE
    integrator); otherwise it is taken by finite differences, whose own
    truncation error then adds to the mapped residual.
    """
    if psi_prime is None:
        return apply_O(w, psi_minus, stencil_order, boundary)
    if psi_prime.grid != psi_minus.grid:
        raise GridMismatch("psi' is sampled on a different grid than psi")
    wz = w(psi_minus.grid.nodes())
    return ComplexField(psi_minus.grid, psi_prime.values + wz * psi_minus.values)


def integrate_eigenfunction(w, sign, energy, grid, substeps=4, y0=1.0, dy0=0.0):
    """Solve H(sign) psi = E psi as an initial-value problem with fixed-step RK4.

    psi'' + (E - W^2 -/+ W') psi = 0 is integrated with ``substeps`` RK4
    steps per grid interval; lambda cancels between V and H so it never
    enters. Returns (psi, psi') on ``grid``.
    """
    if substeps < 1:
        raise InputError("substeps must be >= 1")
    nsteps = (grid.count - 1) * substeps
    hs = grid.spacing / substeps
    zq = Grid(grid.z_start, grid.z_end, 2 * nsteps + 1).nodes()
    q = energy - riccati_combination(w, zq, sign)
    ys, ps = rk4_trajectory(q, hs, y0, dy0)
    return ComplexField(grid, ys[::substeps]), ComplexField(grid, ps[::substeps])
