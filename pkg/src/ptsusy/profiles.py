"""Analytic complex refractive-index families and uniform grids.

Two PT-symmetric periodic families are supported:

* ``PlaneWaveProfile``  -- n(z) = n0 (1 + v0 exp(i beta z))
* ``SinusoidalProfile`` -- n(z) = eta0 + eta1 cos(2 beta z) + i eta2 sin(2 beta z)

Everything is dimensionless. Profiles are callables accepting scalars or
numpy arrays; scalar and array evaluation share one code path so sampled
values are bit-identical to pointwise evaluation.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class Grid:
    """Closed uniform grid on [z_start, z_end] with ``count`` nodes."""

    z_start: float
    z_end: float
    count: int

    def __post_init__(self):
        if not (math.isfinite(self.z_start) and math.isfinite(self.z_end)):
            raise InputError("grid bounds must be finite")
        if int(self.count) != self.count or self.count < 2:
            raise InputError(f"grid count must be an integer >= 2, got {self.count!r}")
        if not self.z_end > self.z_start:
            raise InputError(f"grid needs z_end > z_start, got [{self.z_start}, {self.z_end}]")

    @property
    def spacing(self):
        return (self.z_end - self.z_start) / (self.count - 1)

    def nodes(self):
        # weighted form keeps both endpoints exact and makes symmetric grids
        # exactly antisymmetric (z_j == -z_{n-1-j}), with an exact 0 at the centre
        j = np.arange(self.count, dtype=float)
        last = self.count - 1
        return (self.z_start * (last - j) + self.z_end * j) / last

    @property
    def is_symmetric(self):
        return abs(self.z_start + self.z_end) <= 1e-12 * max(1.0, abs(self.z_end))

    def refined(self, levels):
        """This grid followed by ``levels - 1`` successive halvings of h."""
        return [
            Grid(self.z_start, self.z_end, (self.count - 1) * 2**i + 1)
            for i in range(levels)
        ]

    @classmethod
    def symmetric(cls, half_width, count):
        return cls(-half_width, half_width, count)


@dataclass(frozen=True)
class ComplexField:
    """Complex samples on a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != (self.grid.count,):
            raise InputError(
                f"field has {values.shape} samples, grid expects ({self.grid.count},)"
            )
        if not np.all(np.isfinite(values)):
            raise InputError("field contains non-finite samples")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def z(self):
        return self.grid.nodes()

    def __len__(self):
        return self.grid.count

    def __add__(self, other):
        if isinstance(other, ComplexField):
            if other.grid != self.grid:
                raise InputError("fields live on different grids")
            other = other.values
        return ComplexField(self.grid, self.values + other)


@dataclass(frozen=True)
class PlaneWaveProfile:
    """Family A: n(z) = n0 (1 + v0 exp(i beta z))."""

    n0: float
    v0: float
    beta: float

    family = "A"

    def __post_init__(self):
        if not self.n0 > 0:
            raise InputError(f"n0 must be > 0, got {self.n0}")
        if self.beta == 0 or not math.isfinite(self.beta):
            raise InputError("beta must be finite and nonzero")
        if not math.isfinite(self.v0):
            raise InputError("v0 must be finite")

    @property
    def background(self):
        return self.n0

    @property
    def period(self):
        return 2 * math.pi / abs(self.beta)

    def perturbation(self, z):
        z = np.asarray(z, dtype=float)
        return self.v0 * np.exp(1j * (self.beta * z))

    def __call__(self, z):
        return self.n0 * (1 + self.perturbation(z))

    def partner(self, z):
        """n^-(z) = n0 (1 - v0 exp(i beta z))."""
        return self.n0 * (1 - self.perturbation(z))

    def max_perturbation(self):
        return abs(self.v0)


@dataclass(frozen=True)
class SinusoidalProfile:
    """Family B: n(z) = eta0 + eta1 cos(2 beta z) + i eta2 sin(2 beta z)."""

    eta0: float
    eta1: float
    eta2: float
    beta: float

    family = "B"

    def __post_init__(self):
        if not self.eta0 > 0:
            raise InputError(f"eta0 must be > 0, got {self.eta0}")
        if self.beta == 0 or not math.isfinite(self.beta):
            raise InputError("beta must be finite and nonzero")
        if not (math.isfinite(self.nu1) and math.isfinite(self.nu2)):
            raise InputError("eta1/eta0 and eta2/eta0 must be finite")

    @property
    def nu1(self):
        return self.eta1 / self.eta0

    @property
    def nu2(self):
        return self.eta2 / self.eta0

    @property
    def background(self):
        return self.eta0

    @property
    def period(self):
        return math.pi / abs(self.beta)

    def perturbation(self, z):
        """v(z) = nu1 cos(2 beta z) + i nu2 sin(2 beta z)."""
        z = np.asarray(z, dtype=float)
        arg = 2 * self.beta * z
        return self.nu1 * np.cos(arg) + 1j * (self.nu2 * np.sin(arg))

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        arg = 2 * self.beta * z
        return self.eta0 + self.eta1 * np.cos(arg) + 1j * (self.eta2 * np.sin(arg))

    def partner(self, z):
        """n^-(z) = eta0 (1 - nu1 cos(2 beta z) - i nu2 sin(2 beta z))."""
        z = np.asarray(z, dtype=float)
        arg = 2 * self.beta * z
        return self.eta0 - self.eta1 * np.cos(arg) - 1j * (self.eta2 * np.sin(arg))

    def max_perturbation(self):
        return max(abs(self.nu1), abs(self.nu2))


def eval_plane_wave(p, z):
    return complex(p(z))


def eval_sinusoidal(p, z):
    return complex(p(z))


def sample(profile, grid):
    """Evaluate ``profile`` (any callable z -> n) at every node of ``grid``."""
    if not isinstance(grid, Grid):
        raise InputError("sample() needs a Grid")
    return ComplexField(grid, profile(grid.nodes()))


def perturbation_warning(profile, threshold=1.0):
    """Message when max|v| >= threshold, else None."""
    vmax = profile.max_perturbation()
    if vmax >= threshold:
        return (
            f"perturbation is not small: max|v| = {vmax:g} >= {threshold:g} "
            "(closed forms still hold; the small-index-contrast picture does not)"
        )
    return None
