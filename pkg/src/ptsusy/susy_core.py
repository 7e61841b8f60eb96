"""Closed-form complex superpotentials and SUSY partner potentials/indices.

The superpotential W = f + i g of both families has the shape

    f(z) = a_f sin(m beta z),   g(z) = a_g cos(m beta z)

with m = 1 (plane wave) or m = 2 (sinusoidal grating). Partner potentials
follow the Riccati form V(+/-) = W^2 +/- W' + lambda, and the index
profiles obey

    k^2 (n(+/-)/n0)^2 = epsilon - lambda - (W^2 +/- W').

The upper sign (W^2 + W') belongs to n+ for both families.
"""

from dataclasses import dataclass, replace
import math

import numpy as np

from .errors import EnergyMismatch, InputError, MatchingConditionViolated
from .profiles import ComplexField, Grid, PlaneWaveProfile, SinusoidalProfile

MATCH_RTOL = 1e-12
IDENTITY_TOL = 1e-10
SAMPLING_TOL = 1e-12

_HARMONIC = {"A": 1, "B": 2}


@dataclass(frozen=True)
class SusyParams:
    k: float
    epsilon: float
    lam: float

    def __post_init__(self):
        if self.k == 0 or not math.isfinite(self.k):
            raise InputError("k must be finite and nonzero")
        if not (math.isfinite(self.epsilon) and math.isfinite(self.lam)):
            raise InputError("epsilon and lambda must be finite")

    @classmethod
    def matched(cls, profile, k=None, lam=0.0):
        """Complete a matched parameter set from the profile's beta.

        k defaults to beta/2 (plane wave) or beta (sinusoidal); epsilon is
        fixed by the family's energy relation.
        """
        if k is None:
            k = profile.beta * _HARMONIC[profile.family] / 2
        return cls(k=k, epsilon=lam + _energy_gap(profile, k), lam=lam)


def _energy_gap(profile, k):
    """epsilon - lambda required by the matching conditions."""
    if profile.family == "A":
        return k * k
    return k * k * (1 + profile.nu1**2 - profile.nu2**2)


@dataclass(frozen=True)
class Superpotential:
    """W(z) = f_amplitude sin(m beta z) + i g_amplitude cos(m beta z)."""

    family: str
    f_amplitude: float
    g_amplitude: float
    beta: float

    def __post_init__(self):
        if self.family not in _HARMONIC:
            raise InputError(f"unknown family {self.family!r}")

    @property
    def harmonic(self):
        return _HARMONIC[self.family]

    @property
    def wavenumber(self):
        return self.harmonic * self.beta

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        arg = self.wavenumber * z
        return self.f_amplitude * np.sin(arg) + 1j * (self.g_amplitude * np.cos(arg))

    def derivative(self, z):
        z = np.asarray(z, dtype=float)
        q = self.wavenumber
        arg = q * z
        return q * (self.f_amplitude * np.cos(arg) - 1j * (self.g_amplitude * np.sin(arg)))

    def antiderivative(self, z):
        """A primitive of W; its additive constant is irrelevant to callers."""
        z = np.asarray(z, dtype=float)
        q = self.wavenumber
        arg = q * z
        return (-self.f_amplitude * np.cos(arg) + 1j * (self.g_amplitude * np.sin(arg))) / q

    def negated(self):
        return replace(self, f_amplitude=-self.f_amplitude, g_amplitude=-self.g_amplitude)

    def scaled(self, factor):
        return replace(
            self,
            f_amplitude=factor * self.f_amplitude,
            g_amplitude=factor * self.g_amplitude,
        )


@dataclass(frozen=True)
class PartnerSet:
    n_plus: ComplexField
    n_minus: ComplexField
    v_plus: ComplexField
    v_minus: ComplexField
    params: SusyParams
    n0: float

    def __post_init__(self):
        grids = {f.grid for f in (self.n_plus, self.n_minus, self.v_plus, self.v_minus)}
        if len(grids) != 1:
            raise InputError("partner fields must share one grid")

    @property
    def grid(self):
        return self.n_plus.grid


@dataclass(frozen=True)
class ResidualReport:
    max_abs_residual: float
    rms_residual: float
    location_of_max: float
    tolerance: float

    @property
    def passed(self):
        return self.max_abs_residual <= self.tolerance

    @classmethod
    def from_residual(cls, z, residual, tolerance):
        mag = np.abs(np.asarray(residual))
        i = int(np.argmax(mag))
        return cls(
            max_abs_residual=float(mag[i]),
            rms_residual=float(np.sqrt(np.mean(mag**2))),
            location_of_max=float(np.asarray(z)[i]),
            tolerance=tolerance,
        )


def _check_close(actual, expected, scale, exc, what):
    err = abs(actual - expected)
    if err > MATCH_RTOL * max(scale, 1e-300):
        raise exc(f"{what}: got {actual!r}, need {expected!r} (|diff| = {err:.3e})")


def _check_branch(profile, sp):
    # |beta| = 2|k| (plane wave) or |k| (sinusoidal)
    need = 2 * abs(sp.k) / _HARMONIC[profile.family]
    label = "beta = +/-2k" if profile.family == "A" else "beta = +/-k"
    _check_close(abs(profile.beta), need, need, MatchingConditionViolated, label)


def _check_energy(profile, sp):
    gap = _energy_gap(profile, sp.k)
    if profile.family == "A":
        scale, label = sp.k * sp.k, "k^2 = epsilon - lambda"
    else:
        scale = sp.k * sp.k * (1 + profile.nu1**2 + profile.nu2**2)
        label = "epsilon - lambda = k^2 (1 + nu1^2 - nu2^2)"
    _check_close(sp.epsilon - sp.lam, gap, scale, EnergyMismatch, label)


def superpotential_for(profile):
    """The closed-form W for a profile's own beta, without parameter checks."""
    if isinstance(profile, PlaneWaveProfile):
        amp = profile.beta * profile.v0 / 2
        return Superpotential("A", -amp, amp, profile.beta)
    if isinstance(profile, SinusoidalProfile):
        return Superpotential(
            "B", -profile.nu1 * profile.beta, profile.nu2 * profile.beta, profile.beta
        )
    raise InputError(f"no closed-form superpotential for {type(profile).__name__}")


def build_superpotential_A(p, sp):
    """W = -(beta v0 / 2)(sin beta z - i cos beta z), requiring beta = +/-2k, k^2 = eps - lam."""
    if not isinstance(p, PlaneWaveProfile):
        raise InputError("family A needs a PlaneWaveProfile")
    _check_branch(p, sp)
    _check_energy(p, sp)
    return superpotential_for(p)


def build_superpotential_B(p, sp):
    """W = -nu1 beta sin 2 beta z + i nu2 beta cos 2 beta z, requiring beta = +/-k."""
    if not isinstance(p, SinusoidalProfile):
        raise InputError("family B needs a SinusoidalProfile")
    _check_branch(p, sp)
    _check_energy(p, sp)
    return superpotential_for(p)


def build_superpotential(profile, sp):
    if profile.family == "A":
        return build_superpotential_A(profile, sp)
    return build_superpotential_B(profile, sp)


def eval_W(w, z):
    return complex(w(z)), complex(w.derivative(z))


def riccati_combination(w, z, sign):
    """W^2 + sign * W'."""
    wz = w(z)
    return wz * wz + sign * w.derivative(z)


def partner_potentials(w, sp, grid):
    z = grid.nodes()
    return (
        ComplexField(grid, riccati_combination(w, z, +1) + sp.lam),
        ComplexField(grid, riccati_combination(w, z, -1) + sp.lam),
    )


def partner_index_minus(profile, sp, grid):
    build_superpotential(profile, sp)
    return ComplexField(grid, profile.partner(grid.nodes()))


def partner_set(profile, sp, grid):
    w = build_superpotential(profile, sp)
    v_plus, v_minus = partner_potentials(w, sp, grid)
    z = grid.nodes()
    return PartnerSet(
        n_plus=ComplexField(grid, profile(z)),
        n_minus=ComplexField(grid, profile.partner(z)),
        v_plus=v_plus,
        v_minus=v_minus,
        params=sp,
        n0=profile.background,
    )


def _sign_value(sign):
    if sign in ("+", +1):
        return +1
    if sign in ("-", -1):
        return -1
    raise InputError(f"sign must be '+' or '-', got {sign!r}")


def riccati_residual(profile, w, sp, sign, grid, tolerance=IDENTITY_TOL):
    """k^2 (n/n0)^2 - [epsilon - lambda - (W^2 +/- W')] over the grid."""
    s = _sign_value(sign)
    z = grid.nodes()
    n = profile(z) if s > 0 else profile.partner(z)
    ratio = n / profile.background
    lhs = sp.k**2 * ratio * ratio
    rhs = (sp.epsilon - sp.lam) - riccati_combination(w, z, s)
    return ResidualReport.from_residual(z, lhs - rhs, tolerance)


def partner_sum_check(ps, tolerance=SAMPLING_TOL):
    """n+ + n- - 2 n0 pointwise."""
    residual = ps.n_plus.values + ps.n_minus.values - 2 * ps.n0
    return ResidualReport.from_residual(ps.grid.nodes(), residual, tolerance)


def helmholtz_map_check(ps, tolerance=IDENTITY_TOL):
    """V+ against epsilon - k^2 (n+/n0)^2."""
    sp = ps.params
    ratio = ps.n_plus.values / ps.n0
    residual = ps.v_plus.values - (sp.epsilon - sp.k**2 * ratio * ratio)
    return ResidualReport.from_residual(ps.grid.nodes(), residual, tolerance)


def gamma_offset(profile):
    """The constant beta^2 v0^2 / 4 separating the printed V- of family A from W^2 - W' + lambda."""
    if not isinstance(profile, PlaneWaveProfile):
        raise InputError("the printed-form offset is defined for family A only")
    return profile.beta**2 * profile.v0**2 / 4
