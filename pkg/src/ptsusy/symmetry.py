"""Parity, time reversal and the PT condition n(z) = conj(n(-z)) on the z axis."""

from dataclasses import dataclass

import numpy as np

from .errors import AsymmetricGrid, InputError
from .profiles import ComplexField, Grid

PT_TOL = 1e-10


@dataclass(frozen=True)
class SymmetryReport:
    max_violation: float
    tested_points: int
    tolerance: float = PT_TOL

    @property
    def is_pt_symmetric(self):
        return self.max_violation <= self.tolerance


def parity_reflect(field):
    """z -> -z on a grid symmetric about the origin."""
    if not field.grid.is_symmetric:
        raise AsymmetricGrid(
            f"parity needs z_start = -z_end, got [{field.grid.z_start}, {field.grid.z_end}]"
        )
    return ComplexField(field.grid, field.values[::-1])


def time_reverse(field):
    return ComplexField(field.grid, np.conj(field.values))


def pt_transform(field):
    return time_reverse(parity_reflect(field))


def pt_violation(field, tolerance=PT_TOL):
    """max |n(z) - conj(n(-z))| for sampled data on a symmetric grid."""
    diff = field.values - pt_transform(field).values
    return SymmetryReport(float(np.max(np.abs(diff))), field.grid.count, tolerance)


def pt_check_analytic(profile, half_width, count, tolerance=PT_TOL):
    """PT check of any callable z -> n(z) on [-half_width, half_width].

    Evaluates n at -z directly rather than reusing samples, so the check is
    independent of grid reflection.
    """
    if not half_width > 0:
        raise InputError("half_width must be > 0")
    z = Grid.symmetric(half_width, count).nodes()
    diff = np.asarray(profile(z)) - np.conj(np.asarray(profile(-z)))
    return SymmetryReport(float(np.max(np.abs(diff))), int(count), tolerance)
