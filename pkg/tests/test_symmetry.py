import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ptsusy.errors import AsymmetricGrid
from ptsusy.profiles import ComplexField, Grid, PlaneWaveProfile, SinusoidalProfile, sample
from ptsusy.symmetry import (
    parity_reflect,
    pt_check_analytic,
    pt_transform,
    pt_violation,
    time_reverse,
)

A10 = PlaneWaveProfile(1, 10, 2)
B42 = SinusoidalProfile(1, 4, 2, 1)


@pytest.mark.parametrize("p", [A10, B42])
def test_reference_families_are_pt_symmetric(p):
    rep = pt_check_analytic(p, 5 * p.period, 1001)
    assert rep.is_pt_symmetric
    assert rep.max_violation <= 1e-12
    assert rep.tested_points == 1001


def test_constant_imaginary_offset_breaks_pt():
    rep = pt_check_analytic(lambda z: A10(z) + 0.1j, 5.0, 201)
    assert rep.max_violation == pytest.approx(0.2, abs=1e-12)
    assert not rep.is_pt_symmetric


def test_parity_reflect_reverses():
    f = ComplexField(Grid(-1, 1, 3), [1 + 1j, 2, 3 - 1j])
    assert list(parity_reflect(f).values) == [3 - 1j, 2, 1 + 1j]


def test_parity_of_even_real_field():
    g = Grid.symmetric(2, 41)
    f = ComplexField(g, np.cos(g.nodes()))
    assert np.array_equal(parity_reflect(f).values, f.values)


def test_parity_needs_symmetric_grid():
    with pytest.raises(AsymmetricGrid):
        parity_reflect(ComplexField(Grid(0, 1, 3), [1, 2, 3]))


def test_time_reverse():
    g = Grid(0, 1, 2)
    assert time_reverse(ComplexField(g, [1 + 1j, 2])).values[0] == 1 - 1j
    real = ComplexField(g, [0.5, -2.0])
    assert np.array_equal(time_reverse(real).values, real.values)


def test_sampled_family_A_pt_on_grid():
    f = sample(PlaneWaveProfile(1, 1, 2), Grid.symmetric(math.pi, 401))
    assert np.max(np.abs(time_reverse(parity_reflect(f)).values - f.values)) <= 1e-12
    assert pt_violation(f).is_pt_symmetric


@settings(max_examples=30, deadline=None)
@given(re=st.lists(st.floats(-5, 5), min_size=9, max_size=9),
       im=st.lists(st.floats(-5, 5), min_size=9, max_size=9))
def test_involutions(re, im):
    f = ComplexField(Grid.symmetric(1, 9), np.array(re) + 1j * np.array(im))
    assert np.array_equal(time_reverse(time_reverse(f)).values, f.values)
    assert np.array_equal(pt_transform(pt_transform(f)).values, f.values)


@settings(max_examples=30, deadline=None)
@given(n0=st.floats(0.5, 3), v0=st.floats(-10, 10), eta1=st.floats(-10, 10),
       eta2=st.floats(-10, 10), beta=st.floats(0.5, 5))
def test_families_and_partners_pt_for_real_parameters(n0, v0, eta1, eta2, beta):
    for p in (PlaneWaveProfile(n0, v0, beta), SinusoidalProfile(n0, eta1, eta2, beta)):
        for fn in (p, p.partner):
            assert pt_check_analytic(fn, 5 * p.period, 801).max_violation <= 1e-12
