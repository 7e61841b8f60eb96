import math

import numpy as np
import pytest
from scipy.integrate import quad, solve_ivp

from ptsusy.errors import GridMismatch, InputError
from ptsusy.profiles import ComplexField, Grid, PlaneWaveProfile, SinusoidalProfile
from ptsusy.spectral import (
    DiscreteOperatorSpec,
    annihilation_residual,
    apply_factorized,
    apply_hamiltonian,
    derivative,
    eigen_residual,
    estimate_order,
    fd_weights,
    ground_state,
    hamiltonian_pair,
    integrate_eigenfunction,
    intertwining_defect,
    intertwining_residual,
    random_trig_polynomial,
    susy_map_solution,
)
from ptsusy.susy_core import Superpotential, riccati_combination, superpotential_for

WA = superpotential_for(PlaneWaveProfile(1, 1, 2))
WB = superpotential_for(SinusoidalProfile(1, 4, 2, 1))
ZERO = Superpotential("A", 0.0, 0.0, 2.0)


def ladder(period, levels=4):
    return Grid(0, period, 101).refined(levels)


def test_fd_weights_reproduce_textbook_stencils():
    assert np.allclose(fd_weights([-1, 0, 1], 1), [-0.5, 0, 0.5])
    assert np.allclose(fd_weights([-1, 0, 1], 2), [1, -2, 1])
    assert np.allclose(fd_weights([-2, -1, 0, 1, 2], 2), [-1 / 12, 4 / 3, -5 / 2, 4 / 3, -1 / 12])
    assert np.allclose(fd_weights([0, 1, 2], 1), [-1.5, 2, -0.5])


@pytest.mark.parametrize("order", [2, 4])
@pytest.mark.parametrize("boundary", ["dirichlet", "periodic"])
def test_derivative_orders_on_smooth_function(order, boundary):
    errs, hs = [], []
    for g in Grid(0, 2 * math.pi, 41).refined(4):
        z = g.nodes()
        f = np.exp(1j * z) * (2 + np.sin(z))
        exact1 = 1j * f + np.exp(1j * z) * np.cos(z)
        e = np.max(np.abs(derivative(f, g.spacing, 1, order, boundary) - exact1))
        errs.append(e)
        hs.append(g.spacing)
    assert abs(estimate_order(hs, errs) - order) < 0.3


def test_derivative_of_constant_is_exactly_zero():
    f = np.full(21, 3.0 + 1j)
    for order in (2, 4):
        for b in ("dirichlet", "periodic"):
            d = derivative(f, 0.1, 1, order, b)
            assert np.max(np.abs(d[order:-order])) == 0


def test_derivative_argument_checks():
    with pytest.raises(InputError):
        derivative(np.ones(10), 0.1, 1, 3)
    with pytest.raises(InputError):
        derivative(np.ones(10), 0.1, 1, 2, "neumann")
    with pytest.raises(InputError):
        derivative(np.ones(3), 0.1, 2, 4)


# --- apply_hamiltonian


def test_free_particle_eigenfunction():
    L = 2.0
    errs, hs = [], []
    for g in Grid(0, L, 51).refined(3):
        z = g.nodes()
        psi = ComplexField(g, np.sin(math.pi * z / L))
        spec = DiscreteOperatorSpec(g, ComplexField(g, np.zeros(g.count)))
        out = apply_hamiltonian(spec, psi).values
        errs.append(np.max(np.abs(out - (math.pi / L) ** 2 * psi.values)))
        hs.append(g.spacing)
    assert errs[-1] < 1e-4
    assert abs(estimate_order(hs, errs) - 2) < 0.3


def test_constant_periodic_potential():
    g = Grid(0, 2 * math.pi, 33)
    spec = DiscreteOperatorSpec(g, ComplexField(g, np.full(g.count, 2.5 - 1j)), boundary="periodic")
    psi = ComplexField(g, np.full(g.count, 0.3 + 0.4j))
    out = apply_hamiltonian(spec, psi).values
    assert np.allclose(out, (2.5 - 1j) * psi.values, atol=1e-13)


def test_lambda_shift():
    g = Grid(0, 1, 11)
    spec = DiscreteOperatorSpec(g, ComplexField(g, np.ones(g.count)), lam=0.25, boundary="periodic")
    psi = ComplexField(g, np.ones(g.count))
    assert np.allclose(apply_hamiltonian(spec, psi).values, 0.75)


def test_operator_spec_validation():
    g = Grid(0, 1, 11)
    with pytest.raises(GridMismatch):
        DiscreteOperatorSpec(g, ComplexField(Grid(0, 1, 12), np.zeros(12)))
    with pytest.raises(InputError):
        DiscreteOperatorSpec(g, ComplexField(g, np.linspace(0, 1, 11)), boundary="periodic")
    with pytest.raises(InputError):
        DiscreteOperatorSpec(g, ComplexField(g, np.zeros(11)), stencil_order=6)
    spec = DiscreteOperatorSpec(g, ComplexField(g, np.zeros(11)))
    with pytest.raises(GridMismatch):
        apply_hamiltonian(spec, ComplexField(Grid(0, 2, 11), np.zeros(11)))


@pytest.mark.parametrize("w", [WA, WB])
@pytest.mark.parametrize("order", [2, 4])
def test_ground_state_solves_h_minus(w, order):
    period = 2 * math.pi / w.wavenumber * w.harmonic
    hs, errs = [], []
    for g in ladder(period):
        _, h_minus = hamiltonian_pair(w, g, 0.0, order)
        rep = eigen_residual(h_minus, ground_state(w, g), 0.0)
        hs.append(g.spacing)
        errs.append(rep.max_abs_residual)
    assert abs(estimate_order(hs, errs) - order) <= 0.3


@pytest.mark.parametrize("order", [2, 4])
def test_factorization_consistency(order):
    rng = np.random.default_rng(3)
    psi_fn = random_trig_polynomial(rng)
    for sign in (+1, -1):
        hs, errs = [], []
        for g in ladder(math.pi):
            psi = ComplexField(g, psi_fn(g.nodes()))
            h_plus, h_minus = hamiltonian_pair(WA, g, 0.3, order)
            spec = h_plus if sign > 0 else h_minus
            direct = apply_hamiltonian(spec, psi).values
            composed = apply_factorized(WA, psi, sign, order).values
            diff = (direct - composed)[order:-order]
            hs.append(g.spacing)
            errs.append(np.max(np.abs(diff)))
        assert abs(estimate_order(hs, errs) - order) <= 0.3


# --- ground state


def test_ground_state_values():
    g = Grid(0, math.pi / 2, 3)
    psi = ground_state(WA, g)
    assert psi.values[0] == 1
    assert psi.values[-1] == pytest.approx(math.e, rel=1e-14)
    assert np.all(ground_state(ZERO, g).values == 1)


@pytest.mark.parametrize("w", [WA, WB])
def test_ground_state_against_quadrature(w):
    z_end = 1.3
    re = quad(lambda t: complex(w(t)).real, 0, z_end, epsabs=1e-14)[0]
    im = quad(lambda t: complex(w(t)).imag, 0, z_end, epsabs=1e-14)[0]
    psi = ground_state(w, Grid(0, z_end, 2)).values[-1]
    assert psi == pytest.approx(np.exp(-(re + 1j * im)), rel=1e-12)


# --- annihilation


@pytest.mark.parametrize("w, period", [(WA, math.pi), (WB, math.pi)])
def test_annihilation_order_2(w, period):
    rep = annihilation_residual(w, Grid(0, period, 101).refined(3), 2)
    assert 1.7 <= rep.estimated_order <= 2.3
    assert list(rep.spacings) == sorted(rep.spacings, reverse=True)


def test_annihilation_order_4():
    rep = annihilation_residual(WB, ladder(math.pi), 4)
    assert rep.order_ok(4)


def test_annihilation_zero_superpotential_is_exact():
    rep = annihilation_residual(ZERO, ladder(math.pi, 3), 2)
    assert rep.residual_norms == (0.0, 0.0, 0.0)
    assert rep.exact and math.isinf(rep.estimated_order)


def test_estimate_order_edge_cases():
    assert estimate_order([0.1, 0.05], [1e-2, 2.5e-3]) == pytest.approx(2.0)
    assert math.isnan(estimate_order([0.1, 0.05], [1e-2, 0.0]))
    with pytest.raises(InputError):
        estimate_order([0.05, 0.1], [1, 1])


# --- intertwining


def test_intertwining_family_A_sin():
    rep = intertwining_residual(WA, ladder(math.pi), np.sin, 2)
    assert rep.order_ok(2)


def test_intertwining_family_B_plane_wave():
    rep = intertwining_residual(WB, ladder(math.pi), lambda z: np.exp(1j * z), 2, lam=0.5)
    assert rep.order_ok(2)


@pytest.mark.parametrize("order", [2, 4])
@pytest.mark.parametrize("boundary", ["dirichlet", "periodic"])
def test_intertwining_random_trig(order, boundary):
    psi = random_trig_polynomial(np.random.default_rng(11))
    rep = intertwining_residual(WB, ladder(math.pi), psi, order, boundary=boundary)
    assert rep.order_ok(order)


def test_intertwining_mismatched_plateau():
    rep = intertwining_residual(WA, ladder(math.pi), np.sin, 2, potential_source=WA.scaled(1.1))
    assert rep.finest > 1e-3
    assert abs(rep.estimated_order) < 0.3
    assert rep.residual_norms[-1] > 0.5 * rep.residual_norms[0]


def test_intertwining_defect_grid_mismatch():
    g1, g2 = Grid(0, 1, 21), Grid(0, 1, 22)
    hp, hm = hamiltonian_pair(WA, g1)
    with pytest.raises(GridMismatch):
        intertwining_defect(hp.potential, hm.potential, WA, ComplexField(g2, np.zeros(22)))


# --- eigenfunction integration and the SUSY map


def test_integrated_eigenfunction_matches_solve_ivp():
    g = Grid(0, math.pi, 201)
    E = 4.0
    psi, dpsi = integrate_eigenfunction(WA, -1, E, g, substeps=8)

    def rhs(z, y):
        q = E - riccati_combination(WA, z, -1)
        return [y[1], -q * y[0]]

    sol = solve_ivp(rhs, (0, math.pi), [1 + 0j, 0j], method="DOP853", t_eval=g.nodes(),
                    rtol=1e-12, atol=1e-13)
    assert np.max(np.abs(sol.y[0] - psi.values)) < 1e-9
    assert np.max(np.abs(sol.y[1] - dpsi.values)) < 1e-9


def test_susy_map_free_particle():
    L = 1.0
    g = Grid(0, L, 401)
    z = g.nodes()
    E = (math.pi / L) ** 2
    psi = ComplexField(g, np.sin(math.pi * z / L))
    phi = susy_map_solution(ZERO, psi, 2)
    assert np.max(np.abs(phi.values - math.pi / L * np.cos(math.pi * z / L))[2:-2]) < 1e-3
    h_plus, h_minus = hamiltonian_pair(ZERO, g)
    r_in = eigen_residual(h_minus, psi, E).max_abs_residual
    r_out = eigen_residual(h_plus, phi, E).max_abs_residual
    assert r_out <= 10 * r_in


def test_susy_map_family_A_finite_differences():
    g = Grid(0, math.pi, 601)
    psi, _ = integrate_eigenfunction(WA, -1, 4.0, g)
    h_plus, h_minus = hamiltonian_pair(WA, g, 0.0, 2)
    r_in = eigen_residual(h_minus, psi, 4.0).max_abs_residual
    r_out = eigen_residual(h_plus, susy_map_solution(WA, psi, 2), 4.0).max_abs_residual
    assert r_out <= 10 * r_in


def test_susy_map_family_A_integrator_derivative():
    g = Grid(0, math.pi, 1201)
    psi, dpsi = integrate_eigenfunction(WA, -1, 4.0, g)
    h_plus, h_minus = hamiltonian_pair(WA, g, 0.0, 4)
    r_in = eigen_residual(h_minus, psi, 4.0).max_abs_residual
    r_out = eigen_residual(h_plus, susy_map_solution(WA, psi, 4, psi_prime=dpsi), 4.0).max_abs_residual
    assert r_in <= 1e-8
    assert r_out <= 10 * r_in


def test_susy_map_of_ground_state_vanishes():
    grids = Grid(0, math.pi, 201).refined(3)
    norms = [
        np.max(np.abs(susy_map_solution(WA, ground_state(WA, g), 2).values[2:-2]))
        for g in grids
    ]
    assert norms[-1] < 1e-4
    assert abs(estimate_order([g.spacing for g in grids], norms) - 2) <= 0.3


def test_susy_map_grid_mismatch():
    g = Grid(0, 1, 11)
    with pytest.raises(GridMismatch):
        susy_map_solution(WA, ComplexField(g, np.ones(11)),
                          psi_prime=ComplexField(Grid(0, 2, 11), np.ones(11)))
