"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import pblock


def test_basis_and_operators():
    basis = pblock.FockBasis(10, 10)
    assert basis.dim == 121
    assert basis.index(3, 5) == 3 * 11 + 5
    assert basis.unindex(basis.index(2, 7)) == (2, 7)

    b1 = pblock.annihilation(basis, pblock.Mode.one).matrix
    n1 = pblock.number_operator(basis, pblock.Mode.one).matrix
    assert np.allclose(b1.conj().T @ b1, n1)


def test_thermal_occupancy():
    assert pblock.thermal_occupancy(0.0) == 0.0
    assert pblock.thermal_occupancy(1.0 / math.log(2.0)) == pytest.approx(1.0)


def test_steady_state_and_g2():
    basis = pblock.FockBasis(6, 6)
    params = pblock.SystemParams(delta=0.2885, j=20.0, u=0.00096, f=0.01)
    liouvillian = pblock.build_liouvillian(params, basis)
    report = pblock.steady_state(liouvillian)
    assert report.residual < 1e-8
    assert report.min_eigenvalue > -1e-8

    rho = report.rho.matrix
    assert rho.shape == (49, 49)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-10)

    g2 = pblock.g2_zero(report.rho, pblock.Mode.one)
    ana = pblock.g2_analytic(params)
    assert g2 == pytest.approx(ana, rel=0.05)


def test_vacuum_raises():
    basis = pblock.FockBasis(3, 3)
    vac = pblock.vacuum_density(basis)
    with pytest.raises(pblock.VacuumDenominator):
        pblock.g2_zero(vac, pblock.Mode.one)


def test_optimal_and_boundaries():
    opt = pblock.optimal_exact(10.0, 1.0)
    assert opt.u_opt == pytest.approx(0.00387, rel=0.01)
    assert opt.delta_opt == pytest.approx(0.2874, rel=0.01)

    params = pblock.SystemParams(delta=0.2885, j=20.0, u=0.00096, f=0.01)
    bounds = pblock.boundary_temperatures(params)
    assert bounds.t1_over_t0 == pytest.approx(0.028, rel=0.05)
    assert bounds.t2_over_t0 == pytest.approx(0.046, rel=0.05)


def test_g2_tau_roundtrip():
    basis = pblock.FockBasis(5, 5)
    params = pblock.SystemParams(delta=0.3, j=2.0, u=0.1, f=0.2)
    liouvillian = pblock.build_liouvillian(params, basis)
    report = pblock.steady_state(liouvillian)
    series = pblock.g2_tau(liouvillian, report.rho, pblock.Mode.one, [0.0, 0.5, 10.0])
    direct = pblock.g2_zero(report.rho, pblock.Mode.one)
    assert series.values[0] == pytest.approx(direct, abs=1e-8)
    assert series.values[2] == pytest.approx(1.0, abs=0.05)


def test_physical_estimate():
    est = pblock.physical_estimate(5e-9, 100e-9)
    assert est.omega0 / (2 * math.pi) == pytest.approx(4.3e9, rel=0.05)
    assert est.t0 == pytest.approx(0.196, rel=0.02)
    assert est.n_th_at(0.0) == 0.0
