import csv
import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays
from scipy import integrate as spi

from clapeyron.errors import ContractViolation
from clapeyron.void_energy import (
    SWEEP_COLUMNS,
    VoidScenario,
    check_polar_vanishing,
    delta_e_gct,
    delta_e_linear,
    griffith_discrepancy,
    griffith_general,
    griffith_isotropic,
    griffith_sphere_quadrature,
    isotropic_tensor,
    rice_drucker_linear,
    traction_residual,
    void_reports,
    void_sweep,
    write_sweep_csv,
)


def _release_oracle(n, lam, mu, p):
    """-1/2 oint p (zh . u_in) over the unit cavity by adaptive quadrature of the radial displacement."""
    kap = lam + 2 * mu / n
    ur = p / (n * kap) + p / (2 * mu * (n - 1))  # radial displacement at |z| = 1
    if n == 2:
        return -0.5 * spi.quad(lambda th: p * ur, 0, 2 * math.pi)[0]
    return -0.5 * spi.dblquad(lambda ph, th: p * ur * math.sin(th), 0, math.pi, 0, 2 * math.pi)[0]


def test_release_reference_case():
    scn = VoidScenario(3, 1.0, 1.0, 1.0)
    quad, closed = delta_e_linear(scn)
    assert quad == pytest.approx(-0.9 * math.pi, abs=1e-12)
    assert closed == pytest.approx(-0.9 * math.pi, abs=1e-12)
    assert quad == pytest.approx(_release_oracle(3, 1.0, 1.0, 1.0), rel=1e-10)


def test_release_unit_bulk_modulus():
    # kappa = mu = 1 in three dimensions
    scn = VoidScenario(3, 1.0 / 3.0, 1.0, 1.0)
    assert scn.kappa == pytest.approx(1.0, abs=1e-15)
    quad, _ = delta_e_linear(scn)
    assert quad == pytest.approx(-7 * math.pi / 6, abs=1e-12)


@pytest.mark.parametrize("n,lam,mu,p", [(2, 1.0, 1.0, 1.0), (3, 0.4, 1.7, 2.3), (2, 2.0, 0.5, -1.0)])
def test_release_two_pipelines(n, lam, mu, p):
    scn = VoidScenario(n, lam, mu, p)
    quad, closed = delta_e_linear(scn)
    dW, dP = delta_e_gct(scn)
    assert quad == pytest.approx(_release_oracle(n, lam, mu, p), rel=1e-10)
    assert abs(dW - quad) <= 1e-8 * abs(quad)
    assert abs(dW - dP) <= 1e-10 * abs(dW)
    assert traction_residual(scn) <= 1e-10
    assert all(r.passed for r in void_reports(scn))


def test_zero_load():
    scn = VoidScenario(3, 1.0, 1.0, 0.0)
    assert delta_e_linear(scn) == (0.0, 0.0)
    assert delta_e_gct(scn) == (0.0, 0.0)
    r1, r2 = rice_drucker_linear(scn)
    assert r1.lhs == r1.rhs == 0.0 and r2.lhs == r2.rhs == 0.0


def test_scenario_contract():
    with pytest.raises(ContractViolation):
        VoidScenario(4, 1.0, 1.0, 1.0)
    with pytest.raises(ContractViolation):
        VoidScenario(3, 1.0, 1.0, 1.0, shape="ellipsoid")
    with pytest.raises(ContractViolation):
        VoidScenario(3, -5.0, 1.0, 1.0)
    scn = VoidScenario(3, 1.0, 1.0, 1.0)
    assert np.allclose(scn.S, 1.0 / (2 * 2 * 1.0) * np.eye(3))


@pytest.mark.parametrize("n,expected", [(2, lambda p, k: math.pi * p * p / k), (3, lambda p, k: 4 * math.pi * p * p / (3 * k))])
def test_griffith_hydrostatic(n, expected):
    scn = VoidScenario(n, 0.7, 1.2, 1.5)
    g = griffith_discrepancy(scn)
    ref = expected(1.5, scn.kappa)
    assert g.hydrostatic == pytest.approx(ref, rel=1e-14)
    assert abs(g.isotropic - ref) <= 1e-8 * ref
    assert abs(g.general - ref) <= 1e-8 * ref
    assert abs(g.sphere - ref) <= 1e-8 * ref
    assert abs(g.truncated[40.0] - ref) <= 1e-4 * ref


def test_griffith_zero_remote_gradient():
    scn = VoidScenario(3, 1.0, 1.0, 1.0)
    g = griffith_discrepancy(scn, S=np.eye(3), F0=np.zeros((3, 3)))
    assert g.isotropic == 0.0 and g.general == 0.0
    assert math.isnan(g.hydrostatic) and g.truncated == {}
    with pytest.raises(ContractViolation):
        griffith_discrepancy(scn, F0=np.eye(3))


def test_griffith_isotropic_against_symbolic_circle_integral():
    """n = 2: integrate the sphere integrand exactly in the angle and compare with the closed form."""
    lam, mu = sp.Rational(3, 5), sp.Rational(7, 4)
    F0 = sp.Matrix([[1, sp.Rational(1, 3)], [sp.Rational(1, 3), 2]])
    S = sp.Matrix([[sp.Rational(2, 3), sp.Rational(1, 5)], [sp.Rational(1, 5), -1]])
    th = sp.Symbol("th")
    z = sp.Matrix([sp.cos(th), sp.sin(th)])
    I = sp.eye(2)

    def C(A):
        e = (A + A.T) / 2
        return lam * e.trace() * I + 2 * mu * e

    integrand = 2 * (C(S * z * z.T) * z).dot(F0 * z) - (C(S) * z).dot(F0 * z)
    exact = sp.integrate(sp.expand(integrand), (th, 0, 2 * sp.pi))
    val = griffith_isotropic(float(lam), float(mu), 2, np.array(F0, dtype=float), np.array(S, dtype=float))
    assert val == pytest.approx(float(exact), rel=1e-12)


def test_rice_drucker_reports():
    r1, r2 = rice_drucker_linear(VoidScenario(3, 1.0, 1.0, 1.0))
    assert r1.passed and r2.passed
    assert r1.lhs == pytest.approx(0.9 * math.pi, abs=1e-10)
    assert r2.lhs == pytest.approx(0.5 * math.pi, abs=1e-10)
    assert r2.rhs == pytest.approx(0.5 * math.pi, abs=1e-10)


def test_polar_vanishing_random_pairs():
    rng = np.random.default_rng(21)
    for _ in range(3):
        P0, S = rng.normal(size=(2, 3, 3))
        assert abs(check_polar_vanishing(P0, S, 3)) <= 1e-10


mats3 = arrays(np.float64, (3, 3), elements=st.floats(-3, 3))


@settings(max_examples=40, deadline=None)
@given(mats3, mats3)
def test_polar_vanishing_property(P0, S):
    scale = 1.0 + float(np.sum(np.abs(P0))) * float(np.sum(np.abs(S)))
    assert abs(check_polar_vanishing(P0, S, 3)) <= 1e-12 * scale


@settings(max_examples=40, deadline=None)
@given(mats3, mats3, st.floats(-0.5, 3.0), st.floats(0.1, 3.0))
def test_griffith_forms_agree_property(A, B, lam, mu):
    C = isotropic_tensor(lam, mu, 3)
    scale = 1.0 + (abs(lam) + mu) * float(np.sum(np.abs(A))) * float(np.sum(np.abs(B)))
    # index form and quadrature agree for any pair
    assert abs(griffith_general(C, 3, A, B) - griffith_sphere_quadrature(C, 3, A, B)) <= 1e-12 * scale
    # the closed form applies to symmetric strain and polarization
    F0, S = A + A.T, B + B.T
    iso = griffith_isotropic(lam, mu, 3, F0, S)
    assert abs(iso - griffith_general(C, 3, F0, S)) <= 4e-12 * scale
    assert abs(iso - griffith_sphere_quadrature(C, 3, F0, S)) <= 4e-12 * scale


def test_griffith_closed_form_needs_symmetry():
    F0 = np.array([[1.0, 0.5, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    with pytest.raises(ContractViolation):
        griffith_isotropic(1.0, 1.0, 3, F0, np.eye(3))
    with pytest.raises(ContractViolation):
        griffith_discrepancy(VoidScenario(3, 1.0, 1.0, 1.0), S=np.eye(3), F0=F0)


def test_sweep_csv(tmp_path):
    rows = [(3, 1.0, 1.0, 1.0), (2, 1.0, 1.0, 2.0)]
    recs = void_sweep(rows)
    assert recs[0]["dE_linear"] == pytest.approx(-0.9 * math.pi, abs=1e-12)
    assert recs[1]["dE_linear"] == pytest.approx(4 * void_sweep([(2, 1.0, 1.0, 1.0)])[0]["dE_linear"], rel=1e-14)
    path = tmp_path / "sweep.csv"
    write_sweep_csv(recs, path)
    with open(path) as fh:
        table = list(csv.reader(fh))
    assert table[0] == SWEEP_COLUMNS and len(table) == 3
    assert float(table[1][4]) == recs[0]["dE_linear"]
