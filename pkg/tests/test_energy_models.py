import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st
from hypothesis.extra.numpy import arrays
from scipy.optimize import brentq

from clapeyron.energy_models import (
    build_model,
    flag_defects,
    kappa,
    make_area_functional,
    make_bar_potential,
    make_body_load_1d,
    make_dirichlet,
    make_double_well,
    make_dynamic_potential,
    make_isotropic_sv,
    make_lane_emden,
    make_linear_isotropic,
    make_power_p,
    make_prestressed_radial,
    make_quadratic_sv,
    make_shear_neo,
    make_well_potential_1d,
)
from clapeyron.errors import ModelError
from clapeyron.radial_solver import example1_field
from clapeyron.tensor_core import energy, inner, piola

Z2, Z3 = np.zeros(2), np.zeros(3)


def test_linear_isotropic_examples():
    assert energy(make_linear_isotropic(0.0, 0.5, 2), Z2, Z2, np.eye(2)) == pytest.approx(1.0, abs=1e-15)
    assert kappa(1.0, 1.0, 3) == pytest.approx(5.0 / 3.0, abs=1e-15)
    m = make_linear_isotropic(1.0, 1.0, 3)
    p = 0.7
    eps = p / (3 * kappa(1.0, 1.0, 3)) * np.eye(3)
    assert np.allclose(piola(m, Z3, Z3, eps), p * np.eye(3), atol=1e-15)


@pytest.mark.parametrize("lam,mu", [(1.0, 0.0), (1.0, -1.0), (-2.0, 1.0)])
def test_linear_isotropic_rejects_non_elliptic(lam, mu):
    with pytest.raises(ModelError):
        make_linear_isotropic(lam, mu, 2)


def test_prestressed_examples():
    m = make_prestressed_radial(1.0, 3)
    x = np.array([0.0, 0.6, 0.8])
    xh = x / np.linalg.norm(x)
    assert energy(m, x, x, np.outer(xh, xh)) == 0.0
    fld = example1_field(3, 1.0, 1.0)
    e1 = np.array([1.0, 0.0, 0.0])
    assert energy(m, e1, fld.y(e1), fld.grad(e1)) == pytest.approx(1.0 / 9.0, abs=1e-15)
    F = np.diag([0.3, 1.2, -0.4])
    assert energy(m, 2.0 * x, x, F) == energy(m, x, x, F)
    with pytest.raises(ModelError):
        energy(m, Z3, Z3, F)
    with pytest.raises(ModelError):
        make_prestressed_radial(1.0, 1)


def test_isotropic_sv_examples():
    m = make_quadratic_sv(3)
    assert energy(m, Z3, Z3, np.eye(3)) == pytest.approx(1.5, abs=1e-15)
    dw = make_double_well(1.0, 2.0, 3)
    assert energy(dw, Z3, Z3, np.eye(3)) == pytest.approx(0.0, abs=1e-15)
    w12 = dw.extras["w12"]
    assert np.all(w12(np.linspace(0.5, 3, 7), np.linspace(3, 0.5, 7)) == 0.0)


def test_radial_only_sv_rejects_general_gradient():
    n = 3
    m = make_isotropic_sv(
        lambda v: 0.5 * np.sum(v * v, axis=-1),
        lambda v: np.asarray(v, dtype=float),
        lambda v: np.broadcast_to(np.eye(n), np.shape(v) + (n,)).copy(),
        n,
    )
    x = np.array([1.0, 0.0, 0.0])
    assert energy(m, x, x, np.diag([2.0, 1.0, 1.0])) == pytest.approx(3.0, abs=1e-15)
    with pytest.raises(ModelError):
        energy(m, x, x, np.array([[1.0, 0.3, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))


def test_radial_piola_matches_fd():
    """P = w1 xhat xhat + w2 (I - xhat xhat) against central differences of W."""
    dw = make_double_well(1.0, 2.0, 3, curvature=1.3, tilt=0.2)
    rng = np.random.default_rng(7)
    for _ in range(5):
        xh = rng.normal(size=3)
        xh /= np.linalg.norm(xh)
        a, b = rng.uniform(0.7, 2.5, size=2)
        Q = np.outer(xh, xh)
        F = a * Q + b * (np.eye(3) - Q)
        P = dw.extras["w1"](a, b) * Q + dw.extras["w2"](a, b) * (np.eye(3) - Q)
        h = 1e-6
        fd = np.zeros((3, 3))
        for i in range(3):
            for j in range(3):
                E = np.zeros((3, 3))
                E[i, j] = h
                fd[i, j] = (energy(dw, xh, xh, F + E) - energy(dw, xh, xh, F - E)) / (2 * h)
        assert np.max(np.abs(P - fd)) <= 1e-8 * max(1.0, np.max(np.abs(P)))


def test_power_examples():
    assert energy(make_power_p(2.0, 2), Z2, Z2, np.eye(2)) == pytest.approx(1.0, abs=1e-15)
    m = make_power_p(3.0, 2)
    assert energy(m, Z2, Z2, np.diag([1.0, 0.0])) == pytest.approx(1.0 / 3.0, abs=1e-15)
    F = np.random.default_rng(8).normal(size=(10, 2, 2))
    assert np.allclose(inner(piola(m, Z2, Z2, F), F), 3.0 * energy(m, Z2, Z2, F), rtol=1e-13)
    with pytest.raises(ModelError):
        make_power_p(0.5, 2)


def test_dynamic_potential_examples():
    U = make_dynamic_potential(1.0, 1.0)
    assert U.P(1.0) == 2.0
    assert U.U(0.0) == 0.0
    assert U.wave_speed(1.0) == 2.0
    with pytest.raises(ModelError):
        make_dynamic_potential(0.0, 1.0)


def test_bar_potential_examples():
    W0, k = 0.8, 1.5
    B = make_bar_potential(W0, k)
    assert B.U(0.0) == W0 and B.P(0.0) == 0.0
    assert B.pstar(0.0) == W0
    # optimal strain: root of cosh(k e) = k e sinh(k e), located by an independent bracket
    root = brentq(lambda e: np.cosh(k * e) - k * e * np.sinh(k * e), 0.1, 5.0, xtol=1e-15)
    assert abs(B.pstar(root)) < 1e-12
    # the dimensionless root t = k e solves t tanh t = 1
    assert k * root == pytest.approx(1.19967864025773, rel=1e-12)


def test_well_potential_1d():
    U = make_well_potential_1d(1.0, 2.0)
    assert U.U(1.0) == 0.0 and U.U(2.0) == 0.0
    assert U.P(1.5) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(ModelError):
        make_well_potential_1d(2.0, 1.0)


def test_build_model_catalog():
    m = build_model("linear-isotropic", {"lam": 1.0, "mu": 1.0, "n": 3})
    assert m.n == 3
    with pytest.raises(ModelError):
        build_model("nonexistent", {})
    with pytest.raises(ModelError):
        build_model("power", {"n": 2})


CATALOG = [
    make_linear_isotropic(1.0, 1.0, 2),
    make_linear_isotropic(0.3, 2.0, 3),
    make_prestressed_radial(1.0, 3),
    make_quadratic_sv(3),
    make_double_well(1.0, 2.0, 2),
    make_power_p(3.0, 3),
    make_dirichlet(1.0, 2),
    make_shear_neo(1.0),
    make_lane_emden(3.0, 3),
    make_area_functional(2, 3),
    make_body_load_1d(0.0),
]


@pytest.mark.parametrize("model", CATALOG, ids=lambda m: m.name)
def test_flag_invariants_hold(model):
    defects = flag_defects(model, npts=100)
    for key, val in defects.items():
        assert val < 1e-10, (model.name, key, val)


def test_flag_defects_catches_false_flag():
    from dataclasses import replace

    lying = replace(make_double_well(1.0, 2.0, 2), p_hom=2.0)
    assert flag_defects(lying)["p_hom"] > 1e-3


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, (3, 3), elements=st.floats(-3, 3)), st.floats(-1, 3), st.floats(0.1, 3))
def test_linear_piola_symmetry_property(F, lam, mu):
    assume(3 * lam + 2 * mu > 0.05)
    m = make_linear_isotropic(lam, mu, 3)
    P = piola(m, Z3, Z3, F)
    assert np.max(np.abs(P - P.T)) <= 1e-14 * (1.0 + np.max(np.abs(P)))
