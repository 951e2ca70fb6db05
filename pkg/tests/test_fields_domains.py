import math

import numpy as np
import pytest
from scipy import integrate as spi

from clapeyron.errors import ContractViolation, IntegrationError
from clapeyron.fields_domains import (
    Annulus,
    Ball,
    Circle2D,
    Interval,
    affine_field,
    annulus_rule,
    ball_rule,
    integrate,
    interval_rule,
    merge_rules,
    sphere_rule,
)
from clapeyron.radial_solver import example1_field


def test_circle_perimeter():
    assert integrate(lambda x, nrm: np.ones(len(x)), sphere_rule(2, 1.0, 64)) == pytest.approx(2 * math.pi, abs=1e-12)


def test_sphere_area():
    assert integrate(lambda x, nrm: np.ones(len(x)), sphere_rule(3, 1.0, 16)) == pytest.approx(4 * math.pi, abs=1e-12)


@pytest.mark.parametrize("R", [0.5, 1.0, 2.0])
def test_flux_of_position(R):
    val = integrate(lambda x, nrm: np.sum(x * nrm, axis=-1), sphere_rule(3, R, 16))
    assert val == pytest.approx(4 * math.pi * R**3, abs=1e-10 * max(1.0, R**3))


def test_ball_volume_and_second_moment():
    rule = ball_rule(3, 1.0, order=16)
    assert integrate(lambda x: np.ones(len(x)), rule) == pytest.approx(4 * math.pi / 3, abs=1e-12)
    # oracle: 4 pi * integral of r^4 on [0, 1] by adaptive quadrature
    ref = 4 * math.pi * spi.quad(lambda r: r**4, 0, 1, epsabs=1e-15)[0]
    assert integrate(lambda x: np.sum(x * x, axis=-1), rule) == pytest.approx(ref, abs=1e-12)


def test_annulus_area():
    assert integrate(lambda x: np.ones(len(x)), annulus_rule(2, 1.0, 2.0)) == pytest.approx(3 * math.pi, abs=1e-12)


def test_interval_and_domain_measures():
    assert integrate(lambda x: np.ones(len(x)), interval_rule(-1.0, 2.0)) == pytest.approx(3.0, abs=1e-14)
    assert Ball(3, 2.0).measure == pytest.approx(32 * math.pi / 3, rel=1e-15)
    assert Annulus(2, 1.0, 2.0).measure == pytest.approx(3 * math.pi, rel=1e-15)
    assert Interval(0.0, 2.0).measure == 2.0
    assert Circle2D(1.0).measure == pytest.approx(math.pi, rel=1e-15)


@pytest.mark.parametrize(
    "rule",
    [sphere_rule(2, 1.3), sphere_rule(3, 0.7), ball_rule(2, 1.0), ball_rule(3, 2.0, graded=8), annulus_rule(3, 1.0, 3.0)],
    ids=["circle", "sphere", "disc", "ball-graded", "shell"],
)
def test_weights_sum_to_measure(rule):
    assert abs(float(np.sum(rule.weights)) - rule.measure) <= 1e-12 * max(1.0, rule.measure)


def test_boundary_normals_point_outward():
    r = Annulus(2, 1.0, 2.0).boundary_rule()
    radial = np.sum(r.nodes * r.normals, axis=-1) / np.linalg.norm(r.nodes, axis=-1)
    inner = np.linalg.norm(r.nodes, axis=-1) < 1.5
    assert np.allclose(radial[inner], -1.0) and np.allclose(radial[~inner], 1.0)


def test_invalid_domains_and_orders():
    with pytest.raises(ContractViolation):
        Ball(3, -1.0)
    with pytest.raises(ContractViolation):
        Annulus(2, 2.0, 1.0)
    with pytest.raises(ContractViolation):
        Interval(1.0, 0.0)
    with pytest.raises(ContractViolation):
        sphere_rule(5, 1.0)
    with pytest.raises(ContractViolation):
        sphere_rule(2, 1.0, 2)


def test_integrate_reports_bad_node():
    rule = interval_rule(0.0, 1.0, order=8)

    def f(x):
        v = np.ones(len(x))
        v[3] = np.nan
        return v

    with pytest.raises(IntegrationError, match="node 3"):
        integrate(f, rule)


def test_integrate_deterministic_and_vector_valued():
    rule = ball_rule(3, 1.0, order=12)
    f = lambda x: np.stack([np.exp(x[:, 0]), np.sin(x[:, 1]) * x[:, 2] ** 2], axis=-1)
    a, b = integrate(f, rule), integrate(f, rule)
    assert np.array_equal(a, b) and a.shape == (2,)
    ref = 4 * math.pi * spi.quad(lambda r: r**2 * np.sinh(r) / r, 0, 1, epsabs=1e-15)[0]
    assert a[0] == pytest.approx(ref, rel=1e-12)
    assert abs(a[1]) < 1e-14


def test_order_doubling_smooth_integrand():
    f = lambda x: np.exp(-np.sum(x * x, axis=-1)) * (1 + x[:, 0] ** 2)
    lo = integrate(f, ball_rule(3, 1.0, order=16, angular=16))
    hi = integrate(f, ball_rule(3, 1.0, order=32, angular=32))
    assert abs(lo - hi) <= 1e-10


def test_merge_rules_adds_measures():
    r = merge_rules(annulus_rule(2, 0.0 + 1e-300, 1.0), annulus_rule(2, 1.0, 2.0))
    assert r.measure == pytest.approx(4 * math.pi, rel=1e-14)


def test_field_gradients_consistent():
    fld = example1_field(3, 1.0, 1.0)
    pts = np.array([[0.3, 0.2, 0.1], [0.5, -0.4, 0.2], [0.0, 0.0, 0.9]])
    assert fld.check_grad(pts) <= 1e-6
    F0 = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
    aff = affine_field(F0, c=np.ones(3))
    assert np.allclose(aff.y(np.array([1.0, -1.0])), [0.0, 0.0, 0.0])
    assert aff.check_grad(np.array([[0.1, 0.2]])) <= 1e-9
    assert fld.distance_to_singular_set(np.array([0.0, 0.0, 0.5])) == pytest.approx(0.5)
