import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import assume, given, settings, strategies as st

from clapeyron.energy_models import make_dynamic_potential, make_well_potential_1d
from clapeyron.errors import ContractViolation, SolverError
from clapeyron.shock_dynamics import (
    admissible_sweep,
    build_shock,
    dynamic_clapeyron_terms,
    energy_rate_closed,
    shock_pstar,
    spacetime_pstar,
    verify_dynamic_clapeyron,
    verify_energy_balance,
)

QUARTIC = make_dynamic_potential(1.0, 1.0)


@pytest.fixture
def quartic_shock():
    return build_shock(QUARTIC, 1.0, 0.0, 0.0)


def test_quartic_shock_states(quartic_shock):
    s = quartic_shock
    assert s.jP == -2.0 and s.jF == -1.0
    assert s.V == pytest.approx(math.sqrt(2.0), abs=1e-15)
    assert s.v_minus == pytest.approx(-math.sqrt(2.0), abs=1e-15)
    assert s.rh_residual() <= 1e-12 and s.hadamard_residual() <= 1e-12
    assert s.jv**2 == pytest.approx(s.jP * s.jF, abs=1e-12)
    assert s.lax_admissible()


def test_shock_rejections():
    with pytest.raises(ContractViolation):
        build_shock(QUARTIC, 1.0, 1.0, 0.0)
    # inside the spinodal of a double well the stress decreases with strain
    with pytest.raises(SolverError):
        build_shock(make_well_potential_1d(1.0, 2.0), 1.4, 1.6, 0.0)


def test_quadratic_potential_linear_waves():
    U = make_dynamic_potential(2.5, 0.0)
    for Fm, Fp in [(1.0, 0.0), (-0.3, 0.7), (2.0, 1.5)]:
        s = build_shock(U, Fm, Fp, 0.1)
        assert s.V == pytest.approx(math.sqrt(2.5), rel=1e-15)
        assert abs(shock_pstar(s)) <= 1e-14


def test_pstar_quartic_hand_value(quartic_shock):
    # [U] = U(0) - U(1) = -3/4, {P} = 1, [F] = -1
    assert shock_pstar(quartic_shock) == pytest.approx(0.25, abs=1e-15)
    assert spacetime_pstar(quartic_shock) == pytest.approx(-0.25, abs=1e-12)
    assert spacetime_pstar(quartic_shock, "+") == pytest.approx(-0.25, abs=1e-12)


def test_pstar_small_jump_limit():
    vals = [abs(shock_pstar(build_shock(QUARTIC, 1.0 + d, 1.0, 0.0))) for d in (1e-1, 1e-2, 1e-3)]
    assert vals[0] > vals[1] > vals[2] and vals[2] < 1e-9


def test_admissible_sign_law():
    sols, ps = admissible_sweep(QUARTIC, count=100)
    assert len(sols) == 100
    assert np.all(ps >= -1e-14)
    for s in sols:
        assert s.V * spacetime_pstar(s) <= 1e-14
        assert s.rh_residual() <= 1e-12 and s.hadamard_residual() <= 1e-12


def test_energy_balance(quartic_shock):
    rep = verify_energy_balance(quartic_shock, (-2.0, 2.0), 0.0, tol=1e-12)
    assert rep.passed
    assert rep.lhs == pytest.approx(energy_rate_closed(quartic_shock), abs=1e-9)
    moving = verify_energy_balance(quartic_shock, (-2.0, 2.0), 0.5, speeds=(0.3, -0.2))
    assert moving.passed


def test_energy_balance_quadratic_no_dissipation():
    s = build_shock(make_dynamic_potential(1.0, 0.0), 0.5, -0.5, 0.2)
    assert abs(s.V * spacetime_pstar(s)) <= 1e-15
    assert verify_energy_balance(s, (-1.0, 1.0), 0.0, tol=1e-12).passed


def test_interval_must_contain_shock(quartic_shock):
    with pytest.raises(ContractViolation):
        verify_energy_balance(quartic_shock, (1.0, 2.0), 0.0)
    with pytest.raises(ContractViolation):
        verify_dynamic_clapeyron(quartic_shock, (-3.0, 3.0), 5.0)


def _symbolic_clapeyron(t, a, b):
    """Exact piecewise evaluation of both sides for the quartic shock (F-, F+, v+) = (1, 0, 0)."""
    F = sp.Symbol("F")
    U = F**2 / 2 + F**4 / 4
    P = sp.diff(U, F)
    Fm, Fp, vp = sp.Integer(1), sp.Integer(0), sp.Integer(0)
    V = sp.sqrt((P.subs(F, Fp) - P.subs(F, Fm)) / (Fp - Fm))
    vm = vp + V * (Fp - Fm)
    t, a, b = sp.nsimplify(t), sp.nsimplify(a), sp.nsimplify(b)
    s = V * t
    ym = lambda x: Fm * x + vm * t
    yp = lambda x: Fp * x + vp * t
    assert sp.simplify(ym(s) - yp(s)) == 0
    Um, Up = U.subs(F, Fm), U.subs(F, Fp)
    Pm, Pp = P.subs(F, Fm), P.subs(F, Fp)
    lhs = Um * (s - a) + Up * (b - s)
    Psm, Psp = Um - Fm * Pm, Up - Fp * Pp
    boundary = (Pp * yp(b) + Psp * b) - (Pm * ym(a) + Psm * a)
    pstar = (Up - Um) - (Pp + Pm) / 2 * (Fp - Fm)
    jv = vp - vm
    rhs = boundary - pstar * s + V * jv * (yp(s) - (Fp + Fm) / 2 * s)
    return float(lhs), float(rhs), float(pstar)


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_dynamic_clapeyron_against_symbolic(quartic_shock, t):
    lhs, rhs, pstar = _symbolic_clapeyron(t, -3.0, 3.0)
    assert lhs == pytest.approx(rhs, abs=1e-14)
    rep = verify_dynamic_clapeyron(quartic_shock, (-3.0, 3.0), t)
    assert rep.passed and rep.abs_err <= 1e-10
    assert rep.lhs == pytest.approx(lhs, abs=1e-12)
    assert rep.rhs == pytest.approx(rhs, abs=1e-12)
    d = dynamic_clapeyron_terms(quartic_shock, (-3.0, 3.0), t)
    assert d.static + d.inertial == pytest.approx(rhs, abs=1e-12)


def test_snapshot_tsv(tmp_path, quartic_shock):
    p = tmp_path / "snap.tsv"
    quartic_shock.to_tsv(p, 1.0, -3.0, 3.0, samples=11)
    lines = p.read_text().splitlines()
    assert lines[0] == "x\tv\tF\te" and len(lines) == 12


@settings(max_examples=80, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-1, 1), st.floats(0.5, 2), st.floats(0, 2))
def test_rankine_hugoniot_property(Fm, Fp, vp, c2, c4):
    assume(abs(Fm - Fp) > 1e-3)
    U = make_dynamic_potential(c2, c4)
    s = build_shock(U, Fm, Fp, vp)
    scale = 1.0 + abs(s.jP) + abs(s.jv) * s.V
    assert s.rh_residual() <= 1e-12 * scale
    assert s.hadamard_residual() <= 1e-12 * scale
    assert abs(s.jv**2 - s.jP * s.jF) <= 1e-12 * (1.0 + abs(s.jP * s.jF))
    assert abs(spacetime_pstar(s) + shock_pstar(s)) <= 1e-12 * (1.0 + abs(shock_pstar(s)))
