"""Scenario catalog, command line runner and report writer.

Each scenario maps a parameter dictionary to a list of identity reports.
Reports are written as JSON with every float printed to 17 significant
digits, so two runs with the same configuration differ only in
``runtime_ms`` (zeroed by ``--reproducible``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .energy_models import (
    make_area_functional,
    make_bar_potential,
    make_dirichlet,
    make_body_load_1d,
    make_double_well,
    make_dynamic_potential,
    make_linear_isotropic,
    make_power_p,
    make_prestressed_radial,
    make_well_potential_1d,
)
from .errors import ArtifactError, ConfigError, IntegrationError, SolverError
from .fields_domains import Ball, DeformationField, Interval, affine_field, ball_rule, interval_rule, sphere_rule
from .identity_lab import (
    IdentityReport,
    bound_report,
    broken_extremal_1d,
    composite_pair,
    crack_j1_closed,
    crack_mode3_field,
    energy_increment,
    harmonic_gradient_field,
    hydrostatic_ball_field,
    interface_term,
    j_integral,
    l_integral,
    m_integral,
    make_report,
    screw_dislocation_field,
    screw_m_closed,
    uniqueness_verdict,
    verify_gct,
    verify_genclap,
    verify_incompressible,
    verify_linear_forms,
    verify_phom,
    verify_pohozaev,
    verify_ppst_and_pi,
    verify_qw,
)
from .radial_solver import (
    bar_1d,
    example1_energy,
    example1_field,
    example1_profile,
    pohozaev_shoot,
    shoot_rODE,
    solve_interface_conditions,
)
from .shock_dynamics import (
    admissible_sweep,
    build_shock,
    energy_rate_closed,
    shock_pstar,
    spacetime_pstar,
    verify_dynamic_clapeyron,
    verify_energy_balance,
)
from .tensor_core import (
    eshelby,
    euler_residuals,
    check_graph_orthogonality,
    extended_eshelby_defect,
    jump_pstar,
    matvec,
    noether_defect,
    piola,
    qhom_defect,
)
from .void_energy import (
    VoidScenario,
    check_polar_vanishing,
    delta_e_gct,
    delta_e_linear,
    griffith_discrepancy,
    rice_drucker_linear,
    traction_residual,
    void_sweep,
    write_sweep_csv,
)

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2, 3

INT_PARAMS = {"n", "count", "seed", "panels"}


@dataclass
class Context:
    tsv_dir: Optional[Path] = None
    order: Optional[int] = None
    exports: List[str] = field(default_factory=list)

    def tsv_path(self, name: str) -> Optional[Path]:
        if self.tsv_dir is None:
            return None
        self.tsv_dir.mkdir(parents=True, exist_ok=True)
        p = self.tsv_dir / name
        self.exports.append(str(p))
        return p


@dataclass(frozen=True)
class Scenario:
    name: str
    description: str
    anchor: str
    defaults: Mapping[str, float]
    runner: Callable[[Dict[str, float], Context], List[IdentityReport]]
    operations: Tuple[str, ...] = ()


@dataclass
class ScenarioConfig:
    scenario: str
    params: Dict[str, float] = field(default_factory=dict)
    order: Optional[int] = None
    tol: Optional[float] = None
    out: Optional[Path] = None
    tsv_dir: Optional[Path] = None
    reproducible: bool = False


@dataclass
class RunReport:
    version: str
    scenario: str
    params: Dict[str, float]
    identities: List[IdentityReport]
    runtime_ms: float
    passed: bool
    exit_code: int = EXIT_PASS
    error: str = ""

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "scenario": self.scenario,
            "params": self.params,
            "identities": [r.to_dict() for r in self.identities],
            "runtime_ms": self.runtime_ms,
            "pass": self.passed,
        }


# ---------------------------------------------------------------- scenario bodies


def _n(p) -> int:
    return int(p["n"])


def _example1(p, ctx):
    n, a, R = _n(p), p["a"], p["R"]
    closed, quad = example1_energy(n, a, R, panels=int(p["panels"]))
    model = make_prestressed_radial(a, n)
    fld = example1_field(n, a, R)
    dom = Ball(n, R)
    vrule = ball_rule(n, R, order=8, angular=8, graded=int(p["panels"]))
    brule = dom.boundary_rule(ctx.order)
    x = brule.nodes
    y, F = fld.y(x), fld.grad(x)
    tr = matvec(eshelby(model, x, y, F), brule.normals)
    want = a * a * (n - 1) / (2.0 * n * n) * brule.normals
    out = ctx.tsv_path("example1_profile.tsv")
    if out is not None:
        example1_profile(n, a, R).to_tsv(out)
    return [
        verify_gct(model, fld, dom, volume_rule=vrule, boundary_rule=brule),
        make_report("energy-closed-form", quad, closed, 1e-8, "prestressed-ball-energy"),
        bound_report("configurational-traction", float(np.max(np.abs(tr - want))), 1e-10, "prestressed-ball-eshelby-traction"),
        bound_report("traction-free", float(np.max(np.abs(matvec(piola(model, x, y, F), brule.normals)))), 1e-10, "prestressed-ball-boundary"),
    ]


def _example1_genclap(p, ctx):
    n, a, R = _n(p), p["a"], p["R"]
    model = make_prestressed_radial(a, n)
    fld = example1_field(n, a, R)
    dom = Ball(n, R)
    vrule = ball_rule(n, R, order=8, angular=8, graded=64)
    r1 = verify_genclap(model, fld, dom, volume_rule=vrule)
    r2 = verify_gct(model, fld, dom, volume_rule=vrule)
    return [r1, make_report("genclap-vs-gct", r1.lhs / n, r2.rhs, 1e-8, "general-clapeyron-relation")]


def _genclap_body_load(p, ctx):
    b, c = p["b"], p["c"]
    model = make_body_load_1d(b)

    def y(x):
        x = np.asarray(x, dtype=float)
        return -0.5 * b * x * x + c * x

    def grad(x):
        x = np.asarray(x, dtype=float)
        return (-b * x + c)[..., None]

    fld = DeformationField(n=1, m=1, y=y, grad=grad, name="body-load")
    dom = Interval(0.0, 1.0)
    rep = verify_genclap(model, fld, dom, volume_rule=interval_rule(0.0, 1.0, 16))
    # hand integration of W = (c - b x)^2 / 2 + b (b x^2 / 2 - c x) over [0, 1]
    exact = 0.5 * (c * c - b * c + b * b / 3.0) + b * (b / 6.0 - c / 2.0)
    return [rep, make_report("body-load-energy", rep.lhs, exact, 1e-10, "general-clapeyron-relation")]


def _gct_shift(p, ctx):
    n = _n(p)
    lam, mu = p["lam"], p["mu"]
    model = make_linear_isotropic(lam, mu, n)
    fld = harmonic_gradient_field(n)
    dom = Ball(n, 1.0)
    a = p["shift_a"] * np.linspace(1.0, -0.5, n)
    b = p["shift_b"] * np.linspace(-1.0, 2.0, n)
    r0 = verify_gct(model, fld, dom)
    r1 = verify_gct(model, fld, dom, shift=(a, b))
    return [r0, r1, make_report("shift-invariance", r1.rhs, r0.rhs, 1e-10, "shifted-clapeyron")]


def _gct_interface_1d(p, ctx):
    pot = make_well_potential_1d(p["fa"], p["fb"], 1.0, p["tilt"])
    s = p["s"]
    fld = broken_extremal_1d(pot, p["sigma"], s)
    model = pot.to_model()
    dom = Interval(-1.0, 1.0)
    vrule = dom.volume_rule(splits=(s,))
    r0 = verify_gct(model, fld, dom, volume_rule=vrule)
    sig = interface_term(model, fld, check_traction=True)
    Fm, Fp = fld.extras["F_minus"], fld.extras["F_plus"]
    ps = float(pot.U(Fp) - pot.U(Fm)) - p["sigma"] * (Fp - Fm)
    return [r0, make_report("interface-term", sig, ps * s, 1e-12, "jump-driving-traction")]


def _example0_bar(p, ctx):
    pot = make_bar_potential(p["W0"], p["k"])
    res = bar_1d(pot, p["U0"], p["U1"])
    L = res.L_opt
    L2 = p["L_factor"] * L
    d2 = res.d2E_dL2(L)
    return [
        bound_report("stationary-length", abs(res.dE_dL(L)), 1e-8, "bar-optimal-length"),
        make_report("length-derivative", res.dE_dL(L2), res.pstar(L2), 1e-6, "bar-length-derivative"),
        make_report("second-derivative", d2, res.d2E_exact(L), 1e-6, "bar-second-variation"),
        make_report("second-derivative-positive", float(d2 > 0.0), 1.0, 0.0, "bar-second-variation"),
    ]


def _phom_hydrostatic(p, ctx):
    n, lam, mu, pr = _n(p), p["lam"], p["mu"], p["p"]
    model = make_linear_isotropic(lam, mu, n)
    fld = hydrostatic_ball_field(lam, mu, n, pr)
    dom = Ball(n, 1.0)
    kap = lam + 2.0 * mu / n
    closed = dom.measure * pr * pr / (2.0 * kap)
    r1, r2 = verify_phom(model, fld, dom, tol=1e-9)
    r3, r4 = verify_ppst_and_pi(model, fld, dom, tol=1e-9)
    lin = verify_linear_forms(lam, mu, fld, dom)
    return [
        make_report("hydrostatic-energy", r1.lhs, closed, 1e-9, "hydrostatic-energy"),
        make_report("classical-clapeyron-closed", lin[0].rhs, closed, 1e-9, "classical-clapeyron"),
        r1,
        r2,
        r3,
        r4,
    ]


def _phom_n_equals_p(p, ctx):
    lam, mu = p["lam"], p["mu"]
    model = make_linear_isotropic(lam, mu, 2)
    dom = Ball(2, 1.0)
    out = list(verify_phom(model, harmonic_gradient_field(2), dom, tol=1e-9))
    pm = make_power_p(2.0, 2)
    out.append(verify_phom(pm, affine_field(np.array([[1.0, 0.3], [-0.2, 0.8]])), dom, tol=1e-9)[1])
    out[-1].name = "power-affine-eshelby-flux"
    return out


def _linear_forms(p, ctx):
    n = _n(p)
    fld = harmonic_gradient_field(n, rotation=p["rotation"])
    reps = verify_linear_forms(p["lam"], p["mu"], fld, Ball(n, 1.0))
    model = make_linear_isotropic(p["lam"], p["mu"], n)
    worst = 0.0
    for x in (np.full(n, 0.1), np.linspace(-0.3, 0.4, n)):
        e, _ = euler_residuals(model, fld, x)
        worst = max(worst, float(np.max(np.abs(e))))
    reps.append(bound_report("equilibrium-residual", worst, 1e-6, "euler-lagrange"))
    return reps


def _incompressible(p, ctx):
    mu, g = p["mu"], p["gamma"]
    r = verify_incompressible(mu, g, p["pressure"])
    r0 = verify_incompressible(mu, g, 0.0)
    return [
        r,
        make_report("shear-energy", r.lhs, math.pi * 0.5 * g * g * mu, 1e-10, "constrained-clapeyron"),
        make_report("pressure-invariance", r.rhs, r0.rhs, 1e-10, "constrained-clapeyron"),
    ]


def _invariants_smooth(p, ctx):
    lam, mu = p["lam"], p["mu"]
    model = make_linear_isotropic(lam, mu, 2)
    fld = harmonic_gradient_field(2)
    out = []
    vals = []
    for R in (p["r1"], p["r2"]):
        rule = sphere_rule(2, R, ctx.order)
        J = j_integral(model, fld, rule)
        L = l_integral(model, fld, rule)
        M = m_integral(model, fld, rule)
        vals.append((J, L, M))
        out.append(bound_report(f"J-closed-r{R:g}", float(np.max(np.abs(J))), 1e-10, "j-integral"))
        out.append(bound_report(f"L-closed-r{R:g}", abs(float(L)), 1e-10, "l-integral"))
        out.append(bound_report(f"M-closed-r{R:g}", abs(float(M)), 1e-10, "m-integral"))
    return out


def _screw(p, ctx):
    mu, b = p["mu"], p["b"]
    model = make_dirichlet(mu, 2)
    fld = screw_dislocation_field(b)
    Ms, out = [], []
    for R in (p["r1"], p["r2"]):
        rule = sphere_rule(2, R, ctx.order)
        J = j_integral(model, fld, rule)
        M = m_integral(model, fld, rule)
        Ms.append(M)
        out.append(bound_report(f"J-r{R:g}", float(np.max(np.abs(J))), 1e-9, "j-integral"))
        out.append(make_report(f"M-r{R:g}", M, screw_m_closed(mu, b), 1e-9, "m-integral"))
    out.append(make_report("M-path-independence", Ms[0], Ms[1], 1e-9, "m-integral"))
    return out


def _crack(p, ctx):
    K, mu = p["K"], p["mu"]
    model = make_dirichlet(mu, 2)
    fld = crack_mode3_field(K, mu)
    Js, out = [], []
    for R in (p["r1"], p["r2"]):
        J = j_integral(model, fld, sphere_rule(2, R, 256 if ctx.order is None else ctx.order))
        Js.append(J[0])
        out.append(make_report(f"J1-r{R:g}", J[0], crack_j1_closed(K, mu), 1e-8, "j-integral"))
    out.append(make_report("J1-path-independence", Js[0], Js[1], 1e-9, "j-integral"))
    return out


def _pohozaev(p, ctx):
    n, q, R = _n(p), p["q"], p["R"]
    r1, r2, prof = verify_pohozaev(n, q, R)
    prof2 = pohozaev_shoot(n, q, 2.0 * R)
    rr = np.linspace(0.1, 1.9, 7) * R
    scale = 2.0 ** (-2.0 / (q - 1.0))
    dev = float(np.max(np.abs(prof2.u_fn(rr) - scale * prof.u_fn(rr / 2.0))))
    reps = [r1, r2, bound_report("scaling-symmetry", dev, 1e-8, "semilinear-scaling")]
    out = ctx.tsv_path("pohozaev_profile.tsv")
    if out is not None:
        r = np.linspace(0.0, R, 201)
        np.savetxt(out, np.column_stack([r, prof.u_fn(r), prof.du_fn(r)]), delimiter="\t", header="r\tu\tu_prime", comments="", fmt="%.17g")
    return reps


def _uniqueness(p, ctx):
    n, k, pp = _n(p), p["k"], int(p["p"])
    kk = Fraction(k).limit_denominator(10**6)
    verdict = uniqueness_verdict(n, pp, kk)
    gap = Fraction(1, pp) - Fraction(1, n) - 1 / kk
    expected = "unique" if gap > 0 else ("critical" if gap == 0 else "inconclusive")
    return [make_report(f"uniqueness-{verdict}", float(verdict == expected), 1.0, 0.0, "homogeneous-uniqueness-criterion")]


def _double_well(p):
    return make_double_well(p["fa"], p["fb"], _n(p), 1.0, p["tilt"])


def _radial_profile(p):
    model = _double_well(p)
    f0, beta, res = solve_interface_conditions(model)
    prof = shoot_rODE(model, f0, beta, r_max=p["r_max"])
    return model, prof, res


def _radial(p, ctx):
    n = _n(p)
    model, prof, res = _radial_profile(p)
    fld = prof.field()
    x = np.zeros((1, n))
    x[0, 0] = 1.0
    nu = x.copy()
    Fm = fld.jump.grad_minus(x)
    Fp = fld.jump.grad_plus(x)
    ps = float(np.abs(jump_pstar(model, Fm, Fp, nu, x=x, y=fld.y(x), tol=1e-8))[0])
    trac = float(np.linalg.norm(matvec(piola(model, x, fld.y(x), Fp) - piola(model, x, fld.y(x), Fm), nu)))
    worst = 0.0
    for r in (1.5, 3.0, 10.0):
        pt = np.zeros(n)
        pt[-1] = r
        e, es = euler_residuals(model, fld, pt)
        worst = max(worst, float(np.max(np.abs(e))), float(np.max(np.abs(es))))
    out = ctx.tsv_path("radial_profile.tsv")
    if out is not None:
        prof.to_tsv(out)
    return [
        bound_report("common-tangent", float(np.max(np.abs(res))), 1e-10, "maxwell-conditions"),
        bound_report("interface-pstar", ps, 1e-8, "interface-driving-traction"),
        bound_report("interface-traction", trac, 1e-8, "traction-continuity"),
        make_report("far-field-exponent", prof.alpha, n - 1.0, 0.05, "indicial-exponent"),
        bound_report("euler-residual", worst, 1e-6, "radial-euler-lagrange"),
    ]


def _qw(p, ctx):
    model, prof, _ = _radial_profile(p)
    return verify_qw(model, prof, radii=(1.5, 2.0, 4.0))


def _metastability(p, ctx):
    model, prof, _ = _radial_profile(p)
    R = p["R"]
    f1, f2 = composite_pair(prof, R)
    reps, chk = energy_increment(model, f1, f2, Ball(_n(p), R))
    reps.append(bound_report("rank-one-inequality", max(0.0, chk.inequality_rhs - chk.inequality_lhs), 1e-10, "rank-one-increment-bound"))
    return reps


def _shock(p):
    U = make_dynamic_potential(p["c2"], p["c4"])
    return build_shock(U, p["F_minus"], p["F_plus"], p["v_plus"], p["s0"])


def _shock_rh(p, ctx):
    sol = _shock(p)
    ps = shock_pstar(sol)
    out = ctx.tsv_path("shock_state.tsv")
    if out is not None:
        sol.to_tsv(out, p["t"], p["a"], p["b"])
    return [
        bound_report("rankine-hugoniot", sol.rh_residual(), 1e-12, "shock-momentum-balance"),
        bound_report("hadamard", sol.hadamard_residual(), 1e-12, "shock-kinematic-compatibility"),
        make_report("spacetime-pstar", spacetime_pstar(sol), -ps, 1e-12, "shock-driving-traction"),
        make_report("dissipation-sign", float(sol.V * ps >= 0.0), 1.0, 0.0, "shock-dissipation"),
    ]


def _shock_pstar_value(p, ctx):
    sol = _shock(p)
    ps = shock_pstar(sol)
    # [U] - {P}[F] for U = c2 F^2/2 + c4 F^4/4 written out by hand
    c2, c4, a, b = p["c2"], p["c4"], p["F_minus"], p["F_plus"]
    jU = 0.5 * c2 * (b * b - a * a) + 0.25 * c4 * (b**4 - a**4)
    mP = 0.5 * (c2 * (a + b) + c4 * (a**3 + b**3))
    return [
        make_report("pstar", ps, jU - mP * (b - a), 1e-12, "shock-driving-traction"),
        make_report("shock-speed", sol.V, math.sqrt((c2 * (b - a) + c4 * (b**3 - a**3)) / (b - a)), 1e-12, "shock-momentum-balance"),
    ]


def _shock_energy(p, ctx):
    sol = _shock(p)
    iv = (p["a"], p["b"])
    r = verify_energy_balance(sol, iv, p["t"], speeds=(p["va"], p["vb"]))
    rate = energy_rate_closed(sol)
    flux = sol.P_plus * sol.v_plus - sol.P_minus * sol.v_minus
    moving = sol.energy_density("+") * p["vb"] - sol.energy_density("-") * p["va"]
    return [r, make_report("energy-rate-closed", r.lhs, rate + moving, 1e-10, "shock-energy-balance"), make_report("flux-form", r.rhs - flux - moving, sol.V * spacetime_pstar(sol), 1e-12, "shock-energy-balance")]


def _shock_dynclap(p, ctx):
    sol = _shock(p)
    return [verify_dynamic_clapeyron(sol, (p["a"], p["b"]), t) for t in (p["t"], 2.0 * p["t"], 4.0 * p["t"])]


def _shock_sweep(p, ctx):
    U = make_dynamic_potential(p["c2"], p["c4"])
    sols, vals = admissible_sweep(U, count=int(p["count"]), seed=int(p["seed"]))
    rh = max(s.rh_residual() for s in sols)
    return [
        bound_report("min-pstar-nonnegative", max(0.0, -float(np.min(vals))), 0.0, "shock-dissipation"),
        bound_report("sweep-rankine-hugoniot", rh, 1e-12, "shock-momentum-balance"),
    ]


def _void(p) -> VoidScenario:
    return VoidScenario(_n(p), p["lam"], p["mu"], p["p"])


def _void_linear(p, ctx):
    scn = _void(p)
    quad, closed = delta_e_linear(scn, ctx.order)
    return [
        make_report("void-release-linear", quad, closed, 1e-8, "linear-void-release"),
        bound_report("cavity-traction", traction_residual(scn, ctx.order), 1e-10, "traction-free-cavity"),
    ]


def _void_gct(p, ctx):
    scn = _void(p)
    quad, _ = delta_e_linear(scn, ctx.order)
    dW, dP = delta_e_gct(scn, ctx.order)
    return [
        make_report("void-release-nonlinear", dW, quad, 1e-8, "void-release-reconciliation"),
        make_report("void-eshelby-form", dP, dW, 1e-10, "configurational-work-form"),
    ]


def _void_griffith(p, ctx):
    scn = _void(p)
    g = griffith_discrepancy(scn, radii=(10.0, 20.0, 40.0))
    out = [
        make_report("griffith-hydrostatic", g.isotropic, g.hydrostatic, 1e-8, "griffith-discrepancy-isotropic"),
        make_report("griffith-index-form", g.general, g.isotropic, 1e-8, "griffith-discrepancy-general"),
        make_report("griffith-sphere-quadrature", g.sphere, g.isotropic, 1e-8, "griffith-discrepancy-general"),
    ]
    for R, v in g.truncated.items():
        out.append(make_report(f"griffith-truncated-R{R:g}", v, g.hydrostatic, 1e-4, "griffith-discrepancy-limit"))
    return out


def _void_rd(p, ctx):
    return list(rice_drucker_linear(_void(p), ctx.order))


def _polar(p, ctx):
    rng = np.random.default_rng(int(p["seed"]))
    n = _n(p)
    return [
        bound_report(f"polar-vanishing-{i}", abs(check_polar_vanishing(rng.normal(size=(n, n)), rng.normal(size=(n, n)), n, ctx.order)), 1e-10, "polarization-moment")
        for i in range(int(p["count"]))
    ]


def _void_sweep(p, ctx):
    rows = [(n, lam, mu, pr) for n in (2, 3) for lam in (0.5, 1.0, 2.0) for mu in (0.5, 1.0) for pr in (0.5, 1.0, 2.0)]
    recs = void_sweep(rows)
    out = ctx.tsv_path("void_sweep.csv")
    if out is not None:
        write_sweep_csv(recs, out)
    return [bound_report("void-sweep-residual", max(r["residuals"] for r in recs), 1e-8, "void-release-reconciliation")]


def _smooth_field(n: int):
    def y(x):
        x = np.asarray(x, dtype=float)
        return x + 0.1 * np.sin(np.roll(x, -1, axis=-1)) + 0.05 * x * x

    def grad(x):
        x = np.asarray(x, dtype=float)
        G = np.zeros(x.shape[:-1] + (n, n))
        for i in range(n):
            G[..., i, i] = 1.0 + 0.1 * x[..., i]
            G[..., i, (i + 1) % n] += 0.1 * np.cos(x[..., (i + 1) % n])
        return G

    return DeformationField(n=n, m=n, y=y, grad=grad, name="smooth")


def _noether(p, ctx):
    n = _n(p)
    model = make_power_p(p["p"], n)
    fld = _smooth_field(n)
    x = np.linspace(0.2, 0.5, n)
    hs = (4e-2, 2e-2, 1e-2)
    d = [float(np.max(np.abs(noether_defect(model, fld, x, h)))) for h in hs]
    ratio = d[1] / d[2]
    return [
        bound_report("noether-defect", d[-1], 1e-3, "noether-identity"),
        make_report("noether-richardson", ratio, 4.0, 0.1, "noether-identity", notes=f"defects {d}"),
    ]


def _parametric(p, ctx):
    rng = np.random.default_rng(int(p["seed"]))
    n, m = _n(p), int(p["m"])
    area = make_area_functional(n, m)
    N = 50
    x = rng.normal(size=(N, n))
    y = rng.normal(size=(N, m))
    F = rng.normal(size=(N, m, n))
    ps = float(np.max(np.abs(eshelby(area, x, y, F))))
    base = make_linear_isotropic(1.0, 1.0, n)
    z = rng.normal(size=(N, 2 * n))
    Fh = np.concatenate([np.eye(n) + 0.2 * rng.normal(size=(N, n, n)), rng.normal(size=(N, n, n))], axis=-2)
    Q = np.eye(n) + 0.2 * rng.normal(size=(N, n, n))
    Q[np.linalg.det(Q) < 0, 0, :] *= -1.0
    return [
        bound_report("parametric-eshelby", ps, 1e-12, "parametric-lagrangian"),
        bound_report("extended-eshelby", extended_eshelby_defect(base, z, Fh), 1e-12, "extended-piola"),
        bound_report("q-homogeneity", qhom_defect(base, z, Fh, Q), 1e-12, "q-homogeneity"),
    ]


def _graph(p, ctx):
    rng = np.random.default_rng(int(p["seed"]))
    n = _n(p)
    model = make_area_functional(n, n) if p["parametric"] else make_linear_isotropic(1.0, 1.0, n)
    N = 50
    x = rng.normal(size=(N, n))
    y = rng.normal(size=(N, n))
    F = np.eye(n) + 0.3 * rng.normal(size=(N, n, n))
    nu = rng.normal(size=(N, n))
    nu /= np.linalg.norm(nu, axis=-1, keepdims=True)
    tau = rng.normal(size=(N, n))
    tau -= np.sum(tau * nu, axis=-1, keepdims=True) * nu
    tau /= np.linalg.norm(tau, axis=-1, keepdims=True)
    r = check_graph_orthogonality(model, x, y, F, tau, nu)
    scale = 1.0 + float(np.max(np.abs(piola(model, x, y, F))))
    return [bound_report("graph-orthogonality", float(np.max(np.abs(r))) / scale, 1e-12, "graph-orthogonality")]


# ---------------------------------------------------------------- catalog

_E1 = {"n": 3, "a": 1.0, "R": 1.0, "panels": 64}
_LIN = {"n": 3, "lam": 1.0, "mu": 1.0}
_DW = {"n": 3, "fa": 1.0, "fb": 2.0, "tilt": 0.0, "r_max": 200.0}
_SHOCK = {"c2": 1.0, "c4": 1.0, "F_minus": 1.0, "F_plus": 0.0, "v_plus": 0.0, "s0": 0.0, "t": 0.5, "a": -1.0, "b": 2.0}
_VOID = {"n": 3, "lam": 1.0, "mu": 1.0, "p": 1.0}

SCENARIOS: Dict[str, Scenario] = {}
ALIASES = {"gct-example1": "example1-gct"}


def _register(name, description, anchor, defaults, runner, operations=()):
    SCENARIOS[name] = Scenario(name, description, anchor, dict(defaults), runner, tuple(operations))


_register("example1-gct", "Prestressed ball: GCT boundary form against volume energy", "generalized-clapeyron", _E1, _example1, ("verify_gct", "example1_profile", "example1_energy"))
_register("example1-genclap", "Prestressed ball through the general Clapeyron relation", "general-clapeyron-relation", {"n": 3, "a": 1.0, "R": 1.0}, _example1_genclap, ("verify_genclap",))
_register("genclap-body-load", "1D bar under body load, polynomial oracle", "general-clapeyron-relation", {"b": 1.0, "c": 0.5}, _genclap_body_load, ("verify_genclap",))
_register("gct-shift", "Shifted GCT on a harmonic equilibrium", "shifted-clapeyron", dict(_LIN, shift_a=0.7, shift_b=-1.3), _gct_shift, ("verify_gct",))
_register("gct-interface-1d", "Two-phase 1D extremal: interface term of the GCT", "jump-driving-traction", {"fa": 1.0, "fb": 2.0, "tilt": 0.0, "sigma": 0.02, "s": 0.3}, _gct_interface_1d, ("verify_gct", "jump_pstar"))
_register("example0-bar", "Optimal bar length from P* = 0", "bar-optimal-length", {"W0": 1.0, "k": 1.0, "U0": 0.0, "U1": 1.0, "L_factor": 1.5}, _example0_bar, ("bar_1d",))
_register("phom-hydrostatic", "Hydrostatic ball: p-homogeneous forms and the conservation law", "p-homogeneous-piola-form", dict(_LIN, p=1.0), _phom_hydrostatic, ("verify_phom", "verify_ppst_and_pi"))
_register("phom-n-equals-p", "Eshelby flux vanishes when n = p", "eshelby-flux-vanishes-n-equals-p", {"lam": 1.0, "mu": 1.0}, _phom_n_equals_p, ("verify_phom",))
_register("linear-forms", "Linear elasticity variants on the harmonic-gradient family", "linear-gct-rotation-split", dict(_LIN, rotation=0.4), _linear_forms, ("verify_linear_forms", "euler_residuals"))
_register("incompressible-shear", "Constrained Clapeyron relation for incompressible shear", "constrained-clapeyron", {"mu": 1.0, "gamma": 1.0, "pressure": 5.0}, _incompressible, ("verify_incompressible",))
_register("invariant-integrals-smooth", "J, L, M vanish on closed contours of a smooth equilibrium", "j-integral", {"lam": 1.0, "mu": 1.0, "r1": 0.5, "r2": 1.0}, _invariants_smooth, ("j_integral", "l_integral", "m_integral"))
_register("screw-dislocation", "Screw dislocation: J = 0 and M path independent", "m-integral", {"mu": 1.0, "b": 1.0, "r1": 0.5, "r2": 2.0}, _screw, ("j_integral", "m_integral"))
_register("crack-mode3", "Antiplane crack: J1 against the K-field value", "j-integral", {"K": 1.0, "mu": 1.0, "r1": 0.5, "r2": 2.0}, _crack, ("j_integral",))
_register("pohozaev", "Both Pohozaev identities for the Lane-Emden ground state", "pohozaev-first", {"n": 3, "q": 3.0, "R": 1.0}, _pohozaev, ("verify_pohozaev", "pohozaev_shoot"))
_register("uniqueness-criterion", "Homogeneous uniqueness criterion 1/n + 1/k vs 1/p", "homogeneous-uniqueness-criterion", {"n": 3, "p": 2, "k": 6.0}, _uniqueness, ("uniqueness_verdict",))
_register("radial-double-well", "Radial phase boundary: Maxwell data, shooting and far field", "indicial-exponent", _DW, _radial, ("solve_interface_conditions", "shoot_rODE", "jump_pstar", "euler_residuals"))
_register("qw-probe", "Radial envelope formula against ball-average energy", "radial-envelope-formula", _DW, _qw, ("qw_probe",))
_register("metastability", "Energy increment of the affine vs radial pair", "energy-increment-first", dict(_DW, R=3.0), _metastability, ("energy_increment",))
_register("shock-rh", "Shock jump conditions and space-time driving traction", "shock-momentum-balance", _SHOCK, _shock_rh, ("build_shock", "shock_pstar"))
_register("shock-pstar", "Driving traction of the quartic benchmark shock", "shock-driving-traction", _SHOCK, _shock_pstar_value, ("shock_pstar",))
_register("shock-energy-balance", "Energy balance of an interval containing the shock", "shock-energy-balance", dict(_SHOCK, va=0.0, vb=0.0), _shock_energy, ("verify_energy_balance",))
_register("shock-dynamic-clapeyron", "Dynamic Clapeyron relation in one dimension", "dynamic-clapeyron", dict(_SHOCK, b=4.0), _shock_dynclap, ("verify_dynamic_clapeyron",))
_register("shock-lax-sweep", "p* >= 0 on random Lax-admissible shocks", "shock-dissipation", {"c2": 1.0, "c4": 1.0, "count": 100, "seed": 3}, _shock_sweep, ("admissible_sweep",))
_register("void-linear", "Energy released by a void, linear formula", "linear-void-release", _VOID, _void_linear, ("delta_e_linear", "linear_exterior"))
_register("void-gct", "Energy released by a void, GCT and Eshelby forms", "void-release-reconciliation", _VOID, _void_gct, ("delta_e_gct",))
_register("void-griffith", "Griffith discrepancy: closed forms and truncated contour", "griffith-discrepancy-limit", _VOID, _void_griffith, ("griffith_discrepancy",))
_register("void-rice-drucker", "Rice-Drucker linear form and void creation work", "rice-drucker-linear", _VOID, _void_rd, ("rice_drucker_linear",))
_register("polar-vanishing", "Sphere moment identity for arbitrary P0, S", "polarization-moment", {"n": 3, "seed": 11, "count": 3}, _polar, ("check_polar_vanishing",))
_register("void-sweep", "Void release over a grid of moduli and loads", "void-release-reconciliation", {}, _void_sweep, ("void_sweep",))
_register("noether-check", "Noether identity by finite differences with step halving", "noether-identity", {"n": 3, "p": 3.0}, _noether, ("noether_defect",))
_register("parametric-eshelby", "P* = 0 for parametric densities; Q-homogeneity", "parametric-lagrangian", {"n": 2, "m": 3, "seed": 5}, _parametric, ("extended_eshelby_defect", "qhom_defect"))
_register("graph-orthogonality", "Graph-orthogonality of the stress pair", "graph-orthogonality", {"n": 3, "seed": 9, "parametric": 0.0}, _graph, ("check_graph_orthogonality",))


# ---------------------------------------------------------------- running


def resolve(name: str) -> Scenario:
    key = ALIASES.get(name, name)
    if key not in SCENARIOS:
        raise ConfigError(f"unknown scenario '{name}'; valid names: {', '.join(sorted(SCENARIOS))}")
    return SCENARIOS[key]


def _coerce(key: str, value) -> float:
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"parameter {key} must be a number, got {value!r}") from None
    if key in INT_PARAMS:
        if v != int(v):
            raise ConfigError(f"parameter {key} must be an integer, got {value!r}")
        return int(v)
    return v


def resolve_params(scn: Scenario, overrides: Mapping[str, object]) -> Dict[str, float]:
    params = dict(scn.defaults)
    for k, v in overrides.items():
        if k not in params:
            raise ConfigError(f"scenario '{scn.name}' has no parameter '{k}'; known: {', '.join(sorted(params)) or 'none'}")
        params[k] = _coerce(k, v)
    return params


def _retol(rep: IdentityReport, tol: float) -> IdentityReport:
    return make_report(rep.name, rep.lhs, rep.rhs, tol, rep.anchor, rep.scenario, rep.notes)


def run(config: ScenarioConfig) -> RunReport:
    """Execute one scenario; errors become a failing report with the matching exit code."""
    scn = resolve(config.scenario)
    params = resolve_params(scn, config.params)
    ctx = Context(tsv_dir=config.tsv_dir, order=config.order)
    t0 = time.perf_counter()
    code, err = EXIT_PASS, ""
    reps: List[IdentityReport] = []
    try:
        with np.errstate(all="ignore"):
            reps = scn.runner(dict(params), ctx)
    except (SolverError, IntegrationError) as exc:
        code, err = EXIT_SOLVER, f"{exc.code}: {exc}"
    except ArtifactError as exc:
        code, err = EXIT_CONFIG, f"{exc.code}: {exc}"
    ms = 0.0 if config.reproducible else (time.perf_counter() - t0) * 1e3
    for r in reps:
        r.scenario = scn.name
    if config.tol is not None:
        reps = [_retol(r, config.tol) for r in reps]
    passed = code == EXIT_PASS and bool(reps) and all(r.passed for r in reps)
    if code == EXIT_PASS and not passed:
        code = EXIT_FAIL
    return RunReport(__version__, scn.name, params, reps, ms, passed, code, err)


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return "%.17g" % v if math.isfinite(v) else "null"
    if isinstance(v, str):
        return json.dumps(v)
    if v is None:
        return "null"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with floats at 17 significant digits and keys in insertion order."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj) + "\n" + end + "]"
    return _fmt(obj)


def write_report(rep: RunReport, path: Optional[Path]) -> str:
    text = dumps(rep.to_dict()) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


SWEEP_HEADER = ["value", "lhs", "rhs", "rel_err", "pass"]


def sweep(config: ScenarioConfig, parameter: str, values: Sequence[float], jobs: int = 1) -> Tuple[List[list], int]:
    """One row per value from the scenario's first report; rows keep the input order."""
    scn = resolve(config.scenario)
    if parameter not in scn.defaults:
        raise ConfigError(f"scenario '{scn.name}' has no parameter '{parameter}'")

    def one(v):
        cfg = ScenarioConfig(config.scenario, dict(config.params, **{parameter: v}), config.order, config.tol, None, None, True)
        return run(cfg)

    if jobs > 1 and len(values) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            reports = list(ex.map(one, values))
    else:
        reports = [one(v) for v in values]
    rows, code = [], EXIT_PASS
    for v, rep in zip(values, reports):
        code = max(code, rep.exit_code)
        if rep.identities:
            r = rep.identities[0]
            rows.append([v, r.lhs, r.rhs, r.rel_err, rep.passed])
        else:
            rows.append([v, math.nan, math.nan, math.nan, False])
    return rows, code


def write_sweep(rows: List[list], path: Optional[Path]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for v, lhs, rhs, rel, ok in rows:
        w.writerow(["%.17g" % float(v), "%.17g" % lhs, "%.17g" % rhs, "%.17g" % rel, "true" if ok else "false"])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def catalog_lines() -> List[str]:
    w = max(len(k) for k in SCENARIOS)
    return [f"{s.name:<{w}}  {s.anchor:<36}  {s.description}" for s in SCENARIOS.values()]


# ---------------------------------------------------------------- command line


def _parse_set(items: Sequence[str]) -> Dict[str, str]:
    out = {}
    for it in items or ():
        if "=" not in it:
            raise ConfigError(f"--set expects key=value, got {it!r}")
        k, v = it.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return data


def _config_from_args(args) -> ScenarioConfig:
    file_cfg = _load_config(args.config)
    params = {k: v for k, v in file_cfg.items() if k not in ("order", "tol")}
    params.update(_parse_set(args.set))
    order = args.order if args.order is not None else file_cfg.get("order")
    tol = args.tol if args.tol is not None else file_cfg.get("tol")
    return ScenarioConfig(
        scenario=args.scenario,
        params=params,
        order=None if order is None else int(order),
        tol=None if tol is None else float(tol),
        out=Path(args.out) if getattr(args, "out", None) else None,
        tsv_dir=Path(args.tsv) if getattr(args, "tsv", None) else None,
        reproducible=getattr(args, "reproducible", False),
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="clapeyron", description="Verify Clapeyron-type identities on exact and computed extremals.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="list scenarios")

    def common(p):
        p.add_argument("scenario")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE")
        p.add_argument("--config", help="JSON file with parameter values")
        p.add_argument("--order", type=int, help="angular quadrature order override")
        p.add_argument("--tol", type=float, help="tolerance override for every identity")

    r = sub.add_parser("run", help="run one scenario")
    common(r)
    r.add_argument("--out", help="JSON report path (default: stdout)")
    r.add_argument("--tsv", help="directory for profile exports")
    r.add_argument("--reproducible", action="store_true", help="write runtime_ms as 0")

    s = sub.add_parser("sweep", help="run a scenario over parameter values")
    common(s)
    s.add_argument("--param", required=True)
    s.add_argument("--values", required=True, help="comma separated; may be empty")
    s.add_argument("--out", help="CSV path (default: stdout)")
    s.add_argument("--jobs", type=int, default=1)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list":
            print("\n".join(catalog_lines()))
            return EXIT_PASS
        cfg = _config_from_args(args)
        if args.command == "run":
            rep = run(cfg)
            text = write_report(rep, cfg.out)
            if cfg.out is None:
                sys.stdout.write(text)
            if rep.error:
                print(rep.error, file=sys.stderr)
            return rep.exit_code
        vals = [_coerce(args.param, v) for v in args.values.split(",") if v.strip()]
        rows, code = sweep(cfg, args.param, vals, args.jobs)
        text = write_sweep(rows, cfg.out)
        if cfg.out is None:
            sys.stdout.write(text)
        return code
    except ConfigError as exc:
        print(f"config: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
