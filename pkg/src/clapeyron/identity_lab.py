"""Left- and right-hand sides of the static identities, packaged as residual reports."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from .energy_models import make_shear_neo
from .errors import ContractViolation, ModelError
from .fields_domains import (
    Ball,
    DeformationField,
    JumpSurface,
    QuadratureRule,
    affine_field,
    ball_rule,
    integrate,
    sphere_rule,
)
from .radial_solver import ScalarRadialProfile, RadialProfile, pohozaev_shoot
from .tensor_core import (
    EnergyModel,
    cofactor,
    det,
    energy,
    eshelby,
    excess,
    inner,
    jump_pstar,
    matvec,
    partial_x,
    partial_y,
    piola,
)

TOL_CLOSED = 1e-8
TOL_SHOOTING = 1e-5


@dataclass
class IdentityReport:
    name: str
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    tol: float
    passed: bool
    anchor: str = ""
    scenario: str = ""
    notes: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "tol": self.tol,
            "pass": self.passed,
            "paper_anchor": self.anchor,
        }


def make_report(name: str, lhs, rhs, tol: float, anchor: str = "", scenario: str = "", notes: str = "") -> IdentityReport:
    lhs = float(lhs)
    rhs = float(rhs)
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        return IdentityReport(name, lhs, rhs, math.inf, math.inf, tol, False, anchor, scenario, notes or "non-finite side")
    abs_err = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    rel_err = abs_err / scale if scale > 0 else 0.0
    return IdentityReport(name, lhs, rhs, abs_err, rel_err, tol, abs_err <= tol or rel_err <= tol, anchor, scenario, notes)


def bound_report(name: str, value, bound: float, anchor: str = "", notes: str = "") -> IdentityReport:
    """Report for a quantity that must vanish: lhs = value, rhs = 0, tolerance = bound."""
    return make_report(name, value, 0.0, bound, anchor, notes=notes)


# ---------------------------------------------------------------- shared pieces


def _dot(a, b):
    return np.sum(a * b, axis=-1)


def _field_state(model: EnergyModel, fld: DeformationField, x):
    y = fld.y(x)
    F = fld.grad(x)
    return y, F, energy(model, x, y, F), piola(model, x, y, F), eshelby(model, x, y, F)


def _volume_rule(domain, fld: DeformationField, rule: Optional[QuadratureRule], **kw) -> QuadratureRule:
    if rule is not None:
        return rule
    splits = ()
    if fld.jump is not None and fld.jump.kind == "sphere":
        splits = (fld.jump.radius,)
    return domain.volume_rule(splits=splits, **kw)


def volume_energy(model, fld, rule) -> float:
    return integrate(lambda x: energy(model, x, fld.y(x), fld.grad(x)), rule)


def boundary_terms(model, fld, rule, a=None, b=None) -> Tuple[float, float]:
    """(oint P n . (y - b), oint P* n . (x - a))."""

    def f(x, nu):
        y, F, W, P, Ps = _field_state(model, fld, x)
        ya = y if b is None else y - b
        xa = x if a is None else x - a
        return np.stack([_dot(matvec(P, nu), ya), _dot(matvec(Ps, nu), xa)], axis=-1)

    out = integrate(f, rule)
    return float(out[0]), float(out[1])


def interface_term(model, fld, a=None, order: Optional[int] = None, check_traction: bool = False) -> float:
    """int_Sigma p* (n . (x - a)) over the field's jump surface (0 if none)."""
    jump = fld.jump
    if jump is None:
        return 0.0
    rule = jump.rule(fld.n, order)

    def f(x, nu):
        Fm = jump.grad_minus(x)
        Fp = jump.grad_plus(x)
        y = fld.y(x)
        ps = jump_pstar(model, Fm, Fp, nu, x=x, y=y, tol=1e-8, check_traction=check_traction)
        xa = x if a is None else x - a
        return ps * _dot(nu, xa)

    return integrate(f, rule)


def _explicit_xy_free(model, fld, rule) -> bool:
    """Probe W_x and W_y at the boundary nodes, on the field and on a perturbed gradient.

    The perturbation matters: a traction-free boundary can hide an explicit
    x dependence when only the field's own gradient is probed.
    """
    x = rule.nodes
    y, F = fld.y(x), fld.grad(x)
    bump = 0.25 * np.ones(F.shape[-2:]) + 0.1 * np.arange(F.shape[-2] * F.shape[-1]).reshape(F.shape[-2:])
    for G in (F, F + bump):
        try:
            wx = partial_x(model, x, y, G, allow_fd=True)
            wy = partial_y(model, x, y, G, allow_fd=True)
        except ModelError:
            return False
        scale = 1.0 + float(np.max(np.abs(energy(model, x, y, G))))
        if float(np.max(np.abs(wx), initial=0.0)) > 1e-7 * scale or float(np.max(np.abs(wy), initial=0.0)) > 1e-7 * scale:
            return False
    return True


# ---------------------------------------------------------------- Clapeyron family


def verify_gct(
    model: EnergyModel,
    fld: DeformationField,
    domain,
    shift: Optional[Tuple[Sequence[float], Sequence[float]]] = None,
    volume_rule: Optional[QuadratureRule] = None,
    boundary_rule: Optional[QuadratureRule] = None,
    tol: float = TOL_CLOSED,
    interface_order: Optional[int] = None,
) -> IdentityReport:
    """int W = (1/n) oint {P n . y + P* n . x} - (1/n) int_Sigma p* (n . x).

    With ``shift = (a, b)`` the boundary and interface terms use x - a and
    y - b, which is legitimate only when W does not depend on x or y.
    """
    if not model.scale_free:
        raise ContractViolation(f"model '{model.name}' is not scale free; the identity does not apply")
    n = model.n
    vrule = _volume_rule(domain, fld, volume_rule)
    brule = boundary_rule if boundary_rule is not None else domain.boundary_rule()
    a = b = None
    if shift is not None:
        if not _explicit_xy_free(model, fld, brule):
            raise ContractViolation("shifted form needs a density without explicit x or y dependence")
        a = np.asarray(shift[0], dtype=float)
        b = np.asarray(shift[1], dtype=float)
    lhs = volume_energy(model, fld, vrule)
    py, px = boundary_terms(model, fld, brule, a, b)
    sig = interface_term(model, fld, a, interface_order)
    rhs = (py + px - sig) / n
    return make_report("gct-shifted" if shift is not None else "gct", lhs, rhs, tol, "generalized-clapeyron")


def verify_genclap(
    model: EnergyModel,
    fld: DeformationField,
    domain,
    volume_rule: Optional[QuadratureRule] = None,
    boundary_rule: Optional[QuadratureRule] = None,
    tol: float = TOL_CLOSED,
) -> IdentityReport:
    """n int W = -int {W_x . x + W_y . y} + oint {P n . y + P* n . x} - int_Sigma p* (n . x)."""
    n = model.n
    vrule = _volume_rule(domain, fld, volume_rule)
    brule = boundary_rule if boundary_rule is not None else domain.boundary_rule()

    have = model.W_x is not None and model.W_y is not None
    if not have and not model.scale_free:
        raise ModelError(f"model '{model.name}' lacks W_x or W_y evaluators needed for the general relation")

    def f(x):
        y, F = fld.y(x), fld.grad(x)
        W = energy(model, x, y, F)
        if have:
            src = _dot(partial_x(model, x, y, F), x) + _dot(partial_y(model, x, y, F), y)
        else:
            # scale-free densities satisfy W_x . x + W_y . y = 0 pointwise
            src = np.zeros_like(W)
        return np.stack([n * W, src], axis=-1)

    vol = integrate(f, vrule)
    py, px = boundary_terms(model, fld, brule)
    sig = interface_term(model, fld)
    return make_report("genclap", vol[0], -vol[1] + py + px - sig, tol, "general-clapeyron-relation")


def verify_phom(
    model: EnergyModel,
    fld: DeformationField,
    domain,
    volume_rule: Optional[QuadratureRule] = None,
    boundary_rule: Optional[QuadratureRule] = None,
    tol: float = TOL_CLOSED,
) -> Tuple[IdentityReport, IdentityReport]:
    """int W = (1/p) oint P n . y, and int W = oint P* n . x / (n - p) (or oint P* n . x = 0 when n = p)."""
    p = model.p_hom
    if p is None:
        raise ContractViolation(f"model '{model.name}' has no homogeneity degree")
    n = model.n
    vrule = _volume_rule(domain, fld, volume_rule)
    brule = boundary_rule if boundary_rule is not None else domain.boundary_rule()
    E = volume_energy(model, fld, vrule)
    py, px = boundary_terms(model, fld, brule)
    r1 = make_report("phom-piola", E, py / p, tol, "p-homogeneous-piola-form")
    if n != p:
        r2 = make_report("phom-eshelby", E, px / (n - p), tol, "p-homogeneous-eshelby-form")
    else:
        r2 = make_report("phom-eshelby-n-equals-p", px, 0.0, tol, "eshelby-flux-vanishes-n-equals-p")
    return r1, r2


def _fd_divergence(vec_field: Callable, x: np.ndarray, h: float) -> np.ndarray:
    """Central-difference divergence of a batched vector field at points x (N, n)."""
    n = x.shape[-1]
    div = np.zeros(x.shape[0])
    for j in range(n):
        e = np.zeros(n)
        e[j] = h
        div += (vec_field(x + e)[:, j] - vec_field(x - e)[:, j]) / (2.0 * h)
    return div


def interior_points(n: int, R: float, count: int, seed: int = 7, r_min: float = 0.0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    d = rng.normal(size=(count, n))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    rad = r_min + (0.9 * R - r_min) * rng.random(count) ** (1.0 / n)
    return d * rad[:, None]


def verify_ppst_and_pi(
    model: EnergyModel,
    fld: DeformationField,
    domain,
    boundary_rule: Optional[QuadratureRule] = None,
    tol: float = TOL_CLOSED,
    points: int = 50,
    h: float = 1e-4,
    div_tol: float = 1e-6,
) -> Tuple[IdentityReport, IdentityReport]:
    """(1/p) oint P n . y = oint P* n . x / (n - p), and div(p P*^T x - (n - p) P^T y) = 0."""
    p = model.p_hom
    if p is None or not model.scale_free:
        raise ContractViolation("the cross relation needs a scale-free p-homogeneous model")
    n = model.n
    if n == p:
        raise ContractViolation("the cross relation needs n != p")
    brule = boundary_rule if boundary_rule is not None else domain.boundary_rule()
    py, px = boundary_terms(model, fld, brule)
    r1 = make_report("ppst", py / p, px / (n - p), tol, "piola-eshelby-cross-relation")

    def V(x):
        y, F, W, P, Ps = _field_state(model, fld, x)
        return p * np.einsum("...ji,...j->...i", Ps, x) - (n - p) * np.einsum("...ji,...j->...i", P, y)

    R = getattr(domain, "R", 1.0)
    pts = interior_points(n, R, points)
    div = _fd_divergence(V, pts, h)
    r2 = bound_report("conservation-law-divergence", float(np.max(np.abs(div))), div_tol, "scaling-conservation-law")
    return r1, r2


def _linear_state(lam, mu, fld, x):
    G = fld.grad(x)
    u = fld.y(x)
    n = G.shape[-1]
    e = 0.5 * (G + np.swapaxes(G, -1, -2))
    w = 0.5 * (G - np.swapaxes(G, -1, -2))
    t = np.trace(e, axis1=-2, axis2=-1)
    s = lam * t[..., None, None] * np.eye(n) + 2.0 * mu * e
    We = 0.5 * inner(s, e)
    return u, G, e, w, s, We


def verify_linear_forms(
    lam: float,
    mu: float,
    fld: DeformationField,
    domain,
    volume_rule: Optional[QuadratureRule] = None,
    boundary_rule: Optional[QuadratureRule] = None,
    tol: float = TOL_CLOSED,
    points: int = 50,
    h: float = 1e-4,
    div_tol: float = 1e-6,
) -> List[IdentityReport]:
    """Classical Clapeyron, its Eshelby form, the rotation-split form, the boundary relation and its local version."""
    n = fld.n
    vrule = volume_rule if volume_rule is not None else domain.volume_rule()
    brule = boundary_rule if boundary_rule is not None else domain.boundary_rule()

    def vol(x):
        return _linear_state(lam, mu, fld, x)[5]

    def bnd(x, nu):
        u, G, e, w, s, We = _linear_state(lam, mu, fld, x)
        sn = matvec(s, nu)
        xn = _dot(x, nu)
        return np.stack(
            [
                _dot(sn, u),
                _dot(sn, matvec(w, x)),
                _dot(sn, matvec(e, x)),
                We * xn,
            ],
            axis=-1,
        )

    E = integrate(vol, vrule)
    su, swx, sex, wxn = (float(v) for v in integrate(bnd, brule))
    reports = [
        make_report("classical-clapeyron", E, 0.5 * su, tol, "classical-clapeyron"),
        make_report("linear-gct", E, (su - swx - sex + wxn) / n, tol, "linear-gct-rotation-split"),
        make_report("rotation-boundary-relation", swx, wxn - sex - 0.5 * (n - 2) * su, tol, "rotation-boundary-relation"),
    ]
    if n != 2:
        reports.append(make_report("linear-eshelby-form", E, (wxn - swx - sex) / (n - 2), tol, "linear-eshelby-form"))

    def lhs_vec(x):
        u, G, e, w, s, We = _linear_state(lam, mu, fld, x)
        return matvec(s, matvec(G, x))

    def rhs_vec(x):
        u, G, e, w, s, We = _linear_state(lam, mu, fld, x)
        return We[..., None] * x - 0.5 * (n - 2) * matvec(s, u)

    R = getattr(domain, "R", 1.0)
    pts = interior_points(n, R, points)
    div = _fd_divergence(lhs_vec, pts, h) - _fd_divergence(rhs_vec, pts, h)
    reports.append(bound_report("rotation-local-divergence", float(np.max(np.abs(div))), div_tol, "rotation-local-law"))
    return reports


def harmonic_gradient_field(n: int, coeffs: Sequence[float] = (0.3, -0.2, 0.5, 0.1, 0.25), rotation: float = 0.4, shift=None) -> DeformationField:
    """u = grad h + Omega x + c with h a harmonic polynomial of degree three."""
    c = np.asarray(coeffs, dtype=float)
    Om = np.zeros((n, n))
    Om[0, 1], Om[1, 0] = -rotation, rotation
    t = np.zeros(n) if shift is None else np.asarray(shift, dtype=float)

    if n == 2:

        def grad_h(x):
            X, Y = x[..., 0], x[..., 1]
            gx = c[0] * (3 * X * X - 3 * Y * Y) + c[1] * 2 * X + c[2] * Y + c[3] * 6 * X * Y
            gy = c[0] * (-6 * X * Y) - c[1] * 2 * Y + c[2] * X + c[3] * (3 * X * X - 3 * Y * Y)
            return np.stack([gx, gy], axis=-1)

        def hess_h(x):
            X, Y = x[..., 0], x[..., 1]
            hxx = 6 * c[0] * X + 2 * c[1] + 6 * c[3] * Y
            hxy = -6 * c[0] * Y + c[2] + 6 * c[3] * X
            return np.stack([np.stack([hxx, hxy], -1), np.stack([hxy, -hxx], -1)], -2)

    elif n == 3:
        # h = c0 (x^3 - 3 x y^2) + c1 (x^2 - y^2) + c2 x y z + c3 (z^3 - 3/2 z (x^2 + y^2)) + c4 y z
        def grad_h(x):
            X, Y, Z = x[..., 0], x[..., 1], x[..., 2]
            gx = c[0] * (3 * X * X - 3 * Y * Y) + 2 * c[1] * X + c[2] * Y * Z - 3 * c[3] * X * Z
            gy = -6 * c[0] * X * Y - 2 * c[1] * Y + c[2] * X * Z - 3 * c[3] * Y * Z + c[4] * Z
            gz = c[2] * X * Y + c[3] * (3 * Z * Z - 1.5 * (X * X + Y * Y)) + c[4] * Y
            return np.stack([gx, gy, gz], axis=-1)

        def hess_h(x):
            X, Y, Z = x[..., 0], x[..., 1], x[..., 2]
            hxx = 6 * c[0] * X + 2 * c[1] - 3 * c[3] * Z
            hyy = -6 * c[0] * X - 2 * c[1] - 3 * c[3] * Z
            hzz = 6 * c[3] * Z
            hxy = -6 * c[0] * Y + c[2] * Z
            hxz = c[2] * Y - 3 * c[3] * X
            hyz = c[2] * X - 3 * c[3] * Y + c[4]
            rows = [
                np.stack([hxx, hxy, hxz], -1),
                np.stack([hxy, hyy, hyz], -1),
                np.stack([hxz, hyz, hzz], -1),
            ]
            return np.stack(rows, -2)

    else:
        raise ContractViolation("harmonic family is available for n in {2, 3}")

    def y(x):
        x = np.asarray(x, dtype=float)
        return grad_h(x) + matvec(np.broadcast_to(Om, x.shape[:-1] + (n, n)), x) + t

    def grad(x):
        x = np.asarray(x, dtype=float)
        return hess_h(x) + Om

    return DeformationField(n=n, m=n, y=y, grad=grad, name="harmonic-gradient")


def hydrostatic_ball_field(lam: float, mu: float, n: int, p: float) -> DeformationField:
    kap = lam + 2.0 * mu / n
    return affine_field((p / (n * kap)) * np.eye(n), name="hydrostatic")


def verify_incompressible(
    mu: float,
    gamma: float,
    pressure: float,
    boundary_rule: Optional[QuadratureRule] = None,
    tol: float = TOL_CLOSED,
) -> IdentityReport:
    """Constrained Clapeyron relation for simple shear of an incompressible body on the unit disk."""
    model = make_shear_neo(mu)
    F0 = np.array([[1.0, gamma], [0.0, 1.0]])
    if abs(det(F0) - 1.0) > 1e-14:
        raise ContractViolation("shear state is not isochoric")
    fld = affine_field(F0, name="simple-shear")
    dom = Ball(2, 1.0)
    brule = boundary_rule if boundary_rule is not None else dom.boundary_rule()
    lhs = dom.measure * float(energy(model, np.zeros(2), np.zeros(2), F0))

    def f(x, nu):
        y, F = fld.y(x), fld.grad(x)
        P = piola(model, x, y, F)
        Ps = eshelby(model, x, y, F)
        Pc = P - pressure * cofactor(F)
        Psc = Ps + pressure * np.eye(2)
        return _dot(matvec(Pc, nu), y) + _dot(matvec(Psc, nu), x)

    rhs = integrate(f, brule) / 2.0
    return make_report("constrained-gct", lhs, rhs, tol, "constrained-clapeyron")


def broken_extremal_1d(potential, sigma: float, s: float, span: Tuple[float, float] = (-5.0, 5.0)) -> DeformationField:
    """Two-phase 1D extremal: strain F- for x < s and F+ for x > s with equal stress sigma.

    F- and F+ are the roots of U'(F) = sigma on the two monotone branches
    outside the spinodal interval, so traction is continuous at s while
    p* = [U] - sigma [F] is in general nonzero.
    """
    lo, hi = span
    vs = np.linspace(lo, hi, 4001)
    d2 = np.asarray(potential.ddU(vs), dtype=float)
    idx = np.nonzero(np.diff(np.sign(d2)))[0]
    if len(idx) != 2:
        raise ContractViolation("potential has no spinodal interval on the search span")
    sp = [brentq(potential.ddU, vs[i], vs[i + 1], xtol=1e-15) for i in idx]
    g = lambda v: float(potential.dU(v)) - sigma
    try:
        Fm = brentq(g, lo, sp[0], xtol=1e-15, rtol=1e-15)
        Fp = brentq(g, sp[1], hi, xtol=1e-15, rtol=1e-15)
    except ValueError:
        raise ContractViolation(f"stress {sigma:g} does not cut both stable branches") from None

    def y(x):
        x = np.asarray(x, dtype=float)
        return np.where(x < s, Fm * x, Fp * (x - s) + Fm * s)

    def grad(x):
        x = np.asarray(x, dtype=float)
        return np.where(x < s, Fm, Fp)[..., None]

    jump = JumpSurface(
        kind="point",
        radius=float(s),
        grad_minus=lambda x: np.full(np.shape(x)[:-1] + (1, 1), Fm),
        grad_plus=lambda x: np.full(np.shape(x)[:-1] + (1, 1), Fp),
    )
    return DeformationField(n=1, m=1, y=y, grad=grad, jump=jump, name="broken-1d", extras={"F_minus": Fm, "F_plus": Fp})


# ---------------------------------------------------------------- invariant integrals


def j_integral(model: EnergyModel, fld: DeformationField, rule: QuadratureRule) -> np.ndarray:
    def f(x, nu):
        _, _, _, _, Ps = _field_state(model, fld, x)
        return matvec(Ps, nu)

    return np.asarray(integrate(f, rule))


def _cross(a, b):
    if a.shape[-1] == 2:
        return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]
    return np.cross(a, b)


def l_integral(model: EnergyModel, fld: DeformationField, rule: QuadratureRule):
    if not model.glin_isotropic:
        raise ContractViolation("the rotational integral needs an isotropic density")
    if model.m != model.n:
        raise ContractViolation("the rotational integral needs m = n")

    def f(x, nu):
        y, F, W, P, Ps = _field_state(model, fld, x)
        return _cross(matvec(P, nu), y) + _cross(matvec(Ps, nu), x)

    return integrate(f, rule)


def m_integral(model: EnergyModel, fld: DeformationField, rule: QuadratureRule, p: Optional[float] = None) -> float:
    p = model.p_hom if p is None else p
    if p is None:
        raise ContractViolation("the scaling integral needs a homogeneity degree")
    n = model.n
    coef = (p - n) / p

    def f(x, nu):
        y, F, W, P, Ps = _field_state(model, fld, x)
        return _dot(matvec(Ps, nu), x) + coef * _dot(matvec(P, nu), y)

    return integrate(f, rule)


def screw_dislocation_field(b: float) -> DeformationField:
    def y(x):
        x = np.asarray(x, dtype=float)
        return (b / (2 * np.pi) * np.arctan2(x[..., 1], x[..., 0]))[..., None]

    def grad(x):
        x = np.asarray(x, dtype=float)
        r2 = np.sum(x * x, axis=-1)
        g = b / (2 * np.pi) * np.stack([-x[..., 1], x[..., 0]], axis=-1) / r2[..., None]
        return g[..., None, :]

    return DeformationField(n=2, m=1, y=y, grad=grad, singular_points=((0.0, 0.0),), name="screw-dislocation")


def crack_mode3_field(K: float, mu: float) -> DeformationField:
    """u = (2K/mu) sqrt(r / 2 pi) sin(theta / 2) with the crack along theta = pi."""
    c = 2.0 * K / mu / math.sqrt(2.0 * math.pi)

    def y(x):
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        th = np.arctan2(x[..., 1], x[..., 0])
        return (c * np.sqrt(r) * np.sin(th / 2))[..., None]

    def grad(x):
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        th = np.arctan2(x[..., 1], x[..., 0])
        k = c / (2.0 * np.sqrt(r))
        g = np.stack([-k * np.sin(th / 2), k * np.cos(th / 2)], axis=-1)
        return g[..., None, :]

    return DeformationField(n=2, m=1, y=y, grad=grad, singular_points=((0.0, 0.0),), name="mode3-crack")


def screw_m_closed(mu: float, b: float) -> float:
    return mu * b * b / (4.0 * math.pi)


def crack_j1_closed(K: float, mu: float) -> float:
    return K * K / (2.0 * mu)


# ---------------------------------------------------------------- Pohozaev


def uniqueness_verdict(n: int, p: int, k) -> str:
    """Compare 1/n + 1/k with 1/p exactly: 'unique', 'critical' or 'inconclusive'."""
    lhs = Fraction(1, n) + 1 / Fraction(k)
    rhs = Fraction(1, p)
    if lhs < rhs:
        return "unique"
    if lhs == rhs:
        return "critical"
    return "inconclusive"


def pohozaev_integrals(prof: ScalarRadialProfile, order: int = 64, angular: int = 4) -> Dict[str, float]:
    n, q, R = prof.n, prof.q, prof.R
    vrule = ball_rule(n, R, order=order, angular=angular if n == 3 else 8)
    srule = sphere_rule(n, R, angular if n == 3 else 8)

    def vol(x):
        r = np.linalg.norm(x, axis=-1)
        u = prof.u_fn(r)
        du = prof.du_fn(r)
        return np.stack([du * du, np.abs(u) ** (q + 1.0)], axis=-1)

    grad2, up = (float(v) for v in integrate(vol, vrule))

    def bnd(x, nu):
        r = np.linalg.norm(x, axis=-1)
        dn = prof.du_fn(r)
        return 0.5 * dn * dn * _dot(nu, x)

    surf = integrate(bnd, srule)
    return {"grad2": grad2, "upow": up, "surface": float(surf)}


def verify_pohozaev(n: int, q: float, R: float = 1.0, tol: float = 1e-6, prof: Optional[ScalarRadialProfile] = None):
    """Both Pohozaev identities for the positive radial solution, plus the homogeneity verdicts."""
    prof = pohozaev_shoot(n, q, R) if prof is None else prof
    I = pohozaev_integrals(prof)
    r1 = make_report("pohozaev-weak-form", I["grad2"], I["upow"], tol, "pohozaev-first")
    lhs2 = 0.5 * (n - 2) * I["grad2"] - n * I["upow"] / (q + 1.0)
    r2 = make_report("pohozaev-scaling", lhs2, -I["surface"], tol, "pohozaev-second")
    return r1, r2, prof


# ---------------------------------------------------------------- energy increments


@dataclass
class MetastabilityCheck:
    min_boundary_excess: float
    rank_one_convex_on_boundary: bool
    inequality_lhs: float
    inequality_rhs: float
    inequality_holds: bool
    criterion_value: float
    criterion_sign: int


def energy_increment(
    model: EnergyModel,
    fld1: DeformationField,
    fld2: DeformationField,
    domain,
    volume_rule: Optional[QuadratureRule] = None,
    boundary_rule: Optional[QuadratureRule] = None,
    tol: float = 1e-6,
    match_tol: float = 1e-10,
) -> Tuple[List[IdentityReport], MetastabilityCheck]:
    """Energy difference of two stationary fields with common boundary values."""
    n = model.n
    brule = boundary_rule if boundary_rule is not None else domain.boundary_rule()
    x = brule.nodes
    y0 = fld1.y(x)
    gap = float(np.max(np.abs(fld2.y(x) - y0)))
    if gap > match_tol:
        raise ContractViolation(f"fields differ by {gap:.3e} on the boundary")
    if volume_rule is None:
        splits = []
        for fl in (fld1, fld2):
            if fl.jump is not None and fl.jump.kind == "sphere":
                splits.append(fl.jump.radius)
        volume_rule = domain.volume_rule(splits=tuple(splits))

    def vol(xx):
        return energy(model, xx, fld2.y(xx), fld2.grad(xx)) - energy(model, xx, fld1.y(xx), fld1.grad(xx))

    dE = integrate(vol, volume_rule)

    def bnd(xx, nu):
        yb = fld1.y(xx)
        F1, F2 = fld1.grad(xx), fld2.grad(xx)
        P1 = piola(model, xx, yb, F1)
        P2 = piola(model, xx, yb, F2)
        E12 = excess(model, F1, F2, xx, yb)
        E21 = excess(model, F2, F1, xx, yb)
        xn = _dot(xx, nu)
        dPn = matvec(P1 - P2, nu)
        F2x = matvec(F2, xx)
        F1x = matvec(F1, xx)
        return np.stack(
            [
                E12 * xn + _dot(dPn, F2x - yb),
                -E21 * xn + _dot(dPn, F1x - yb),
                (E12 + E21) * xn,
                _dot(-dPn, F2x - F1x),
                _dot(dPn, F2x - yb),
            ],
            axis=-1,
        )

    b = [float(v) for v in integrate(bnd, brule)]
    reports = [
        make_report("increment-first", dE, b[0] / n, tol, "energy-increment-first"),
        make_report("increment-second", dE, b[1] / n, tol, "energy-increment-second"),
        make_report("increment-symmetric", dE, 0.5 * (b[0] + b[1]) / n, tol, "energy-increment-average"),
        make_report("excess-sum", b[2], b[3], tol, "excess-sum-relation"),
    ]

    yb = fld1.y(x)
    E12 = excess(model, fld1.grad(x), fld2.grad(x), x, yb)
    mn = float(np.min(E12))
    check = MetastabilityCheck(
        min_boundary_excess=mn,
        rank_one_convex_on_boundary=mn >= -1e-12,
        inequality_lhs=dE,
        inequality_rhs=b[4] / n,
        inequality_holds=dE >= b[4] / n - 1e-10,
        criterion_value=b[4],
        criterion_sign=int(np.sign(b[4])) if abs(b[4]) > 1e-12 else 0,
    )
    return reports, check


def composite_pair(profile: RadialProfile, R: float) -> Tuple[DeformationField, DeformationField]:
    """(affine f_R x, composite radial field) on B(0, R), sharing boundary values."""
    fR = float(profile.eta_fn(np.array(R))) / R
    return affine_field(fR * np.eye(profile.n), name="affine"), profile.field()


# ---------------------------------------------------------------- radial probe


def qw_probe(model: EnergyModel, profile: RadialProfile, r: float) -> float:
    """w1 eta/r + w - eta' w1 evaluated on the radial solution at radius r."""
    if r < (profile.r0 or 1.0):
        raise ContractViolation("probe radius must lie outside the interface")
    ex = model.extras
    eta = float(profile.eta_fn(np.array(r)))
    d = float(profile.deta_fn(np.array(r)))
    lam = eta / r
    w1 = float(ex["w1"](d, lam))
    w = float(ex["w_rad"](d, lam))
    return w1 * lam + w - d * w1


def ball_average_energy(model: EnergyModel, profile: RadialProfile, r: float, order: int = 64) -> float:
    n = profile.n
    splits = (profile.r0,) if profile.r0 is not None and profile.r0 < r else ()
    rule = ball_rule(n, r, order=order, angular=8 if n == 2 else 4, splits=splits)
    fld = profile.field()
    return volume_energy(model, fld, rule) / rule.measure


def verify_qw(model, profile, radii=(1.5, 2.0, 4.0), tol: float = TOL_SHOOTING) -> List[IdentityReport]:
    return [
        make_report(f"qw-probe-r{r:g}", qw_probe(model, profile, r), ball_average_energy(model, profile, r), tol, "radial-envelope-formula")
        for r in radii
    ]


__all__ = [
    "IdentityReport",
    "MetastabilityCheck",
    "TOL_CLOSED",
    "TOL_SHOOTING",
    "make_report",
    "bound_report",
    "volume_energy",
    "boundary_terms",
    "interface_term",
    "verify_gct",
    "verify_genclap",
    "verify_phom",
    "verify_ppst_and_pi",
    "verify_linear_forms",
    "harmonic_gradient_field",
    "hydrostatic_ball_field",
    "broken_extremal_1d",
    "verify_incompressible",
    "j_integral",
    "l_integral",
    "m_integral",
    "screw_dislocation_field",
    "crack_mode3_field",
    "screw_m_closed",
    "crack_j1_closed",
    "uniqueness_verdict",
    "pohozaev_integrals",
    "verify_pohozaev",
    "energy_increment",
    "composite_pair",
    "qw_probe",
    "ball_average_energy",
    "verify_qw",
    "interior_points",
]
