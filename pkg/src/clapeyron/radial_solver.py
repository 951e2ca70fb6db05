"""Radial extremals: the prestressed ball, exterior linear fields, double-well
phase boundaries, Lane-Emden ground states and the 1D bar."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq, curve_fit

from ._backend import kernels
from .energy_models import ScalarPotential, make_prestressed_radial
from .errors import ContractViolation, EllipticityLoss, ModelError, SolverError
from .fields_domains import DeformationField, JumpSurface, ball_rule, integrate, unit_ball_volume
from .tensor_core import EnergyModel, energy, eshelby, piola


class FarFieldWarning(UserWarning):
    pass


def _radial_grad(x, eta_r, deta_r):
    """Gradient of y = eta(r) xhat: eta' xhat xhat + (eta / r)(I - xhat xhat)."""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    r = np.linalg.norm(x, axis=-1)
    eta_r = np.asarray(eta_r, dtype=float)
    deta_r = np.asarray(deta_r, dtype=float)
    xh = x / r[..., None]
    Q = np.einsum("...i,...j->...ij", xh, xh)
    return deta_r[..., None, None] * Q + (eta_r / r)[..., None, None] * (np.eye(n) - Q)


def radial_field(n: int, eta: Callable, deta: Callable, name: str = "radial", jump=None, singular_origin=True):
    def y(x):
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        return (eta(r) / r)[..., None] * x

    def grad(x):
        r = np.linalg.norm(np.asarray(x, dtype=float), axis=-1)
        return _radial_grad(x, eta(r), deta(r))

    sing = (tuple([0.0] * n),) if singular_origin else ()
    return DeformationField(n=n, m=n, y=y, grad=grad, jump=jump, singular_points=sing, name=name)


@dataclass
class RadialProfile:
    """Sampled radial displacement or deformation eta(r) with far-field data."""

    n: int
    r: np.ndarray
    eta: np.ndarray
    deta: np.ndarray
    eta_fn: Callable
    deta_fn: Callable
    model: Optional[EnergyModel] = None
    r0: Optional[float] = None
    f0: Optional[float] = None
    beta: Optional[float] = None
    f_inf: Optional[float] = None
    A: Optional[float] = None
    alpha: Optional[float] = None
    fit_residual: Optional[float] = None
    notes: list = field(default_factory=list)
    kind: str = "radial"

    def field(self) -> DeformationField:
        jump = None
        if self.r0 is not None:
            n = self.n
            f0, beta, r0 = self.f0, self.beta, self.r0

            def gm(x):
                return np.broadcast_to(f0 * np.eye(n), np.shape(x)[:-1] + (n, n)).copy()

            def gp(x):
                r = np.linalg.norm(x, axis=-1)
                return _radial_grad(x, f0 * r / r0, np.full_like(r, beta))

            jump = JumpSurface(kind="sphere", radius=r0, grad_minus=gm, grad_plus=gp)
        return radial_field(self.n, self.eta_fn, self.deta_fn, self.kind, jump, singular_origin=self.r0 is None)

    def radial_quantities(self, r) -> dict:
        """W, P_rr and P*_rr along the ray through e1."""
        if self.model is None:
            raise ModelError("profile has no energy model attached")
        r = np.atleast_1d(np.asarray(r, dtype=float))
        x = np.zeros(r.shape + (self.n,))
        x[:, 0] = r
        F = _radial_grad(x, self.eta_fn(r), self.deta_fn(r))
        y = (self.eta_fn(r) / r)[:, None] * x
        W = energy(self.model, x, y, F)
        P = piola(self.model, x, y, F)
        Ps = eshelby(self.model, x, y, F)
        return {"W": W, "P_rr": P[:, 0, 0], "Pstar_rr": Ps[:, 0, 0]}

    def to_tsv(self, path) -> None:
        q = self.radial_quantities(self.r)
        cols = np.column_stack([self.r, self.eta, self.deta, q["W"], q["P_rr"], q["Pstar_rr"]])
        header = "r\teta\teta_prime\tW\tP_rr\tPstar_rr"
        np.savetxt(path, cols, delimiter="\t", header=header, comments="", fmt="%.17g")


# ---------------------------------------------------------------- prestressed ball


def example1_eta(n: int, a: float, R: float):
    def eta(r):
        r = np.asarray(r, dtype=float)
        return (a / n) * (r + (n - 1) * r * np.log(r / R))

    def deta(r):
        r = np.asarray(r, dtype=float)
        return (a / n) * (n + (n - 1) * np.log(r / R))

    return eta, deta


def example1_profile(n: int, a: float, R: float, samples: int = 201) -> RadialProfile:
    """Closed-form radial displacement of the traction-free prestressed ball."""
    if n < 2 or R <= 0:
        raise ContractViolation("need n >= 2 and R > 0")
    eta, deta = example1_eta(n, a, R)
    r = R * (np.arange(1, samples + 1) / samples) ** 2
    return RadialProfile(
        n=n,
        r=r,
        eta=eta(r),
        deta=deta(r),
        eta_fn=eta,
        deta_fn=deta,
        model=make_prestressed_radial(a, n),
        notes=["strain grows like log r at the origin"],
        kind="example1",
    )


def example1_field(n: int, a: float, R: float) -> DeformationField:
    eta, deta = example1_eta(n, a, R)
    return radial_field(n, eta, deta, name="example1")


def example1_energy_closed(n: int, a: float, R: float) -> float:
    return a * a * (n - 1) / (2.0 * n * n) * unit_ball_volume(n) * R**n


def example1_energy(n: int, a: float, R: float, panels: int = 64, order: int = 8, angular: int = 8) -> Tuple[float, float]:
    """(closed form, graded ball quadrature) of the stored energy; they must agree to 1e-6."""
    closed = example1_energy_closed(n, a, R)
    model = make_prestressed_radial(a, n)
    fld = example1_field(n, a, R)
    rule = ball_rule(n, R, order=order, angular=angular, graded=panels)
    quad = integrate(lambda x: energy(model, x, fld.y(x), fld.grad(x)), rule)
    if abs(quad - closed) > 1e-6 * max(abs(closed), 1e-300) and abs(quad - closed) > 1e-14:
        raise SolverError(f"energy quadrature {quad!r} disagrees with closed form {closed!r}")
    return closed, quad


# ---------------------------------------------------------------- linear exterior fields


@dataclass(frozen=True)
class LinearExterior:
    """Hydrostatically loaded isotropic body with a traction-free unit cavity."""

    p: float
    kappa: float
    mu: float
    n: int

    @property
    def lam(self) -> float:
        return self.kappa - 2.0 * self.mu / self.n

    @property
    def A(self) -> float:
        return self.p / (self.n * self.kappa)

    @property
    def B(self) -> float:
        return self.p / (2.0 * self.mu * (self.n - 1))

    def _check_exterior(self, z):
        r = np.linalg.norm(z, axis=-1)
        if np.any(r < 1.0 - 1e-12):
            raise ContractViolation("exterior field evaluated inside the cavity")
        return r

    def u(self, z):
        z = np.asarray(z, dtype=float)
        r = self._check_exterior(z)
        return (self.A + self.B / r**self.n)[..., None] * z

    def grad(self, z):
        z = np.asarray(z, dtype=float)
        r = self._check_exterior(z)
        zh = z / r[..., None]
        Q = np.einsum("...i,...j->...ij", zh, zh)
        I = np.eye(self.n)
        return self.A * I + (self.B / r**self.n)[..., None, None] * (I - self.n * Q)

    def stress(self, G):
        e = 0.5 * (G + np.swapaxes(G, -1, -2))
        t = np.trace(e, axis1=-2, axis2=-1)
        return self.lam * t[..., None, None] * np.eye(self.n) + 2.0 * self.mu * e

    def remote_gradient(self) -> np.ndarray:
        return self.A * np.eye(self.n)

    def polarization(self) -> np.ndarray:
        return self.B * np.eye(self.n)

    def field(self) -> DeformationField:
        return DeformationField(
            n=self.n,
            m=self.n,
            y=self.u,
            grad=self.grad,
            singular_points=(tuple([0.0] * self.n),),
            name="linear-exterior",
        )

    def u_eps(self, x, eps: float):
        """Solution in the unit ball with a cavity of radius eps and unit-ball load p."""
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        en = eps**self.n
        A = self.p / (self.n * self.kappa * (1.0 - en))
        B = self.p * en / (2.0 * self.mu * (self.n - 1) * (1.0 - en))
        return (A + B / r**self.n)[..., None] * x

    def u_0(self, x):
        return self.A * np.asarray(x, dtype=float)

    def w_lin(self, x):
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        return (self.A + self.B / r**self.n)[..., None] * x


def linear_exterior(p: float, kappa: float, mu: float, n: int) -> LinearExterior:
    if mu <= 0 or kappa <= 0:
        raise ModelError("linear exterior field needs kappa > 0 and mu > 0")
    if n < 2:
        raise ContractViolation("linear exterior field needs n >= 2")
    return LinearExterior(float(p), float(kappa), float(mu), int(n))


# ---------------------------------------------------------------- double-well phase boundary


def _well_of(model: EnergyModel):
    well = model.extras.get("well")
    if well is None:
        raise ModelError("interface conditions need a separable double-well model")
    return well


def _tangent_residual(well, f0, b):
    return np.array(
        [
            well.dphi(b) - well.dphi(f0),
            well.phi(b) - well.phi(f0) - well.dphi(f0) * (b - f0),
        ]
    )


def _spinodals(well):
    # roots of Phi'' (a quadratic in v)
    vs = np.linspace(well.fa - 5.0, well.fb + 5.0, 4001)
    d2 = well.ddphi(vs)
    idx = np.nonzero(np.diff(np.sign(d2)))[0]
    roots = [brentq(well.ddphi, vs[i], vs[i + 1], xtol=1e-15) for i in idx]
    return roots


def _bisection_tangent(well):
    sp = _spinodals(well)
    if len(sp) != 2:
        raise SolverError("double well has no spinodal region; no common tangent")
    s_lo, s_hi = sorted([float(well.dphi(sp[1])), float(well.dphi(sp[0]))])
    lo_v, hi_v = well.fa - 50.0, well.fb + 50.0

    def branches(s):
        vm = brentq(lambda v: well.dphi(v) - s, lo_v, sp[0], xtol=1e-15)
        vp = brentq(lambda v: well.dphi(v) - s, sp[1], hi_v, xtol=1e-15)
        return vm, vp

    def G(s):
        vm, vp = branches(s)
        return well.phi(vp) - well.phi(vm) - s * (vp - vm)

    eps = 1e-12 * max(1.0, abs(s_hi - s_lo))
    a, b = s_lo + eps, s_hi - eps
    if G(a) * G(b) > 0:
        raise SolverError(f"no common tangent with slope in [{a:.6g}, {b:.6g}]")
    s = brentq(G, a, b, xtol=1e-15, rtol=1e-15)
    return branches(s)


def solve_interface_conditions(model: EnergyModel, tol: float = 1e-12):
    """Common tangent (f0, beta) of the double well Phi.

    Returns (f0, beta, residual vector).  Equal-depth wells give the wells
    themselves; otherwise damped Newton from the wells, with a bisection on
    the tangent slope as fallback.
    """
    well = _well_of(model)
    if well.fa == well.fb:
        return float(well.fa), float(well.fa), np.zeros(2)
    if well.tilt == 0.0:
        f0, b = float(well.fa), float(well.fb)
        return f0, b, _tangent_residual(well, f0, b)
    z = np.array([well.fa, well.fb], dtype=float)
    ok = False
    for _ in range(100):
        res = _tangent_residual(well, z[0], z[1])
        if np.max(np.abs(res)) <= tol:
            ok = True
            break
        d0, d1 = well.ddphi(z[0]), well.ddphi(z[1])
        J = np.array([[-d0, d1], [-d0 * (z[1] - z[0]), well.dphi(z[1]) - well.dphi(z[0])]])
        try:
            step = np.linalg.solve(J, -res)
        except np.linalg.LinAlgError:
            break
        t = 1.0
        nrm = np.max(np.abs(res))
        while t > 1e-6:
            trial = z + t * step
            if trial[0] < trial[1] and np.max(np.abs(_tangent_residual(well, *trial))) < nrm:
                break
            t *= 0.5
        else:
            break
        z = z + t * step
    if not ok or not z[0] < z[1]:
        z = np.array(_bisection_tangent(well))
    res = _tangent_residual(well, z[0], z[1])
    if np.max(np.abs(res)) > 1e-10:
        raise SolverError(f"common tangent residual {np.max(np.abs(res)):.3e} above 1e-10")
    return float(z[0]), float(z[1]), res


def _fit_far_field(r, eta, n):
    """Linear fit for (f_inf, A), then a free-exponent fit for alpha."""
    basis = np.column_stack([r, r ** (1.0 - n), r ** (1.0 - 2.0 * n), r ** (1.0 - 3.0 * n)])
    coef, *_ = np.linalg.lstsq(basis, eta, rcond=None)
    f_inf, A = float(coef[0]), float(coef[1])
    lin_res = float(np.max(np.abs(basis @ coef - eta)) / np.max(np.abs(eta)))

    def model(rr, f, a, al, b):
        return f * rr + a * rr ** (-al) + b * rr ** (1.0 - 2.0 * n)

    alpha = math.nan
    rel = math.inf
    if A != 0.0:
        try:
            popt, _ = curve_fit(model, r, eta, p0=[f_inf, A, n - 1.0, float(coef[2])], maxfev=20000)
            alpha = float(popt[2])
            rel = float(np.max(np.abs(model(r, *popt) - eta)) / np.max(np.abs(eta)))
        except (RuntimeError, ValueError):
            pass
    return f_inf, A, alpha, max(lin_res, rel if math.isfinite(rel) else lin_res)


def shoot_rODE(
    model: EnergyModel,
    f0: float,
    beta: float,
    n: Optional[int] = None,
    r_max: float = 200.0,
    rtol: float = 1e-12,
    samples: int = 400,
) -> RadialProfile:
    """Integrate the radial Euler-Lagrange equation outward from the interface r = 1.

    eta'' = -[(n-1) w12 (eta/r)' + (n-1)(w1 - w2)/r] / w11 with eta(1) = f0,
    eta'(1) = beta.  The inner core r < 1 is the affine state f0 x.
    """
    n = model.n if n is None else n
    ex = model.extras
    for key in ("w1", "w2", "w11", "w12"):
        if key not in ex:
            raise ModelError("shooting needs an isotropic singular-value model")
    w1, w2, w11, w12 = ex["w1"], ex["w2"], ex["w11"], ex["w12"]

    if f0 == beta:
        f = float(f0)
        r = np.geomspace(1.0, r_max, samples)
        warnings.warn("degenerate interface: the profile is affine and the far-field exponent is undetermined", FarFieldWarning)
        return RadialProfile(
            n=n,
            r=r,
            eta=f * r,
            deta=np.full_like(r, f),
            eta_fn=lambda s: f * np.asarray(s, dtype=float),
            deta_fn=lambda s: np.full(np.shape(s), f),
            model=model,
            r0=1.0,
            f0=f,
            beta=f,
            f_inf=f,
            A=0.0,
            alpha=math.nan,
            fit_residual=0.0,
            notes=["affine profile; exponent undetermined"],
            kind="phase-boundary",
        )

    def rhs(r, s):
        eta, d = s
        lam = eta / r
        a11 = float(w11(d, lam))
        if a11 <= 0.0:
            raise EllipticityLoss(f"w11 = {a11:.3e} <= 0 at r = {r:.6g} (eta' = {d:.6g})")
        num = (n - 1) * float(w12(d, lam)) * (d - lam) / r + (n - 1) * float(w1(d, lam) - w2(d, lam)) / r
        return [d, -num / a11]

    def leave_cone(r, s):
        return min(s[0], s[1])

    leave_cone.terminal = True
    sol = solve_ivp(rhs, (1.0, r_max), [f0, beta], method="DOP853", rtol=rtol, atol=1e-14, dense_output=True, events=leave_cone)
    if sol.status != 0:
        if sol.status == 1:
            raise SolverError(f"trajectory left the cone eta >= 0, eta' >= 0 at r = {sol.t_events[0][0]:.6g}")
        raise SolverError(f"radial integration failed: {sol.message}")
    dense = sol.sol

    def eta_fn(s):
        s = np.asarray(s, dtype=float)
        out = f0 * s
        m = s >= 1.0
        if np.any(m):
            out = np.where(m, dense(np.clip(s, 1.0, r_max))[0], out)
        return out

    def deta_fn(s):
        s = np.asarray(s, dtype=float)
        m = s >= 1.0
        return np.where(m, dense(np.clip(s, 1.0, r_max))[1], f0)

    win = np.geomspace(r_max / 10.0, r_max, 400)
    f_inf, A, alpha, res = _fit_far_field(win, dense(win)[0], n)
    notes = []
    if res > 1e-4:
        notes.append(f"far-field fit residual {res:.3e} exceeds 1e-4")
        warnings.warn(notes[-1], FarFieldWarning)
    r = np.geomspace(1.0, r_max, samples)
    vals = dense(r)
    return RadialProfile(
        n=n,
        r=r,
        eta=vals[0],
        deta=vals[1],
        eta_fn=eta_fn,
        deta_fn=deta_fn,
        model=model,
        r0=1.0,
        f0=f0,
        beta=beta,
        f_inf=f_inf,
        A=A,
        alpha=alpha,
        fit_residual=res,
        notes=notes,
        kind="phase-boundary",
    )


# ---------------------------------------------------------------- Lane-Emden ground state


@dataclass
class ScalarRadialProfile:
    n: int
    q: float
    R: float
    alpha: float
    u_fn: Callable
    du_fn: Callable
    u_R: float
    du_dn: float
    bracket: Tuple[float, float]

    def field(self) -> DeformationField:
        def y(x):
            r = np.linalg.norm(np.asarray(x, dtype=float), axis=-1)
            return self.u_fn(r)[..., None]

        def grad(x):
            x = np.asarray(x, dtype=float)
            r = np.linalg.norm(x, axis=-1)
            with np.errstate(invalid="ignore", divide="ignore"):
                g = np.where(r[..., None] > 0, (self.du_fn(r) / np.where(r > 0, r, 1.0))[..., None] * x, 0.0)
            return g[..., None, :]

        return DeformationField(n=self.n, m=1, y=y, grad=grad, name="lane-emden")


_SERIES_START = 1e-3


def _series(alpha, q, n, r):
    c1 = np.sign(alpha) * abs(alpha) ** q / (2.0 * n)
    c2 = q * abs(alpha) ** (q - 1.0) * c1 / (4.0 * (n + 2.0))
    return alpha - c1 * r * r + c2 * r**4, -2.0 * c1 * r + 4.0 * c2 * r**3


def _lane_emden_ivp(alpha, q, n, R, rtol=1e-13):
    r0 = _SERIES_START * R
    u0, v0 = _series(alpha, q, n, r0)

    def rhs(r, s):
        u, v = s
        return [v, -(n - 1) * v / r - math.copysign(abs(u) ** q, u)]

    sol = solve_ivp(rhs, (r0, R), [u0, v0], method="DOP853", rtol=rtol, atol=1e-15 * max(1.0, abs(alpha)), dense_output=True)
    if sol.status != 0:
        raise SolverError(f"Lane-Emden integration failed: {sol.message}")
    return sol


def pohozaev_shoot(n: int, q: float, R: float = 1.0, nsteps: int = 4000, tol: float = 1e-10, lanes: int = 32) -> ScalarRadialProfile:
    """Positive radial solution of u'' + (n-1)u'/r + u^q = 0, u'(0) = 0, u(R) = 0.

    The compiled batch integrator brackets the first root of alpha -> u(R; alpha)
    on [1e-3, 1e3] by repeated k-section; a high-order adaptive solve then
    pins the root.
    """
    if n > 2 and not 1.0 < q < (n + 2.0) / (n - 2.0):
        raise ContractViolation(f"q = {q} is not subcritical for n = {n}")
    if q <= 1.0:
        raise ContractViolation("q must exceed 1")
    lo, hi = 1e-3, 1e3

    def ok(alphas):
        uR, _, umin = kernels.lane_emden_rk4(np.ascontiguousarray(alphas), float(q), int(n), float(R), int(nsteps))
        uR = np.asarray(uR)
        umin = np.asarray(umin)
        return (uR > 0) & (umin > 0)

    grid = np.geomspace(lo, hi, lanes)
    good = ok(grid)
    if not good[0] or good[-1]:
        raise SolverError(f"no sign change of u(R; alpha) for alpha in [{lo:g}, {hi:g}]")
    for _ in range(6):
        k = int(np.argmin(good))
        a, b = grid[k - 1], grid[k]
        if b - a <= 1e-9 * b:
            break
        grid = np.linspace(a, b, lanes)
        good = ok(grid)
        if good.all() or not good[0]:
            break
    k = int(np.argmin(good)) if not good.all() else len(grid) - 1
    a, b = grid[max(k - 1, 0)], grid[k]
    a, b = a * (1 - 1e-6), b * (1 + 1e-6)

    def uR(alpha):
        return float(_lane_emden_ivp(alpha, q, n, R).y[0, -1])

    fa, fb = uR(a), uR(b)
    if not (fa > 0 > fb):
        raise SolverError(f"refined bracket [{a:.12g}, {b:.12g}] lost the sign change")
    alpha = brentq(uR, a, b, xtol=1e-15, rtol=1e-15)
    sol = _lane_emden_ivp(alpha, q, n, R)
    val = float(sol.y[0, -1])
    if abs(val) > tol * max(1.0, alpha):
        raise SolverError(f"boundary value u(R) = {val:.3e} above tolerance")
    r0 = _SERIES_START * R
    dense = sol.sol

    def u_fn(r):
        r = np.asarray(r, dtype=float)
        s_u, _ = _series(alpha, q, n, np.minimum(r, r0))
        return np.where(r < r0, s_u, dense(np.clip(r, r0, R))[0])

    def du_fn(r):
        r = np.asarray(r, dtype=float)
        _, s_v = _series(alpha, q, n, np.minimum(r, r0))
        return np.where(r < r0, s_v, dense(np.clip(r, r0, R))[1])

    return ScalarRadialProfile(
        n=n, q=q, R=R, alpha=alpha, u_fn=u_fn, du_fn=du_fn, u_R=val, du_dn=float(sol.y[1, -1]), bracket=(a, b)
    )


# ---------------------------------------------------------------- 1D bar


def _d1(f, x, h):
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def _d2(f, x, h):
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h)


@dataclass
class BarResult:
    potential: ScalarPotential
    U0: float
    U1: float
    eps_opt: float
    L_opt: float

    def energy(self, L):
        L = np.asarray(L, dtype=float)
        return L * self.potential.U((self.U1 - self.U0) / L)

    def strain(self, L):
        return (self.U1 - self.U0) / np.asarray(L, dtype=float)

    def dE_dL(self, L, h: Optional[float] = None) -> float:
        h = 1e-3 * L if h is None else h
        return float(_d1(self.energy, L, h))

    def d2E_dL2(self, L, h: Optional[float] = None) -> float:
        h = 1e-3 * L if h is None else h
        return float(_d2(self.energy, L, h))

    def pstar(self, L) -> float:
        return float(self.potential.pstar(self.strain(L)))

    def d2E_exact(self, L) -> float:
        e = self.strain(L)
        return float(e * e * self.potential.ddU(e) / L)


def bar_1d(potential: ScalarPotential, U0: float, U1: float, eps_max: Optional[float] = None) -> BarResult:
    """Optimal length of a bar with end displacements U0 < U1: the root of P*(eps) = 0."""
    if not U1 > U0:
        raise ContractViolation("bar needs U1 > U0")
    k = potential.params.get("k", 1.0)
    eps_max = 10.0 / k if eps_max is None else eps_max
    lo = 1e-12 * eps_max
    f = lambda e: float(potential.pstar(e))
    if f(lo) * f(eps_max) > 0:
        raise SolverError(f"P* keeps one sign on (0, {eps_max:g})")
    eps = brentq(f, lo, eps_max, xtol=1e-16, rtol=1e-15)
    return BarResult(potential, float(U0), float(U1), eps, (U1 - U0) / eps)


__all__ = [
    "RadialProfile",
    "ScalarRadialProfile",
    "LinearExterior",
    "BarResult",
    "FarFieldWarning",
    "radial_field",
    "example1_eta",
    "example1_profile",
    "example1_field",
    "example1_energy",
    "example1_energy_closed",
    "linear_exterior",
    "solve_interface_conditions",
    "shoot_rODE",
    "pohozaev_shoot",
    "bar_1d",
]
