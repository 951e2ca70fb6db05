"""Energy released by a small spherical void under hydrostatic load.

The normal on the cavity boundary points out of the cavity, into the body.
Energy increments are E_eps - E (negative when energy is released), scaled
by eps^n.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .energy_models import make_linear_isotropic
from .errors import ContractViolation, SolverError
from .fields_domains import integrate, sphere_rule, unit_ball_volume
from .identity_lab import IdentityReport, make_report
from .radial_solver import LinearExterior, linear_exterior
from .tensor_core import energy, eshelby, matvec


@dataclass(frozen=True)
class VoidScenario:
    n: int
    lam: float
    mu: float
    p: float
    shape: str = "ball"

    def __post_init__(self):
        if self.n not in (2, 3):
            raise ContractViolation("void scenarios are available for n in {2, 3}")
        if self.shape != "ball":
            raise ContractViolation(f"cavity shape '{self.shape}' is not supported; only the unit ball is")
        if self.mu <= 0 or self.kappa <= 0:
            raise ContractViolation("moduli must satisfy mu > 0 and kappa > 0")

    @property
    def kappa(self) -> float:
        return self.lam + 2.0 * self.mu / self.n

    @property
    def exterior(self) -> LinearExterior:
        return linear_exterior(self.p, self.kappa, self.mu, self.n)

    @property
    def model(self):
        return make_linear_isotropic(self.lam, self.mu, self.n)

    @property
    def F0(self) -> np.ndarray:
        return self.exterior.remote_gradient()

    @property
    def P0(self) -> np.ndarray:
        return self.p * np.eye(self.n)

    @property
    def S(self) -> np.ndarray:
        return self.exterior.polarization()

    @property
    def W0(self) -> float:
        return self.p * self.p / (2.0 * self.kappa)


def _cavity_rule(scn: VoidScenario, order: Optional[int]):
    return sphere_rule(scn.n, 1.0, order)


def delta_e_linear_closed(scn: VoidScenario) -> float:
    n, p = scn.n, scn.p
    return -0.5 * p * p * (1.0 / (n * scn.kappa) + 1.0 / (2.0 * (n - 1) * scn.mu)) * n * unit_ball_volume(n)


def delta_e_linear(scn: VoidScenario, order: Optional[int] = None):
    """-1/2 oint sigma(0) n . u_in over the cavity; returns (quadrature, closed form)."""
    ext = scn.exterior
    s0 = scn.P0

    def f(z, nu):
        return np.sum(matvec(s0, nu) * ext.u(z), axis=-1)

    quad = -0.5 * integrate(f, _cavity_rule(scn, order))
    return quad, delta_e_linear_closed(scn)


def delta_e_gct(scn: VoidScenario, order: Optional[int] = None, tol: float = 1e-10):
    """-(1/n) oint W(grad u_in)(n . z) and the Eshelby form -(1/n) oint P* n . z; they must agree."""
    ext = scn.exterior
    model = scn.model
    n = scn.n

    def f(z, nu):
        G = ext.grad(z)
        u = ext.u(z)
        W = energy(model, z, u, G)
        Ps = eshelby(model, z, u, G)
        zn = np.sum(z * nu, axis=-1)
        return np.stack([W * zn, np.sum(matvec(Ps, nu) * z, axis=-1)], axis=-1)

    a, b = integrate(f, _cavity_rule(scn, order))
    dW, dP = -float(a) / n, -float(b) / n
    if abs(dW - dP) > tol * max(1.0, abs(dW)):
        raise SolverError(f"energy and Eshelby forms disagree: {dW!r} vs {dP!r}")
    return dW, dP


def traction_residual(scn: VoidScenario, order: Optional[int] = None) -> float:
    ext = scn.exterior
    rule = _cavity_rule(scn, order)
    G = ext.grad(rule.nodes)
    return float(np.max(np.abs(matvec(ext.stress(G), rule.normals))))


def isotropic_tensor(lam: float, mu: float, n: int) -> np.ndarray:
    I = np.eye(n)
    return lam * np.einsum("ij,kl->ijkl", I, I) + mu * (np.einsum("ik,jl->ijkl", I, I) + np.einsum("il,jk->ijkl", I, I))


def _require_symmetric(A, label: str) -> None:
    if np.max(np.abs(A - A.T)) > 1e-12 * max(1.0, float(np.max(np.abs(A)))):
        raise ContractViolation(f"the isotropic closed form of G needs a symmetric {label}; use the index form instead")


def griffith_isotropic(lam: float, mu: float, n: int, F0, S) -> float:
    """Closed form of G for isotropic moduli; F0 and S must be symmetric."""
    F0 = np.asarray(F0, dtype=float)
    S = np.asarray(S, dtype=float)
    _require_symmetric(F0, "remote gradient")
    _require_symmetric(S, "polarization")
    return float(unit_ball_volume(n) / (n + 2) * (
        (n * mu - 2 * lam) * np.trace(F0) * np.trace(S) + (2 * lam * n + mu * (n * n + 2 * n - 4)) * np.sum(S * F0)
    ))


def griffith_general(C: np.ndarray, n: int, F0, S) -> float:
    """Index form valid for any elasticity tensor C_ijkl."""
    F = np.asarray(F0, dtype=float)
    S = np.asarray(S, dtype=float)
    t1 = n * np.einsum("ijkl,kj,il->", C, S, F)
    t2 = -2.0 * np.einsum("ijkl,kl,ij->", C, S, F)
    t3 = n * np.einsum("ijkj,kl,il->", C, S, F)
    return float(unit_ball_volume(n) / (n + 2) * (t1 + t2 + t3))


def griffith_sphere_quadrature(C: np.ndarray, n: int, F0, S, order: Optional[int] = None) -> float:
    """int over the unit sphere of n (C(S zh (x) zh)) zh . F0 zh - (C S) zh . F0 zh."""
    F = np.asarray(F0, dtype=float)
    S = np.asarray(S, dtype=float)
    CS = np.einsum("ijkl,kl->ij", C, S)

    def f(z, nu):
        Szz = np.einsum("kl,...l,...m->...km", S, z, z)
        CSzz = np.einsum("ijkl,...kl->...ij", C, Szz)
        Fz = matvec(F, z)
        return n * np.sum(matvec(CSzz, z) * Fz, axis=-1) - np.sum(matvec(CS, z) * Fz, axis=-1)

    return integrate(f, sphere_rule(n, 1.0, order))


def griffith_truncated(scn: VoidScenario, R: float, order: Optional[int] = None) -> float:
    """oint over |z| = R of (P0 - P(grad u_in)) n . F0 z."""
    ext = scn.exterior
    F0 = scn.F0
    P0 = scn.P0

    def f(z, nu):
        P = ext.stress(ext.grad(z))
        return np.sum(matvec(P0 - P, nu) * matvec(F0, z), axis=-1)

    return integrate(f, sphere_rule(scn.n, R, order))


@dataclass
class GriffithResult:
    isotropic: float
    hydrostatic: float
    general: float
    sphere: float
    truncated: dict


def griffith_discrepancy(
    scn: VoidScenario, S=None, F0=None, radii: Sequence[float] = (10.0, 20.0, 40.0), tol: float = 1e-8
) -> GriffithResult:
    """G by the isotropic closed form, the index form and sphere quadrature.

    With the default hydrostatic load the special value p^2|B|/kappa and the
    truncated contour integral at each radius are also returned.  A user
    supplied F0 (with its S) bypasses the exact exterior field, so those two
    entries are then nan and empty.
    """
    if S is None and F0 is not None:
        raise ContractViolation("a polarization tensor is required with a user supplied remote gradient")
    S = scn.S if S is None else np.asarray(S, dtype=float)
    hydro = F0 is None
    F0 = scn.F0 if hydro else np.asarray(F0, dtype=float)
    C = isotropic_tensor(scn.lam, scn.mu, scn.n)
    iso = griffith_isotropic(scn.lam, scn.mu, scn.n, F0, S)
    gen = griffith_general(C, scn.n, F0, S)
    sph = griffith_sphere_quadrature(C, scn.n, F0, S)
    if abs(iso - gen) > tol * max(1.0, abs(iso)):
        raise SolverError(f"isotropic and index forms of G disagree: {iso!r} vs {gen!r}")
    if hydro:
        hyd = scn.p * scn.p * unit_ball_volume(scn.n) / scn.kappa
        trunc = {float(R): griffith_truncated(scn, R) for R in radii}
    else:
        hyd, trunc = float("nan"), {}
    return GriffithResult(iso, hyd, gen, sph, trunc)


def rice_drucker_linear(scn: VoidScenario, order: Optional[int] = None, tol: float = 1e-8):
    """Two reports: the linear work formula against the released energy, and the void-creation identity.

    The linear formula is written with the traction t = sigma0 n_in on the
    inward cavity normal and measures E[y0] - E[yd], the negative of our
    increment.  The path y_s = F0 z + s (u_in - F0 z) is linear in s, so
    the s-integral is exactly one half.
    """
    ext = scn.exterior
    n = scn.n
    F0 = scn.F0
    P0 = scn.P0
    model = scn.model
    W0 = scn.W0

    def f(z, nu):
        t_in = matvec(P0, -nu)
        u = ext.u(z)
        W1 = energy(model, z, u, ext.grad(z))
        zn = np.sum(z * nu, axis=-1)
        return np.stack(
            [
                -0.5 * np.sum(t_in * u, axis=-1),
                0.5 * np.sum(matvec(P0, nu) * (u - matvec(F0, z)), axis=-1),
                (W1 - W0) * zn / n,
            ],
            axis=-1,
        )

    lin, lhs_c, rhs_c = (float(v) for v in integrate(f, _cavity_rule(scn, order)))
    r1 = make_report("rice-drucker-linear", lin, -delta_e_linear_closed(scn), tol, "rice-drucker-linear")
    r2 = make_report("void-creation", lhs_c, rhs_c, tol, "void-creation-work")
    return r1, r2


def check_polar_vanishing(P0, S, n: int, order: Optional[int] = None) -> float:
    """oint over the unit sphere of n (P0 xi) . (S xi) - <P0, S>."""
    P0 = np.asarray(P0, dtype=float)
    S = np.asarray(S, dtype=float)
    ip = float(np.sum(P0 * S))

    def f(z, nu):
        return n * np.sum(matvec(P0, z) * matvec(S, z), axis=-1) - ip

    return integrate(f, sphere_rule(n, 1.0, order))


def void_reports(scn: VoidScenario, tol: float = 1e-8) -> List[IdentityReport]:
    quad, closed = delta_e_linear(scn)
    dW, dP = delta_e_gct(scn)
    return [
        make_report("void-linear-quadrature", quad, closed, tol, "linear-void-release"),
        make_report("void-nonlinear-vs-linear", dW, quad, tol, "void-release-reconciliation"),
        make_report("void-eshelby-form", dP, dW, tol, "configurational-work-form"),
        make_report("cavity-traction", traction_residual(scn), 0.0, 1e-10, "traction-free-cavity"),
    ]


SWEEP_COLUMNS = ["n", "lambda", "mu", "p", "dE_linear", "dE_gct", "G", "residuals"]


def void_sweep(rows: Iterable[Sequence[float]]) -> List[dict]:
    """One record per (n, lambda, mu, p)."""
    out = []
    for n, lam, mu, p in rows:
        scn = VoidScenario(int(n), float(lam), float(mu), float(p))
        quad, closed = delta_e_linear(scn)
        dW, _ = delta_e_gct(scn)
        G = griffith_discrepancy(scn, radii=()).isotropic
        out.append(
            {
                "n": int(n),
                "lambda": float(lam),
                "mu": float(mu),
                "p": float(p),
                "dE_linear": quad,
                "dE_gct": dW,
                "G": G,
                "residuals": max(abs(quad - closed), abs(dW - quad)),
            }
        )
    return out


def write_sweep_csv(records: List[dict], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for rec in records:
            w.writerow([rec[c] if isinstance(rec[c], int) else "%.17g" % rec[c] for c in SWEEP_COLUMNS])


__all__ = [
    "VoidScenario",
    "GriffithResult",
    "delta_e_linear",
    "delta_e_linear_closed",
    "delta_e_gct",
    "traction_residual",
    "isotropic_tensor",
    "griffith_isotropic",
    "griffith_general",
    "griffith_sphere_quadrature",
    "griffith_truncated",
    "griffith_discrepancy",
    "rice_drucker_linear",
    "check_polar_vanishing",
    "void_reports",
    "void_sweep",
    "write_sweep_csv",
    "SWEEP_COLUMNS",
]
