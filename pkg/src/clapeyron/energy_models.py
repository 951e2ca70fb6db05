"""Catalog of energy densities, one for each symmetry class used by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Mapping, Optional

import numpy as np

from .errors import ModelError
from .tensor_core import EnergyModel, det, energy, eshelby, frob, inner, outer, piola, sym


def _zeros_x(x, y, F):
    return np.zeros(np.broadcast_shapes(np.shape(x)[:-1], F.shape[:-2]) + (F.shape[-1],))


def _zeros_y(x, y, F):
    return np.zeros(np.broadcast_shapes(np.shape(y)[:-1], F.shape[:-2]) + (F.shape[-2],))


def _trace(A):
    return np.trace(A, axis1=-2, axis2=-1)


def make_linear_isotropic(lam: float, mu: float, n: int) -> EnergyModel:
    """W(F) = (lam/2) (tr e)^2 + mu |e|^2 with e = sym F; F is the displacement gradient."""
    if mu <= 0 or n * lam + 2 * mu <= 0:
        raise ModelError(f"moduli lam={lam}, mu={mu} are not strongly elliptic in dimension {n}")
    kappa = lam + 2.0 * mu / n

    def W(x, y, F):
        e = sym(F)
        t = _trace(e)
        return 0.5 * lam * t * t + mu * inner(e, e)

    def W_F(x, y, F):
        e = sym(F)
        return lam * _trace(e)[..., None, None] * np.eye(n) + 2.0 * mu * e

    def W_FF(x, y, F, G):
        g = sym(G)
        return lam * _trace(g)[..., None, None] * np.eye(n) + 2.0 * mu * g

    return EnergyModel(
        m=n,
        n=n,
        W=W,
        W_F=W_F,
        W_x=_zeros_x,
        W_y=_zeros_y,
        W_FF=W_FF,
        scale_free=True,
        p_hom=2.0,
        glin_isotropic=True,
        name="linear-isotropic",
        params={"lam": lam, "mu": mu, "kappa": kappa, "n": n},
    )


def _unit(x):
    r = np.linalg.norm(x, axis=-1)
    if np.any(r == 0.0):
        raise ModelError("prestressed model evaluated at the origin, where the direction x/|x| is undefined")
    return x / r[..., None]


def make_prestressed_radial(a: float, n: int) -> EnergyModel:
    """W(x, F) = 1/2 |sym F - a xhat (x) xhat|^2, an incompatible radial prestrain.

    The density depends on x only through its direction, so it is scale free.
    No analytic W_x is supplied.
    """
    if n < 2:
        raise ModelError("the prestressed model needs n >= 2")

    def W(x, y, F):
        xh = _unit(np.asarray(x, dtype=float))
        d = sym(F) - a * outer(xh, xh)
        return 0.5 * inner(d, d)

    def W_F(x, y, F):
        xh = _unit(np.asarray(x, dtype=float))
        return sym(F) - a * outer(xh, xh)

    return EnergyModel(
        m=n,
        n=n,
        W=W,
        W_F=W_F,
        W_y=_zeros_y,
        scale_free=True,
        name="prestressed-radial",
        params={"a": a, "n": n},
        singular_origin=True,
    )


def radial_form_split(x, F, tol: float = 1e-9):
    """Write F = alpha xhat (x) xhat + beta (I - xhat (x) xhat); error if F is not of that form."""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    xh = _unit(x)
    alpha = np.einsum("...i,...ij,...j->...", xh, F, xh)
    beta = (_trace(F) - alpha) / (n - 1)
    Q = outer(xh, xh)
    rebuilt = alpha[..., None, None] * Q + beta[..., None, None] * (np.eye(n) - Q)
    dev = frob(F - rebuilt)
    if np.max(dev, initial=0.0) > tol * (1.0 + np.max(frob(F), initial=0.0)):
        raise ModelError("gradient is not of radial form and the model has no full singular-value evaluation")
    return alpha, beta, Q


def make_isotropic_sv(
    w: Callable,
    w_grad: Callable,
    w_hess: Callable,
    n: int,
    full_svd: bool = False,
    name: str = "isotropic-sv",
    params: Optional[Mapping[str, float]] = None,
) -> EnergyModel:
    """W(F) = w(singular values of F) for a symmetric function w on R^n.

    ``w``, ``w_grad`` and ``w_hess`` act on arrays of shape (..., n).  Without
    ``full_svd`` only gradients of radial form alpha xhat xhat + beta (I - xhat xhat)
    are accepted and their singular values are read off as (alpha, beta, ..., beta).
    The radial partials w1, w2, w11, w12 (at (alpha, beta, ..., beta)) are exposed
    through ``extras``.
    """

    def radial_args(alpha, beta):
        alpha = np.asarray(alpha, dtype=float)
        beta = np.asarray(beta, dtype=float)
        v = np.empty(np.broadcast_shapes(alpha.shape, beta.shape) + (n,))
        v[..., 0] = alpha
        v[..., 1:] = beta[..., None]
        return v

    def w_rad(alpha, beta):
        return w(radial_args(alpha, beta))

    def w1(alpha, beta):
        return w_grad(radial_args(alpha, beta))[..., 0]

    def w2(alpha, beta):
        return w_grad(radial_args(alpha, beta))[..., 1]

    def w11(alpha, beta):
        return w_hess(radial_args(alpha, beta))[..., 0, 0]

    def w12(alpha, beta):
        return w_hess(radial_args(alpha, beta))[..., 0, 1]

    if full_svd:

        def W(x, y, F):
            return w(np.linalg.svd(F, compute_uv=False))

        def W_F(x, y, F):
            U, s, Vt = np.linalg.svd(F)
            g = w_grad(s)
            return np.einsum("...ik,...k,...kj->...ij", U, g, Vt)

    else:

        def W(x, y, F):
            alpha, beta, _ = radial_form_split(x, F)
            return w_rad(alpha, beta)

        def W_F(x, y, F):
            alpha, beta, Q = radial_form_split(x, F)
            g1 = w1(alpha, beta)[..., None, None]
            g2 = w2(alpha, beta)[..., None, None]
            return g1 * Q + g2 * (np.eye(n) - Q)

    return EnergyModel(
        m=n,
        n=n,
        W=W,
        W_F=W_F,
        W_x=_zeros_x if full_svd else None,
        W_y=_zeros_y,
        scale_free=True,
        name=name,
        params=dict(params or {}, n=n),
        extras={
            "w": w,
            "w_grad": w_grad,
            "w_hess": w_hess,
            "w_rad": w_rad,
            "w1": w1,
            "w2": w2,
            "w11": w11,
            "w12": w12,
            "full_svd": full_svd,
        },
    )


def make_quadratic_sv(n: int) -> EnergyModel:
    """w = sum v_i^2 / 2, i.e. W = |F|^2 / 2 written through singular values."""
    return make_isotropic_sv(
        lambda v: 0.5 * np.sum(v * v, axis=-1),
        lambda v: np.asarray(v, dtype=float).copy(),
        lambda v: np.broadcast_to(np.eye(n), np.shape(v) + (n,)).copy(),
        n,
        full_svd=True,
        name="quadratic-sv",
    )


@dataclass(frozen=True)
class DoubleWell:
    """Phi(v) = (c/4)(v - fa)^2 (v - fb)^2 + (tilt/3)(v - fa)^3."""

    fa: float
    fb: float
    curvature: float = 1.0
    tilt: float = 0.0

    def phi(self, v):
        v = np.asarray(v, dtype=float)
        return 0.25 * self.curvature * (v - self.fa) ** 2 * (v - self.fb) ** 2 + self.tilt / 3.0 * (v - self.fa) ** 3

    def dphi(self, v):
        v = np.asarray(v, dtype=float)
        a, b = v - self.fa, v - self.fb
        return 0.5 * self.curvature * a * b * (a + b) + self.tilt * a * a

    def ddphi(self, v):
        v = np.asarray(v, dtype=float)
        a, b = v - self.fa, v - self.fb
        return 0.5 * self.curvature * (a * a + 4.0 * a * b + b * b) + 2.0 * self.tilt * a


def make_double_well(fa: float, fb: float, n: int, curvature: float = 1.0, tilt: float = 0.0) -> EnergyModel:
    """Separable w = sum Phi(v_i) with a quartic double well Phi."""
    if fa > fb:
        raise ModelError(f"double-well positions must satisfy fa <= fb, got {fa}, {fb}")
    if curvature <= 0:
        raise ModelError("double-well curvature must be positive")
    dw = DoubleWell(fa, fb, curvature, tilt)

    def w(v):
        return np.sum(dw.phi(v), axis=-1)

    def w_grad(v):
        return dw.dphi(v)

    def w_hess(v):
        d = dw.ddphi(v)
        return d[..., :, None] * np.eye(n)

    model = make_isotropic_sv(
        w,
        w_grad,
        w_hess,
        n,
        full_svd=True,
        name="double-well",
        params={"fa": fa, "fb": fb, "curvature": curvature, "tilt": tilt},
    )
    return replace(model, extras=dict(model.extras, well=dw))


def make_power_p(p: float, n: int, m: Optional[int] = None) -> EnergyModel:
    """W(F) = |F|^p / p."""
    if p < 1:
        raise ModelError(f"power model needs p >= 1, got {p}")
    m = n if m is None else m

    def W(x, y, F):
        return frob(F) ** p / p

    def W_F(x, y, F):
        nf = frob(F)
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.where(nf > 0, nf ** (p - 2.0), 1.0 if p == 2 else 0.0)
        return s[..., None, None] * F

    return EnergyModel(
        m=m,
        n=n,
        W=W,
        W_F=W_F,
        W_x=_zeros_x,
        W_y=_zeros_y,
        scale_free=True,
        p_hom=float(p),
        name="power",
        params={"p": p, "n": n, "m": m},
    )


def make_dirichlet(mu: float, n: int, m: int = 1) -> EnergyModel:
    """W = mu |F|^2 / 2; antiplane shear when m = 1."""
    if mu <= 0:
        raise ModelError("shear modulus must be positive")

    def W(x, y, F):
        return 0.5 * mu * inner(F, F)

    def W_F(x, y, F):
        return mu * np.asarray(F, dtype=float)

    return EnergyModel(
        m=m,
        n=n,
        W=W,
        W_F=W_F,
        W_x=_zeros_x,
        W_y=_zeros_y,
        W_FF=lambda x, y, F, G: mu * np.asarray(G, dtype=float),
        scale_free=True,
        p_hom=2.0,
        glin_isotropic=True,
        name="dirichlet",
        params={"mu": mu, "n": n, "m": m},
    )


def make_shear_neo(mu: float) -> EnergyModel:
    """W = mu (|F|^2 - 2) / 2 in two dimensions, used with the constraint det F = 1."""
    if mu <= 0:
        raise ModelError("shear modulus must be positive")

    def W(x, y, F):
        return 0.5 * mu * (inner(F, F) - 2.0)

    def W_F(x, y, F):
        return mu * np.asarray(F, dtype=float)

    return EnergyModel(
        m=2, n=2, W=W, W_F=W_F, W_x=_zeros_x, W_y=_zeros_y, scale_free=True, name="shear-neo", params={"mu": mu}
    )


def make_lane_emden(q: float, n: int) -> EnergyModel:
    """W(y, F) = |F|^2 / 2 - |y|^{q+1} / (q + 1) for a scalar field y."""
    if q <= 1:
        raise ModelError("exponent q must exceed 1")

    def W(x, y, F):
        u = y[..., 0]
        return 0.5 * inner(F, F) - np.abs(u) ** (q + 1.0) / (q + 1.0)

    def W_F(x, y, F):
        return np.asarray(F, dtype=float).copy()

    def W_y(x, y, F):
        u = y[..., 0]
        return (-np.sign(u) * np.abs(u) ** q)[..., None]

    return EnergyModel(
        m=1, n=n, W=W, W_F=W_F, W_x=_zeros_x, W_y=W_y, name="lane-emden", params={"q": q, "n": n}
    )


def make_area_functional(n: int, m: int, weight: Optional[Callable] = None) -> EnergyModel:
    """Parametric Lagrangian g(y) sqrt(det F^T F) on m-by-n gradients, m >= n."""
    if m < n:
        raise ModelError("area functional needs m >= n")
    g = weight if weight is not None else (lambda y: 1.0 + 0.25 * np.sum(np.asarray(y) ** 2, axis=-1))

    def W(x, y, F):
        C = np.einsum("...ki,...kj->...ij", F, F)
        return g(y) * np.sqrt(det(C))

    def W_F(x, y, F):
        C = np.einsum("...ki,...kj->...ij", F, F)
        dC = det(C)
        if np.any(dC <= 0.0):
            raise ModelError("area functional needs a full-rank gradient")
        J = np.sqrt(dC)
        return (g(y) * J)[..., None, None] * (F @ np.linalg.inv(C))

    return EnergyModel(
        m=m, n=n, W=W, W_F=W_F, parametric=True, name="area", params={"n": n, "m": m}
    )


def make_body_load_1d(b: float) -> EnergyModel:
    """W(x, y, F) = F^2 / 2 - b y on an interval."""

    def W(x, y, F):
        return 0.5 * F[..., 0, 0] ** 2 - b * y[..., 0]

    def W_F(x, y, F):
        return np.asarray(F, dtype=float).copy()

    def W_x(x, y, F):
        return np.zeros(np.shape(x))

    def W_y(x, y, F):
        return np.full(np.shape(y), -float(b))

    return EnergyModel(
        m=1, n=1, W=W, W_F=W_F, W_x=W_x, W_y=W_y, scale_free=(b == 0), name="body-load", params={"b": b}
    )


@dataclass(frozen=True)
class ScalarPotential:
    """A one-dimensional density U(F) with U' and U''."""

    U: Callable
    dU: Callable
    ddU: Callable
    name: str
    params: Mapping[str, float] = field(default_factory=dict)

    def P(self, F):
        return self.dU(F)

    def wave_speed(self, F) -> float:
        c2 = self.ddU(F)
        if np.any(np.asarray(c2) < 0):
            raise ModelError("potential is not convex here; no real wave speed")
        return np.sqrt(c2)

    def pstar(self, F):
        """Eshelby stress of the static density, U - F U'."""
        return self.U(F) - F * self.dU(F)

    def to_model(self) -> EnergyModel:
        def W(x, y, F):
            return self.U(F[..., 0, 0])

        def W_F(x, y, F):
            return self.dU(F[..., 0, 0])[..., None, None]

        return EnergyModel(
            m=1, n=1, W=W, W_F=W_F, W_x=_zeros_x, W_y=_zeros_y, scale_free=True, name=self.name, params=dict(self.params)
        )


def make_dynamic_potential(c2: float, c4: float) -> ScalarPotential:
    """U(F) = c2 F^2 / 2 + c4 F^4 / 4."""
    if c2 <= 0 or c4 < 0:
        raise ModelError("dynamic potential needs c2 > 0 and c4 >= 0")
    return ScalarPotential(
        U=lambda F: 0.5 * c2 * np.asarray(F) ** 2 + 0.25 * c4 * np.asarray(F) ** 4,
        dU=lambda F: c2 * np.asarray(F) + c4 * np.asarray(F) ** 3,
        ddU=lambda F: c2 + 3.0 * c4 * np.asarray(F) ** 2,
        name="quartic",
        params={"c2": c2, "c4": c4},
    )


def make_bar_potential(W0: float, k: float) -> ScalarPotential:
    """W(e) = W0 cosh(k e): even, strictly convex, with residual energy W0."""
    if W0 <= 0 or k <= 0:
        raise ModelError("bar potential needs W0 > 0 and k > 0")
    return ScalarPotential(
        U=lambda e: W0 * np.cosh(k * np.asarray(e)),
        dU=lambda e: W0 * k * np.sinh(k * np.asarray(e)),
        ddU=lambda e: W0 * k * k * np.cosh(k * np.asarray(e)),
        name="cosh-bar",
        params={"W0": W0, "k": k},
    )


def make_well_potential_1d(fa: float, fb: float, curvature: float = 1.0, tilt: float = 0.0) -> ScalarPotential:
    """The quartic double well Phi used as a one-dimensional density."""
    if fa >= fb:
        raise ModelError(f"double-well positions must satisfy fa < fb, got {fa}, {fb}")
    dw = DoubleWell(fa, fb, curvature, tilt)
    return ScalarPotential(
        U=dw.phi,
        dU=dw.dphi,
        ddU=dw.ddphi,
        name="double-well-1d",
        params={"fa": fa, "fb": fb, "curvature": curvature, "tilt": tilt},
    )


def kappa(lam: float, mu: float, n: int) -> float:
    return lam + 2.0 * mu / n


_BUILDERS: Dict[str, Callable[..., EnergyModel]] = {
    "linear-isotropic": lambda p: make_linear_isotropic(p["lam"], p["mu"], int(p["n"])),
    "prestressed-radial": lambda p: make_prestressed_radial(p["a"], int(p["n"])),
    "double-well": lambda p: make_double_well(p["fa"], p["fb"], int(p["n"]), p.get("curvature", 1.0), p.get("tilt", 0.0)),
    "power": lambda p: make_power_p(p["p"], int(p["n"]), int(p.get("m", p["n"]))),
    "dirichlet": lambda p: make_dirichlet(p["mu"], int(p["n"]), int(p.get("m", 1))),
    "shear-neo": lambda p: make_shear_neo(p["mu"]),
    "lane-emden": lambda p: make_lane_emden(p["q"], int(p["n"])),
    "area": lambda p: make_area_functional(int(p["n"]), int(p["m"])),
    "body-load": lambda p: make_body_load_1d(p["b"]),
}


def build_model(name: str, params: Mapping[str, float]) -> EnergyModel:
    """Construct a catalog model from a name and a parameter map."""
    if name not in _BUILDERS:
        raise ModelError(f"unknown model '{name}'; known: {', '.join(sorted(_BUILDERS))}")
    try:
        return _BUILDERS[name](dict(params))
    except KeyError as exc:
        raise ModelError(f"model '{name}' is missing parameter {exc.args[0]}") from None


def _random_F(rng, m, n, size):
    return rng.normal(size=(size, m, n))


def flag_defects(model: EnergyModel, rng: Optional[np.random.Generator] = None, npts: int = 100) -> Dict[str, float]:
    """Largest relative defects of the model's declared symmetries at random points.

    Gradients are drawn near the identity (for square models) so that radial,
    logarithmic or singular-value based densities stay in their natural range.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    m, n = model.m, model.n
    x = rng.normal(size=(npts, n))
    y = rng.normal(size=(npts, m))
    F = 0.3 * _random_F(rng, m, n, npts)
    if m == n:
        F = F + np.eye(n)
    elif m > n:
        F[:, :n, :] += np.eye(n)
    out: Dict[str, float] = {}
    W0 = energy(model, x, y, F)
    scale = np.maximum(np.abs(W0), 1e-300)
    if model.p_hom is not None:
        p = model.p_hom
        worst = 0.0
        for lam in (0.5, 2.0, 3.0):
            Wl = energy(model, x, lam * y, lam * F)
            worst = max(worst, float(np.max(np.abs(Wl - lam**p * W0) / np.maximum(np.abs(lam**p * W0), 1e-300))))
        out["p_hom"] = worst
        euler = inner(piola(model, x, y, F), F)
        if model.W_y is not None:
            euler = euler + np.sum(model.W_y(x, y, F) * y, axis=-1)
        out["euler"] = float(np.max(np.abs(euler - p * W0) / np.maximum(np.abs(p * W0), 1e-300)))
    if model.scale_free:
        worst = 0.0
        for lam in (0.5, 2.0, 3.0):
            Wl = energy(model, lam * x, lam * y, F)
            worst = max(worst, float(np.max(np.abs(Wl - W0) / scale)))
        out["scale_free"] = worst
    if model.parametric:
        A = np.eye(n) + 0.3 * rng.normal(size=(npts, n, n))
        dA = det(A)
        A[dA < 0, :, 0] *= -1.0
        WA = energy(model, x, y, F @ A)
        out["parametric"] = float(np.max(np.abs(WA - W0 * det(A)) / np.maximum(np.abs(W0 * det(A)), 1e-300)))
        Ps = eshelby(model, x, y, F)
        out["eshelby"] = float(np.max(np.abs(Ps)) / max(1.0, float(np.max(np.abs(W0)))))
    return out


__all__ = [
    "make_linear_isotropic",
    "make_prestressed_radial",
    "make_isotropic_sv",
    "make_quadratic_sv",
    "make_double_well",
    "DoubleWell",
    "make_power_p",
    "make_dirichlet",
    "make_shear_neo",
    "make_lane_emden",
    "make_area_functional",
    "make_body_load_1d",
    "ScalarPotential",
    "make_dynamic_potential",
    "make_well_potential_1d",
    "make_bar_potential",
    "radial_form_split",
    "kappa",
    "build_model",
    "flag_defects",
]
