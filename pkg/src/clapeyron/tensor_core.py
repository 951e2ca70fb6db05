"""Small dense tensor algebra and the stress objects built from an energy density.

All evaluators work on batches: ``x`` has shape ``(..., n)``, ``y`` has shape
``(..., m)`` and ``F`` has shape ``(..., m, n)``.  A single point is simply a
batch with no leading axes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Tuple

import numpy as np

from .errors import (
    ContractViolation,
    HadamardViolation,
    JumpProximityError,
    ModelError,
    TractionJumpViolation,
)

MAX_DIM = 4
FD_REL_STEP = 1e-6

Mat = np.ndarray


def as_mat(a, m: Optional[int] = None, n: Optional[int] = None) -> Mat:
    """Return ``a`` as a float array whose trailing axes form an m-by-n matrix."""
    arr = np.asarray(a, dtype=float)
    if arr.ndim < 2:
        raise ContractViolation(f"expected a matrix, got shape {arr.shape}")
    r, c = arr.shape[-2:]
    if not (1 <= r <= MAX_DIM and 1 <= c <= MAX_DIM):
        raise ContractViolation(f"matrix dimensions {r}x{c} outside 1..{MAX_DIM}")
    if (m is not None and r != m) or (n is not None and c != n):
        raise ContractViolation(f"expected {m}x{n} matrix, got {r}x{c}")
    return arr


def frob(A: Mat) -> np.ndarray:
    return np.sqrt(np.sum(A * A, axis=(-2, -1)))


def inner(A: Mat, B: Mat) -> np.ndarray:
    return np.sum(A * B, axis=(-2, -1))


def matvec(A: Mat, v: np.ndarray) -> np.ndarray:
    return np.einsum("...ij,...j->...i", A, v)


def tmatmul(A: Mat, B: Mat) -> Mat:
    """A^T B over the trailing axes."""
    return np.einsum("...ki,...kj->...ij", A, B)


def outer(a: np.ndarray, b: np.ndarray) -> Mat:
    return np.einsum("...i,...j->...ij", a, b)


def eye_like(F: Mat, n: int) -> Mat:
    return np.broadcast_to(np.eye(n), F.shape[:-2] + (n, n))


def sym(F: Mat) -> Mat:
    return 0.5 * (F + np.swapaxes(F, -1, -2))


def skew(F: Mat) -> Mat:
    return 0.5 * (F - np.swapaxes(F, -1, -2))


def det(A: Mat) -> np.ndarray:
    A = as_mat(A)
    k = A.shape[-1]
    if A.shape[-2] != k:
        raise ContractViolation("determinant of a non-square matrix")
    if k == 1:
        return A[..., 0, 0].copy()
    if k == 2:
        return A[..., 0, 0] * A[..., 1, 1] - A[..., 0, 1] * A[..., 1, 0]
    if k == 3:
        return (
            A[..., 0, 0] * (A[..., 1, 1] * A[..., 2, 2] - A[..., 1, 2] * A[..., 2, 1])
            - A[..., 0, 1] * (A[..., 1, 0] * A[..., 2, 2] - A[..., 1, 2] * A[..., 2, 0])
            + A[..., 0, 2] * (A[..., 1, 0] * A[..., 2, 1] - A[..., 1, 1] * A[..., 2, 0])
        )
    return np.linalg.det(A)


def cofactor(A: Mat) -> Mat:
    """Cofactor matrix, cof A = det(A) A^{-T}; explicit adjugate up to 3x3."""
    A = as_mat(A)
    k = A.shape[-1]
    if A.shape[-2] != k:
        raise ContractViolation("cofactor of a non-square matrix")
    C = np.empty_like(A)
    if k == 1:
        C[..., 0, 0] = 1.0
    elif k == 2:
        C[..., 0, 0] = A[..., 1, 1]
        C[..., 0, 1] = -A[..., 1, 0]
        C[..., 1, 0] = -A[..., 0, 1]
        C[..., 1, 1] = A[..., 0, 0]
    elif k == 3:
        for i in range(3):
            i1, i2 = (i + 1) % 3, (i + 2) % 3
            for j in range(3):
                j1, j2 = (j + 1) % 3, (j + 2) % 3
                C[..., i, j] = A[..., i1, j1] * A[..., i2, j2] - A[..., i1, j2] * A[..., i2, j1]
    else:
        d = np.linalg.det(A)
        C = d[..., None, None] * np.swapaxes(np.linalg.inv(A), -1, -2)
    return C


@dataclass(frozen=True)
class EnergyModel:
    """Energy density W(x, y, F) with optional analytic derivatives and symmetry flags.

    Attributes
    ----------
    m, n : int
        Target and reference dimensions, F is m-by-n.
    W : callable
        ``W(x, y, F) -> (...)``.
    W_F, W_x, W_y : callable, optional
        Analytic partial derivatives.  Missing ``W_F`` falls back to central
        differences.
    W_FF : callable, optional
        ``W_FF(x, y, F, G)``, the second derivative applied to ``G``.
    scale_free, p_hom, parametric, glin_isotropic
        Symmetry flags checked by the property suites.
    """

    m: int
    n: int
    W: Callable
    W_F: Optional[Callable] = None
    W_x: Optional[Callable] = None
    W_y: Optional[Callable] = None
    W_FF: Optional[Callable] = None
    scale_free: bool = False
    p_hom: Optional[float] = None
    parametric: bool = False
    glin_isotropic: bool = False
    name: str = "model"
    params: Mapping[str, float] = field(default_factory=dict)
    singular_origin: bool = False
    extras: Mapping[str, Callable] = field(default_factory=dict)

    def __post_init__(self):
        if not (1 <= self.m <= MAX_DIM and 1 <= self.n <= MAX_DIM):
            raise ModelError(f"model dimensions {self.m}x{self.n} outside 1..{MAX_DIM}")


def _check_args(model: EnergyModel, x, y, F):
    F = as_mat(F, model.m, model.n)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1:] != (model.n,) or y.shape[-1:] != (model.m,):
        raise ContractViolation(
            f"point shapes {x.shape}, {y.shape} do not match model dimensions ({model.m}, {model.n})"
        )
    return x, y, F


def energy(model: EnergyModel, x, y, F) -> np.ndarray:
    x, y, F = _check_args(model, x, y, F)
    return np.asarray(model.W(x, y, F), dtype=float)


def _fd_grad(fun: Callable, z: np.ndarray, steps: np.ndarray) -> np.ndarray:
    """Central differences of a batched scalar function along the last axes of z."""
    k = z.shape[len(steps.shape):]
    out = np.empty(z.shape)
    for idx in np.ndindex(*k):
        e = np.zeros(k)
        e[idx] = 1.0
        dz = steps.reshape(steps.shape + (1,) * len(k)) * e
        out[(Ellipsis,) + idx] = (fun(z + dz) - fun(z - dz)) / (2.0 * steps)
    return out


def piola(model: EnergyModel, x, y, F) -> Mat:
    """P = W_F(x, y, F); central differences with step 1e-6 (1 + |F|) if no analytic form."""
    x, y, F = _check_args(model, x, y, F)
    if model.W_F is not None:
        return np.asarray(model.W_F(x, y, F), dtype=float)
    steps = FD_REL_STEP * (1.0 + frob(F))
    return _fd_grad(lambda G: model.W(x, y, G), F, np.asarray(steps))


def eshelby(model: EnergyModel, x, y, F) -> Mat:
    """P* = W I - F^T P."""
    x, y, F = _check_args(model, x, y, F)
    W = energy(model, x, y, F)
    P = piola(model, x, y, F)
    return W[..., None, None] * eye_like(F, model.n) - tmatmul(F, P)


def partial_x(model: EnergyModel, x, y, F, allow_fd: bool = False) -> np.ndarray:
    x, y, F = _check_args(model, x, y, F)
    if model.W_x is not None:
        return np.asarray(model.W_x(x, y, F), dtype=float)
    if not allow_fd:
        raise ModelError(f"model '{model.name}' has no W_x evaluator")
    steps = np.asarray(FD_REL_STEP * (1.0 + np.linalg.norm(x, axis=-1)))
    return _fd_grad(lambda z: model.W(z, y, F), x, steps)


def partial_y(model: EnergyModel, x, y, F, allow_fd: bool = False) -> np.ndarray:
    x, y, F = _check_args(model, x, y, F)
    if model.W_y is not None:
        return np.asarray(model.W_y(x, y, F), dtype=float)
    if not allow_fd:
        raise ModelError(f"model '{model.name}' has no W_y evaluator")
    steps = np.asarray(FD_REL_STEP * (1.0 + np.linalg.norm(y, axis=-1)))
    return _fd_grad(lambda z: model.W(x, z, F), y, steps)


def excess(model: EnergyModel, F, G, x=None, y=None) -> np.ndarray:
    """Weierstrass excess W(G) - W(F) - <W_F(F), G - F>."""
    F = as_mat(F, model.m, model.n)
    G = as_mat(G, model.m, model.n)
    if F.shape != G.shape:
        F, G = np.broadcast_arrays(F, G)
    x = np.zeros(F.shape[:-2] + (model.n,)) if x is None else np.asarray(x, dtype=float)
    y = np.zeros(F.shape[:-2] + (model.m,)) if y is None else np.asarray(y, dtype=float)
    return energy(model, x, y, G) - energy(model, x, y, F) - inner(piola(model, x, y, F), G - F)


def euler_residuals(model: EnergyModel, field, x, h: float = 1e-4) -> Tuple[np.ndarray, np.ndarray]:
    """Finite-difference residuals (W_y - div P, W_x - div P*) at a single point x.

    Raises JumpProximityError when a declared jump surface or singular point lies
    within 2h of x.
    """
    x = np.asarray(x, dtype=float)
    n = model.n
    if x.shape != (n,):
        raise ContractViolation(f"expected a single point in R^{n}")
    dist = field.distance_to_singular_set(x)
    if dist < 2.0 * h:
        raise JumpProximityError(
            f"point {x.tolist()} lies within {dist:.3g} of a jump surface or singular point (2h = {2 * h:.3g})"
        )
    pts = np.concatenate([x + h * np.eye(n), x - h * np.eye(n)])
    Y = field.y(pts)
    Fs = field.grad(pts)
    P = piola(model, pts, Y, Fs)
    Ps = eshelby(model, pts, Y, Fs)
    divP = np.einsum("jij->i", P[:n] - P[n:]) / (2.0 * h)
    divPs = np.einsum("jij->i", Ps[:n] - Ps[n:]) / (2.0 * h)
    y0 = field.y(x)
    F0 = field.grad(x)
    Wy = partial_y(model, x, y0, F0, allow_fd=True)
    Wx = partial_x(model, x, y0, F0, allow_fd=True)
    return Wy - divP, Wx - divPs


def noether_defect(model: EnergyModel, field, x, h: float = 1e-4) -> np.ndarray:
    """E* + F^T E evaluated from the finite-difference residuals; zero up to O(h^2)."""
    e, es = euler_residuals(model, field, x, h)
    F0 = field.grad(np.asarray(x, dtype=float))
    return es + F0.T @ e


def jump_pstar(
    model: EnergyModel,
    F_minus,
    F_plus,
    normal,
    x=None,
    y=None,
    tol: float = 1e-10,
    check_traction: bool = True,
) -> np.ndarray:
    """p* = [W] - <P, [F]> on a surface with unit normal pointing from the minus to the plus side.

    The Hadamard form [F] = a (x) n and continuity of traction [P]n = 0 are
    checked; with both in force the value does not depend on which side's
    stress is used, and the two evaluations are compared.
    """
    Fm = as_mat(F_minus, model.m, model.n)
    Fp = as_mat(F_plus, model.m, model.n)
    Fm, Fp = np.broadcast_arrays(Fm, Fp)
    nrm = np.broadcast_to(np.asarray(normal, dtype=float), Fm.shape[:-2] + (model.n,))
    x = np.zeros(nrm.shape) if x is None else np.broadcast_to(np.asarray(x, dtype=float), nrm.shape)
    yshape = Fm.shape[:-2] + (model.m,)
    y = np.zeros(yshape) if y is None else np.broadcast_to(np.asarray(y, dtype=float), yshape)
    dF = Fp - Fm
    a = matvec(dF, nrm)
    had = frob(dF - outer(a, nrm))
    if np.max(had, initial=0.0) > tol:
        raise HadamardViolation(f"jump is not rank-one across the surface (residual {np.max(had):.3e})")
    Pm = piola(model, x, y, Fm)
    Pp = piola(model, x, y, Fp)
    jW = energy(model, x, y, Fp) - energy(model, x, y, Fm)
    val_m = jW - inner(Pm, dF)
    if not check_traction:
        return val_m
    trac = np.linalg.norm(matvec(Pp - Pm, nrm), axis=-1)
    if np.max(trac, initial=0.0) > tol:
        raise TractionJumpViolation(f"traction jump {np.max(trac):.3e} exceeds {tol:g}")
    val_p = jW - inner(Pp, dF)
    gap = np.max(np.abs(val_p - val_m), initial=0.0)
    if gap > tol * max(1.0, float(np.max(np.abs(val_m), initial=0.0))):
        raise TractionJumpViolation(f"one-sided evaluations disagree by {gap:.3e}")
    return val_m


def check_graph_orthogonality(model: EnergyModel, x, y, F, tangent, normal) -> np.ndarray:
    """(P* n) . tau + (P n) . (F tau) for a unit normal n orthogonal to tau."""
    x, y, F = _check_args(model, x, y, F)
    tau = np.asarray(tangent, dtype=float)
    nrm = np.asarray(normal, dtype=float)
    P = piola(model, x, y, F)
    Ps = eshelby(model, x, y, F)
    return np.einsum("...i,...i->...", matvec(Ps, nrm), tau) + np.einsum(
        "...i,...i->...", matvec(P, nrm), matvec(F, tau)
    )


def _split_hat(model: EnergyModel, Fhat):
    n = model.n
    Fhat = as_mat(Fhat, model.m + n, n)
    F1 = Fhat[..., :n, :]
    F2 = Fhat[..., n:, :]
    d1 = det(F1)
    if np.any(np.abs(d1) < 1e-14):
        raise ContractViolation("upper block of the extended gradient is singular")
    F = F2 @ np.linalg.inv(F1)
    return F1, F2, F, d1


def extended_energy(model: EnergyModel, z, Fhat) -> np.ndarray:
    """W(x, y, F2 F1^{-1}) det F1 on the graph parametrization z = (x, y)."""
    F1, _, F, d1 = _split_hat(model, Fhat)
    z = np.asarray(z, dtype=float)
    x, y = z[..., : model.n], z[..., model.n :]
    return energy(model, x, y, F) * d1


def extended_piola(model: EnergyModel, z, Fhat) -> Mat:
    """Stacked [P* cof F1 ; P cof F1] evaluated at F = F2 F1^{-1}."""
    F1, _, F, _ = _split_hat(model, Fhat)
    z = np.asarray(z, dtype=float)
    x, y = z[..., : model.n], z[..., model.n :]
    C = cofactor(F1)
    top = eshelby(model, x, y, F) @ C
    bottom = piola(model, x, y, F) @ C
    return np.concatenate([top, bottom], axis=-2)


def extended_model(model: EnergyModel) -> EnergyModel:
    """The parametric Lagrangian on (n+m)-by-n gradients built from ``model``."""

    def W(t, z, Fh):
        return extended_energy(model, z, Fh)

    def W_F(t, z, Fh):
        return extended_piola(model, z, Fh)

    return EnergyModel(
        m=model.m + model.n,
        n=model.n,
        W=W,
        W_F=W_F,
        parametric=True,
        name=f"extended({model.name})",
        params=dict(model.params),
    )


def extended_eshelby_defect(model: EnergyModel, z, Fhat) -> float:
    """max |W_ext I - Fhat^T P_ext|; vanishes identically."""
    Fhat = as_mat(Fhat, model.m + model.n, model.n)
    Wh = extended_energy(model, z, Fhat)
    Ph = extended_piola(model, z, Fhat)
    res = Wh[..., None, None] * eye_like(Fhat, model.n) - tmatmul(Fhat, Ph)
    return float(np.max(np.abs(res)))


def qhom_defect(model: EnergyModel, z, Fhat, Q) -> float:
    """Relative defect of W_ext(z, Fhat Q) = W_ext(z, Fhat) det Q."""
    Q = as_mat(Q, model.n, model.n)
    lhs = extended_energy(model, z, np.asarray(Fhat) @ Q)
    rhs = extended_energy(model, z, Fhat) * det(Q)
    scale = np.maximum(np.abs(rhs), 1e-300)
    return float(np.max(np.abs(lhs - rhs) / scale))


__all__ = [
    "Mat",
    "EnergyModel",
    "as_mat",
    "frob",
    "inner",
    "matvec",
    "tmatmul",
    "outer",
    "sym",
    "skew",
    "det",
    "cofactor",
    "energy",
    "piola",
    "eshelby",
    "partial_x",
    "partial_y",
    "excess",
    "euler_residuals",
    "noether_defect",
    "jump_pstar",
    "check_graph_orthogonality",
    "extended_energy",
    "extended_piola",
    "extended_model",
    "extended_eshelby_defect",
    "qhom_defect",
]
