"""Deformation fields, domains and deterministic quadrature rules.

Rules store their nodes in a fixed documented order (radial index outermost,
then polar, then azimuthal) and ``integrate`` reduces them with a compensated
sum in that order, so repeated runs give bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from ._backend import kernels
from .errors import ContractViolation, IntegrationError


def unit_ball_volume(n: int) -> float:
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


def unit_sphere_area(n: int) -> float:
    return n * unit_ball_volume(n)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for a surface, volume or path.

    ``normals`` is set for surface rules and holds the outward unit normal at
    each node.  ``measure`` is the exact size of the target.
    """

    nodes: np.ndarray
    weights: np.ndarray
    target: str
    order: int
    measure: float
    normals: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return self.weights.shape[0]


def _gauss_legendre(order: int, a: float, b: float) -> Tuple[np.ndarray, np.ndarray]:
    t, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (a + b) + 0.5 * (b - a) * t, 0.5 * (b - a) * w


def _directions(n: int, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Unit directions and weights on S^{n-1}."""
    if n == 1:
        return np.array([[-1.0], [1.0]]), np.array([1.0, 1.0])
    if n == 2:
        if order < 4:
            raise ContractViolation("sphere rule order must be at least 4")
        th = 2.0 * np.pi * (np.arange(order) + 0.5) / order
        dirs = np.stack([np.cos(th), np.sin(th)], axis=1)
        return dirs, np.full(order, 2.0 * np.pi / order)
    if n == 3:
        if order < 4:
            raise ContractViolation("sphere rule order must be at least 4")
        mu, wmu = np.polynomial.legendre.leggauss(order)
        nphi = 2 * order
        phi = 2.0 * np.pi * (np.arange(nphi) + 0.5) / nphi
        s = np.sqrt(1.0 - mu * mu)
        dirs = np.stack(
            [
                np.repeat(s, nphi) * np.tile(np.cos(phi), order),
                np.repeat(s, nphi) * np.tile(np.sin(phi), order),
                np.repeat(mu, nphi),
            ],
            axis=1,
        )
        w = np.repeat(wmu, nphi) * (2.0 * np.pi / nphi)
        return dirs, w
    raise ContractViolation(f"sphere rules are available for n in {{2, 3}}, got {n}")


def default_angular_order(n: int) -> int:
    return 64 if n == 2 else 32


def sphere_rule(n: int, R: float = 1.0, order: Optional[int] = None, center=None) -> QuadratureRule:
    """Surface rule on the sphere of radius R: equispaced for n=2, Gauss-Legendre x equispaced for n=3."""
    if R <= 0:
        raise ContractViolation("sphere radius must be positive")
    order = default_angular_order(n) if order is None else order
    dirs, w = _directions(n, order)
    c = np.zeros(n) if center is None else np.asarray(center, dtype=float)
    area = unit_sphere_area(n) * R ** (n - 1) if n > 1 else 2.0
    return QuadratureRule(
        nodes=c + R * dirs,
        weights=w * R ** (n - 1),
        target="surface",
        order=order,
        measure=area,
        normals=dirs.copy(),
    )


def graded_breaks(R: float, panels: int, gamma: float = 2.0) -> np.ndarray:
    """Breakpoints R (i/N)^gamma, clustered near the origin."""
    return R * (np.arange(panels + 1) / panels) ** gamma


def _radial_nodes(breaks: Sequence[float], order: int) -> Tuple[np.ndarray, np.ndarray]:
    rs, ws = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b <= a:
            continue
        r, w = _gauss_legendre(order, a, b)
        rs.append(r)
        ws.append(w)
    return np.concatenate(rs), np.concatenate(ws)


def _shell_rule(n, r_in, r_out, order, angular, splits, center, target_measure):
    breaks = sorted({float(r_in), float(r_out), *[float(s) for s in splits if r_in < s < r_out]})
    r, wr = _radial_nodes(breaks, order)
    dirs, wd = _directions(n, angular if angular is not None else default_angular_order(n))
    c = np.zeros(n) if center is None else np.asarray(center, dtype=float)
    nodes = c + (r[:, None, None] * dirs[None, :, :]).reshape(-1, n)
    weights = ((wr * r ** (n - 1))[:, None] * wd[None, :]).reshape(-1)
    return QuadratureRule(nodes=nodes, weights=weights, target="volume", order=order, measure=target_measure)


def ball_rule(
    n: int,
    R: float = 1.0,
    order: int = 64,
    angular: Optional[int] = None,
    splits: Sequence[float] = (),
    center=None,
    graded: Optional[int] = None,
) -> QuadratureRule:
    """Gauss-Legendre in r times a sphere rule.

    ``splits`` adds radial breakpoints (interfaces); ``graded=N`` replaces the
    single radial panel by N panels at R (i/N)^2 with ``order`` nodes each.
    """
    if R <= 0:
        raise ContractViolation("ball radius must be positive")
    extra = list(splits)
    if graded:
        extra += list(graded_breaks(R, graded)[1:-1])
    return _shell_rule(n, 0.0, R, order, angular, extra, center, unit_ball_volume(n) * R**n)


def annulus_rule(
    n: int,
    r_in: float,
    r_out: float,
    order: int = 64,
    angular: Optional[int] = None,
    splits: Sequence[float] = (),
    center=None,
) -> QuadratureRule:
    if not 0 <= r_in < r_out:
        raise ContractViolation("annulus needs 0 <= r_in < r_out")
    meas = unit_ball_volume(n) * (r_out**n - r_in**n)
    return _shell_rule(n, r_in, r_out, order, angular, splits, center, meas)


def interval_rule(a: float, b: float, order: int = 64, splits: Sequence[float] = ()) -> QuadratureRule:
    if not a < b:
        raise ContractViolation("interval needs a < b")
    breaks = sorted({float(a), float(b), *[float(s) for s in splits if a < s < b]})
    x, w = _radial_nodes(breaks, order)
    return QuadratureRule(nodes=x[:, None], weights=w, target="path", order=order, measure=b - a)


def merge_rules(*rules: QuadratureRule) -> QuadratureRule:
    nodes = np.concatenate([r.nodes for r in rules])
    weights = np.concatenate([r.weights for r in rules])
    normals = None
    if all(r.normals is not None for r in rules):
        normals = np.concatenate([r.normals for r in rules])
    return QuadratureRule(
        nodes=nodes,
        weights=weights,
        target=rules[0].target,
        order=max(r.order for r in rules),
        measure=sum(r.measure for r in rules),
        normals=normals,
    )


def integrate(f: Callable, rule: QuadratureRule):
    """Weighted compensated sum of f over the rule's nodes.

    ``f`` is called once with the node array (and the normals for surface
    rules) and must return one value per node, scalar or array valued.
    """
    if rule.normals is not None:
        vals = f(rule.nodes, rule.normals)
    else:
        vals = f(rule.nodes)
    vals = np.asarray(vals, dtype=float)
    N = len(rule)
    if vals.ndim == 0:
        vals = np.full(N, float(vals))
    if vals.shape[0] != N:
        raise IntegrationError(f"integrand returned {vals.shape[0]} values for {N} nodes")
    flat = vals.reshape(N, -1)
    bad = ~np.isfinite(flat).all(axis=1)
    if bad.any():
        i = int(np.argmax(bad))
        raise IntegrationError(f"non-finite integrand at node {i}: {rule.nodes[i].tolist()}")
    w = np.ascontiguousarray(rule.weights, dtype=float)
    if vals.ndim == 1:
        return float(kernels.weighted_sum(w, np.ascontiguousarray(vals)))
    out = kernels.weighted_sum_cols(w, np.ascontiguousarray(flat))
    return np.asarray(out).reshape(vals.shape[1:])


@dataclass(frozen=True)
class JumpSurface:
    """A surface across which the gradient jumps.

    ``kind`` is ``"sphere"`` (radius ``radius`` about ``center``) or ``"point"``
    (1D, located at ``radius``).  The normal points from the minus to the plus
    side, outward for spheres.
    """

    kind: str
    radius: float
    grad_minus: Callable
    grad_plus: Callable
    center: Optional[np.ndarray] = None

    def distance(self, x: np.ndarray) -> float:
        c = 0.0 if self.center is None else self.center
        return abs(float(np.linalg.norm(np.asarray(x) - c)) - self.radius) if self.kind == "sphere" else abs(
            float(np.asarray(x).reshape(-1)[0]) - self.radius
        )

    def rule(self, n: int, order: Optional[int] = None) -> QuadratureRule:
        if self.kind == "point":
            return QuadratureRule(
                nodes=np.array([[self.radius]]),
                weights=np.array([1.0]),
                target="surface",
                order=1,
                measure=1.0,
                normals=np.array([[1.0]]),
            )
        return sphere_rule(n, self.radius, order, self.center)


@dataclass(frozen=True)
class DeformationField:
    """y(x) and its gradient, both evaluated on batches of points."""

    n: int
    m: int
    y: Callable
    grad: Callable
    jump: Optional[JumpSurface] = None
    singular_points: Tuple[Tuple[float, ...], ...] = ()
    name: str = "field"
    extras: dict = field(default_factory=dict)

    def distance_to_singular_set(self, x) -> float:
        x = np.asarray(x, dtype=float)
        d = math.inf
        if self.jump is not None:
            d = self.jump.distance(x)
        for p in self.singular_points:
            d = min(d, float(np.linalg.norm(x - np.asarray(p))))
        return d

    def check_grad(self, points, h: float = 1e-6) -> float:
        """Max relative deviation of grad from central differences of y."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        worst = 0.0
        for x in pts:
            G = self.grad(x)
            fd = np.empty((self.m, self.n))
            for j in range(self.n):
                e = np.zeros(self.n)
                e[j] = h
                fd[:, j] = (self.y(x + e) - self.y(x - e)) / (2.0 * h)
            worst = max(worst, float(np.max(np.abs(fd - G)) / max(1.0, float(np.max(np.abs(G))))))
        return worst


def affine_field(F0, c=None, name: str = "affine") -> DeformationField:
    F0 = np.atleast_2d(np.asarray(F0, dtype=float))
    m, n = F0.shape
    c = np.zeros(m) if c is None else np.asarray(c, dtype=float)

    def y(x):
        return np.einsum("ij,...j->...i", F0, x) + c

    def grad(x):
        return np.broadcast_to(F0, np.asarray(x).shape[:-1] + (m, n)).copy()

    return DeformationField(n=n, m=m, y=y, grad=grad, name=name)


@dataclass(frozen=True)
class Ball:
    n: int
    R: float
    center: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if self.R <= 0:
            raise ContractViolation("ball radius must be positive")

    @property
    def measure(self) -> float:
        return unit_ball_volume(self.n) * self.R**self.n

    def volume_rule(self, order: int = 64, angular: Optional[int] = None, splits=(), graded=None) -> QuadratureRule:
        return ball_rule(self.n, self.R, order, angular, splits, self.center, graded)

    def boundary_rule(self, order: Optional[int] = None) -> QuadratureRule:
        return sphere_rule(self.n, self.R, order, self.center)


@dataclass(frozen=True)
class Annulus:
    n: int
    r_in: float
    r_out: float

    def __post_init__(self):
        if not 0 < self.r_in < self.r_out:
            raise ContractViolation("annulus needs 0 < r_in < r_out")

    @property
    def measure(self) -> float:
        return unit_ball_volume(self.n) * (self.r_out**self.n - self.r_in**self.n)

    def volume_rule(self, order: int = 64, angular: Optional[int] = None, splits=(), graded=None) -> QuadratureRule:
        return annulus_rule(self.n, self.r_in, self.r_out, order, angular, splits)

    def boundary_rule(self, order: Optional[int] = None) -> QuadratureRule:
        outer_ = sphere_rule(self.n, self.r_out, order)
        inner_ = sphere_rule(self.n, self.r_in, order)
        inner_ = QuadratureRule(
            nodes=inner_.nodes,
            weights=inner_.weights,
            target="surface",
            order=inner_.order,
            measure=inner_.measure,
            normals=-inner_.normals,
        )
        return merge_rules(outer_, inner_)


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    n = 1

    def __post_init__(self):
        if not self.a < self.b:
            raise ContractViolation("interval needs a < b")

    @property
    def measure(self) -> float:
        return self.b - self.a

    def volume_rule(self, order: int = 64, angular=None, splits=(), graded=None) -> QuadratureRule:
        return interval_rule(self.a, self.b, order, splits)

    def boundary_rule(self, order: Optional[int] = None) -> QuadratureRule:
        return QuadratureRule(
            nodes=np.array([[self.a], [self.b]]),
            weights=np.array([1.0, 1.0]),
            target="surface",
            order=1,
            measure=2.0,
            normals=np.array([[-1.0], [1.0]]),
        )


@dataclass(frozen=True)
class Circle2D:
    R: float
    center: Tuple[float, float] = (0.0, 0.0)

    n = 2

    def __post_init__(self):
        if self.R <= 0:
            raise ContractViolation("circle radius must be positive")

    @property
    def measure(self) -> float:
        return math.pi * self.R**2

    def volume_rule(self, order: int = 64, angular=None, splits=(), graded=None) -> QuadratureRule:
        return ball_rule(2, self.R, order, angular, splits, self.center, graded)

    def boundary_rule(self, order: Optional[int] = None) -> QuadratureRule:
        return sphere_rule(2, self.R, order, self.center)


__all__ = [
    "QuadratureRule",
    "DeformationField",
    "JumpSurface",
    "Ball",
    "Annulus",
    "Interval",
    "Circle2D",
    "sphere_rule",
    "ball_rule",
    "annulus_rule",
    "interval_rule",
    "graded_breaks",
    "merge_rules",
    "integrate",
    "affine_field",
    "unit_ball_volume",
    "unit_sphere_area",
]
