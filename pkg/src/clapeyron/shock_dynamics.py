"""One-dimensional elastodynamics with a single shock.

Jumps are taken as plus side minus minus side.  The minus side lies behind
the shock, the shock moves in the +x direction with speed V >= 0 and its
unit normal is +1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .energy_models import ScalarPotential
from .errors import ContractViolation, SolverError
from .identity_lab import IdentityReport, make_report


@dataclass(frozen=True)
class ShockSolution1D:
    U: ScalarPotential
    F_minus: float
    F_plus: float
    v_minus: float
    v_plus: float
    V: float
    s0: float = 0.0

    @property
    def jF(self) -> float:
        return self.F_plus - self.F_minus

    @property
    def jv(self) -> float:
        return self.v_plus - self.v_minus

    @property
    def P_minus(self) -> float:
        return float(self.U.P(self.F_minus))

    @property
    def P_plus(self) -> float:
        return float(self.U.P(self.F_plus))

    @property
    def jP(self) -> float:
        return self.P_plus - self.P_minus

    def position(self, t: float) -> float:
        return self.s0 + self.V * t

    def energy_density(self, side: str) -> float:
        F, v = (self.F_minus, self.v_minus) if side == "-" else (self.F_plus, self.v_plus)
        return 0.5 * v * v + float(self.U.U(F))

    def rh_residual(self) -> float:
        return abs(self.jv * self.V + self.jP)

    def hadamard_residual(self) -> float:
        return abs(self.V * self.jF + self.jv)

    def lax_admissible(self) -> bool:
        return bool(self.U.wave_speed(self.F_plus) < self.V < self.U.wave_speed(self.F_minus))

    def state(self, x, t: float):
        """(y, v, F, e) at positions x and time t."""
        x = np.asarray(x, dtype=float)
        s = self.position(t)
        behind = x < s
        F = np.where(behind, self.F_minus, self.F_plus)
        v = np.where(behind, self.v_minus, self.v_plus)
        y = np.where(
            behind,
            self.F_minus * x + self.v_minus * t + self.jF * self.s0,
            self.F_plus * x + self.v_plus * t,
        )
        e = 0.5 * v * v + self.U.U(F)
        return y, v, F, e

    def to_tsv(self, path, t: float, a: float, b: float, samples: int = 201) -> None:
        x = np.linspace(a, b, samples)
        _, v, F, e = self.state(x, t)
        np.savetxt(path, np.column_stack([x, v, F, e]), delimiter="\t", header="x\tv\tF\te", comments="", fmt="%.17g")


def build_shock(U: ScalarPotential, F_minus: float, F_plus: float, v_plus: float, s0: float = 0.0) -> ShockSolution1D:
    """Shock joining (F_minus, v_minus) behind to (F_plus, v_plus) ahead."""
    jF = F_plus - F_minus
    if jF == 0.0:
        raise ContractViolation("the two strains coincide; there is no shock")
    jP = float(U.P(F_plus) - U.P(F_minus))
    ratio = jP / jF
    if not ratio > 0.0:
        raise SolverError(f"[P]/[F] = {ratio:.6g} <= 0; no real shock speed")
    V = math.sqrt(ratio)
    v_minus = v_plus + V * jF
    return ShockSolution1D(U, float(F_minus), float(F_plus), float(v_minus), float(v_plus), V, float(s0))


def shock_pstar(sol: ShockSolution1D, tol: float = 1e-12) -> float:
    """p* = [U] - {P}[F]; the space-time form built from (v, -P) and (v, F) must equal -p*."""
    U = sol.U
    jU = float(U.U(sol.F_plus) - U.U(sol.F_minus))
    mean_P = 0.5 * (sol.P_plus + sol.P_minus)
    ps = jU - mean_P * sol.jF
    st = spacetime_pstar(sol)
    if abs(st + ps) > tol * max(1.0, abs(ps)):
        raise SolverError(f"space-time and spatial forms disagree: {st!r} vs {-ps!r}")
    return ps


def spacetime_pstar(sol: ShockSolution1D, side: str = "-") -> float:
    """[L] - <Pcal, [Fcal]> with L = v^2/2 - U, Fcal = (v, F), Pcal = (v, -P)."""
    U = sol.U
    L = lambda F, v: 0.5 * v * v - float(U.U(F))
    jL = L(sol.F_plus, sol.v_plus) - L(sol.F_minus, sol.v_minus)
    if side == "-":
        Pc = (sol.v_minus, -sol.P_minus)
    else:
        Pc = (sol.v_plus, -sol.P_plus)
    return jL - (Pc[0] * sol.jv + Pc[1] * sol.jF)


def _check_interval(sol, a, b, t):
    s = sol.position(t)
    if not a < s < b:
        raise ContractViolation(f"shock at {s:g} lies outside ({a:g}, {b:g})")


def interval_energy(sol: ShockSolution1D, a: float, b: float, t: float) -> float:
    s = sol.position(t)
    return sol.energy_density("-") * (s - a) + sol.energy_density("+") * (b - s)


def verify_energy_balance(
    sol: ShockSolution1D,
    interval: Tuple[float, float],
    t: float,
    speeds: Tuple[float, float] = (0.0, 0.0),
    tol: float = 1e-10,
    dt: float = 1e-3,
) -> IdentityReport:
    """d/dt int e = [P v]_a^b + V P*_Sigma (+ e V_n at moving ends).

    The left side is a central difference in time of the exact piecewise
    energy; the integrand is linear in t, so the difference is exact up to
    rounding.
    """
    a, b = interval
    _check_interval(sol, a, b, t)
    va, vb = speeds

    def E(tt):
        return interval_energy(sol, a + va * (tt - t), b + vb * (tt - t), tt)

    lhs = (E(t + dt) - E(t - dt)) / (2.0 * dt)
    flux = sol.P_plus * sol.v_plus - sol.P_minus * sol.v_minus
    moving = sol.energy_density("+") * vb - sol.energy_density("-") * va
    rhs = flux + sol.V * spacetime_pstar(sol) + moving
    return make_report("energy-balance", lhs, rhs, tol, "shock-energy-balance")


def energy_rate_closed(sol: ShockSolution1D) -> float:
    return sol.V * (sol.energy_density("-") - sol.energy_density("+"))


@dataclass(frozen=True)
class DynamicClapeyronTerms:
    volume: float
    static: float
    inertial: float
    boundary: float
    t_i: float
    t_i_star: float


def dynamic_clapeyron_terms(sol: ShockSolution1D, interval: Tuple[float, float], t: float) -> DynamicClapeyronTerms:
    a, b = interval
    _check_interval(sol, a, b, t)
    U = sol.U
    s = sol.position(t)
    ya, _, Fa, _ = sol.state(np.array(a), t)
    yb, _, Fb, _ = sol.state(np.array(b), t)
    Pa, Pb = float(U.P(Fa)), float(U.P(Fb))
    Psa, Psb = float(U.pstar(Fa)), float(U.pstar(Fb))
    boundary = (Pb * float(yb) + Psb * b) - (Pa * float(ya) + Psa * a)
    ps = shock_pstar(sol)
    static = boundary - ps * s
    ys = sol.F_plus * s + sol.v_plus * t
    t_i = sol.V * sol.jv
    mean_F = 0.5 * (sol.F_plus + sol.F_minus)
    t_i_star = -mean_F * t_i
    # the regular part of the acceleration vanishes for piecewise-constant states
    inertial = t_i * ys + t_i_star * s
    volume = float(U.U(sol.F_minus)) * (s - a) + float(U.U(sol.F_plus)) * (b - s)
    return DynamicClapeyronTerms(volume, static, inertial, boundary, t_i, t_i_star)


def verify_dynamic_clapeyron(sol: ShockSolution1D, interval: Tuple[float, float], t: float, tol: float = 1e-10) -> IdentityReport:
    """int U = (static + inertial) / n with n = 1."""
    d = dynamic_clapeyron_terms(sol, interval, t)
    return make_report("dynamic-clapeyron", d.volume, d.static + d.inertial, tol, "dynamic-clapeyron")


def admissible_sweep(U: ScalarPotential, count: int = 100, seed: int = 3, span: float = 2.0, max_draws: int = 100000):
    """Random Lax-admissible shocks; returns (solutions, p* values)."""
    rng = np.random.default_rng(seed)
    sols, vals = [], []
    draws = 0
    while len(sols) < count and draws < max_draws:
        draws += 1
        Fm, Fp = rng.uniform(-span, span, size=2)
        if abs(Fm - Fp) < 1e-3:
            continue
        try:
            sol = build_shock(U, Fm, Fp, float(rng.uniform(-1, 1)))
        except SolverError:
            continue
        if not sol.lax_admissible():
            continue
        sols.append(sol)
        vals.append(shock_pstar(sol))
    if len(sols) < count:
        raise SolverError(f"only {len(sols)} admissible pairs found in {draws} draws")
    return sols, np.array(vals)


__all__ = [
    "ShockSolution1D",
    "DynamicClapeyronTerms",
    "build_shock",
    "shock_pstar",
    "spacetime_pstar",
    "interval_energy",
    "energy_rate_closed",
    "verify_energy_balance",
    "dynamic_clapeyron_terms",
    "verify_dynamic_clapeyron",
    "admissible_sweep",
]
