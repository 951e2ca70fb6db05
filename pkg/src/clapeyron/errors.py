"""Exception hierarchy shared by all modules.

Every error carries a short ``code`` string so that reports and the command
line runner can tell configuration problems from solver failures.
"""

from __future__ import annotations


class ArtifactError(Exception):
    code = "error"


class ContractViolation(ArtifactError, ValueError):
    code = "contract"


class HadamardViolation(ContractViolation):
    code = "hadamard"


class TractionJumpViolation(ContractViolation):
    code = "traction-jump"


class JumpProximityError(ArtifactError, ValueError):
    code = "near-jump"


class ModelError(ArtifactError, ValueError):
    code = "model"


class IntegrationError(ArtifactError, ValueError):
    code = "quadrature"


class SolverError(ArtifactError, RuntimeError):
    code = "solver"


class EllipticityLoss(SolverError):
    code = "ellipticity"


class ConfigError(ArtifactError, ValueError):
    code = "config"


__all__ = [
    "ArtifactError",
    "ContractViolation",
    "HadamardViolation",
    "TractionJumpViolation",
    "JumpProximityError",
    "ModelError",
    "IntegrationError",
    "SolverError",
    "EllipticityLoss",
    "ConfigError",
]
