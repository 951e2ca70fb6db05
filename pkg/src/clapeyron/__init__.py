"""Clapeyron-type identities, invariant integrals and energy-release formulas for variational elasticity."""

from ._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
