"""Exact Cauchy-Schwarz identities - evaluation and equality detection."""

from .api import (
    cs_equality_case,
    imag_cs_identity,
    modulus_cs_identity,
    optimal_alpha,
    parallelogram_residual,
    real_cs_identity,
    variational_bound,
    variational_sweep,
)
from .models import IdentityKind, IdentityReport

__all__ = [
    "cs_equality_case",
    "imag_cs_identity",
    "modulus_cs_identity",
    "optimal_alpha",
    "parallelogram_residual",
    "real_cs_identity",
    "variational_bound",
    "variational_sweep",
    "IdentityKind",
    "IdentityReport",
]
