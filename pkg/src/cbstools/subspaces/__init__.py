"""Subspace geometry - orthonormal bases, principal angles, gamma and kappa."""

from .api import (
    Subspace,
    gamma_subspaces,
    kappa_subspaces,
    orthonormalize,
    principal_angles,
)
from .jacobi import jacobi_eigh

__all__ = [
    "Subspace",
    "gamma_subspaces",
    "kappa_subspaces",
    "orthonormalize",
    "principal_angles",
    "jacobi_eigh",
]
