"""Evaluate both sides of the exact Cauchy-Schwarz identities.

All identities are written for unit vectors ``u = x/||x||`` and
``v = y/||y||`` and rescaled by ``||x|| ||y||``. Residuals are absolute.

Vectors of a real space are evaluated in its complexification when an
identity needs ``i*v`` or ``e^(i alpha) u``; the Gram matrix is real so the
inner product extends unchanged.
"""

import cmath
import logging
import math
from typing import List, Tuple

import numpy as np

from ..core.errors import DomainError
from ..core.space import (
    TWO_PI,
    ZERO_TOL,
    Space,
    Vector,
    arg_principal,
    inner,
    norm,
    require_same_space,
)
from .models import IdentityKind, IdentityReport

logger = logging.getLogger("cbstools")

DEFAULT_EQUALITY_TOL = 1e-8


def _norms(x: Vector, y: Vector) -> Tuple[float, float]:
    require_same_space(x, y)
    nx, ny = norm(x), norm(y)
    if nx <= ZERO_TOL or ny <= ZERO_TOL:
        raise DomainError("identities need nonzero vectors")
    return nx, ny


def _dist2(space: Space, a: np.ndarray, b: np.ndarray) -> float:
    """Squared distance between coordinate arrays (complex allowed)."""
    d = space.whiten(np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex))
    return float(np.vdot(d, d).real)


def _units(x: Vector, y: Vector, nx: float, ny: float) -> Tuple[np.ndarray, np.ndarray]:
    return x.coords / nx, y.coords / ny


def real_cs_identity(x: Vector, y: Vector) -> IdentityReport:
    """Re (x,y) = ||x|| ||y|| (1 - ||u - v||^2 / 2).

    In a real space this is the stability form of Cauchy-Schwarz itself.

    Raises:
        DomainError: If x or y is zero.
    """
    nx, ny = _norms(x, y)
    u, v = _units(x, y, nx, ny)
    d = _dist2(x.space, u, v)
    lhs = inner(x, y).real
    rhs = nx * ny * (1.0 - 0.5 * d)
    return IdentityReport(
        kind=IdentityKind.REAL, lhs=lhs, rhs=rhs, residual=abs(lhs - rhs),
        angular_terms={"u-v": d},
    )


def imag_cs_identity(x: Vector, y: Vector) -> IdentityReport:
    """Im (x,y) = ||x|| ||y|| (1 - ||u - iv||^2 / 2)."""
    nx, ny = _norms(x, y)
    u, v = _units(x, y, nx, ny)
    d = _dist2(x.space, u, 1j * v)
    lhs = inner(x, y).imag
    rhs = nx * ny * (1.0 - 0.5 * d)
    return IdentityReport(
        kind=IdentityKind.IMAG, lhs=lhs, rhs=rhs, residual=abs(lhs - rhs),
        angular_terms={"u-iv": d},
    )


def modulus_cs_identity(x: Vector, y: Vector) -> IdentityReport:
    """|(x,y)| from both angular defects; implies Cauchy-Schwarz."""
    nx, ny = _norms(x, y)
    u, v = _units(x, y, nx, ny)
    d_re = _dist2(x.space, u, v)
    d_im = _dist2(x.space, u, 1j * v)
    lhs = abs(inner(x, y))
    rhs = nx * ny * math.hypot(1.0 - 0.5 * d_re, 1.0 - 0.5 * d_im)
    return IdentityReport(
        kind=IdentityKind.MODULUS, lhs=lhs, rhs=rhs, residual=abs(lhs - rhs),
        angular_terms={"u-v": d_re, "u-iv": d_im},
    )


def variational_bound(x: Vector, y: Vector, alpha: float) -> IdentityReport:
    """Left side ||x|| ||y|| (1 - ||e^(ia) u - v||^2 / 2) against |(x,y)|.

    The left side never exceeds the right; equality holds at
    ``alpha = optimal_alpha(x, y)`` whenever (x,y) != 0.
    """
    nx, ny = _norms(x, y)
    u, v = _units(x, y, nx, ny)
    d = _dist2(x.space, cmath.exp(1j * alpha) * u, v)
    lhs = nx * ny * (1.0 - 0.5 * d)
    rhs = abs(inner(x, y))
    return IdentityReport(
        kind=IdentityKind.VARIATIONAL, lhs=lhs, rhs=rhs, residual=abs(lhs - rhs),
        angular_terms={"e^(ia)u-v": d}, alpha=alpha,
    )


def optimal_alpha(x: Vector, y: Vector) -> float:
    """Rotation -Arg(x,y) reduced into [0, 2*pi); 0 when (x,y) = 0."""
    nx, ny = _norms(x, y)
    ip = inner(x, y)
    if abs(ip) <= ZERO_TOL * nx * ny:
        return 0.0
    alpha = (-arg_principal(ip)) % TWO_PI
    return 0.0 if alpha >= TWO_PI else alpha


def variational_sweep(x: Vector, y: Vector, count: int = 64) -> List[IdentityReport]:
    """Variational bound at ``count`` equispaced angles plus the optimal one (last)."""
    alphas = [TWO_PI * k / count for k in range(count)]
    alphas.append(optimal_alpha(x, y))
    return [variational_bound(x, y, a) for a in alphas]


def cs_equality_case(x: Vector, y: Vector, tol: float = DEFAULT_EQUALITY_TOL) -> bool:
    """Numerical proxy for linear dependence: |(x,y)| >= (1 - tol) ||x|| ||y||.

    A zero vector makes the pair dependent.
    """
    require_same_space(x, y)
    nx, ny = norm(x), norm(y)
    if nx <= ZERO_TOL or ny <= ZERO_TOL:
        return True
    return abs(inner(x, y)) >= (1.0 - tol) * nx * ny


def parallelogram_residual(x: Vector, y: Vector) -> float:
    """| ||x+y||^2 + ||x-y||^2 - 2||x||^2 - 2||y||^2 |."""
    require_same_space(x, y)
    lhs = norm(x + y) ** 2 + norm(x - y) ** 2
    rhs = 2.0 * norm(x) ** 2 + 2.0 * norm(y) ** 2
    return abs(lhs - rhs)
