"""Scalars, spaces, vectors and the inner product.

Inner product convention
------------------------
``(x, y)`` is linear in the FIRST argument and conjugate linear in the
second::

    (x, y) = y^H G x

where ``G`` is the space's Gram matrix (identity when absent). Note that
``numpy.vdot(a, b)`` conjugates its *first* argument, so ``np.vdot(y, G @ x)``
is ``(x, y)`` here. Libraries disagree on this; every module in cbstools goes
through :func:`inner` or :meth:`Space.cross` so the convention lives in one
place.
"""

import cmath
import logging
import math
from enum import Enum
from functools import cached_property
from typing import Any, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, PositiveInt, ValidationInfo, field_validator

from .constants import HERMITIAN_TOL, ZERO_TOL
from .errors import DomainError, UsageError

logger = logging.getLogger("cbstools")

TWO_PI = 2.0 * math.pi

Scalar = Union[complex, float]


class ScalarField(str, Enum):
    """Ground field of a space."""
    REAL = "real"
    COMPLEX = "complex"


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class Space(BaseModel):
    """Finite-dimensional inner-product space.

    The Gram matrix, when given, must be Hermitian and positive definite.
    Its Cholesky factor is computed lazily and cached.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    dim: PositiveInt
    field: ScalarField = ScalarField.REAL
    gram: Optional[np.ndarray] = None

    @field_validator("gram", mode="before")
    @classmethod
    def _validate_gram(cls, value: Any, info: ValidationInfo) -> Optional[np.ndarray]:
        if value is None:
            return None
        dim = info.data.get("dim")
        field = info.data.get("field", ScalarField.REAL)
        g = np.array(value, dtype=complex)
        if dim is None or g.shape != (dim, dim):
            raise ValueError(f"gram must be a {dim}x{dim} matrix, got shape {g.shape}")
        if not np.all(np.isfinite(g)):
            raise ValueError("gram contains non-finite entries")
        scale = max(1.0, float(np.max(np.abs(g))))
        if float(np.max(np.abs(g - g.conj().T))) > HERMITIAN_TOL * scale:
            raise ValueError("gram is not Hermitian")
        if field == ScalarField.REAL:
            if float(np.max(np.abs(g.imag))) > HERMITIAN_TOL * scale:
                raise ValueError("gram of a real space must be real")
            g = g.real.copy()
        eig = np.linalg.eigvalsh(g)
        if eig[0] <= HERMITIAN_TOL * eig[-1]:
            raise ValueError("gram is not positive definite")
        return _frozen(g)

    @property
    def dtype(self) -> type:
        return np.complex128 if self.field == ScalarField.COMPLEX else np.float64

    @property
    def is_real(self) -> bool:
        return self.field == ScalarField.REAL

    @cached_property
    def cholesky(self) -> Optional[np.ndarray]:
        """Lower factor L with G = L L^H, or None for the standard inner product."""
        if self.gram is None:
            return None
        return _frozen(np.linalg.cholesky(self.gram))

    def same_as(self, other: "Space") -> bool:
        if self is other:
            return True
        if self.dim != other.dim or self.field != other.field:
            return False
        if self.gram is None or other.gram is None:
            return self.gram is None and other.gram is None
        return bool(np.array_equal(self.gram, other.gram))

    def cross(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Inner products of coordinate arrays: returns ``b^H G a``.

        For column matrices ``A`` (dim x m) and ``B`` (dim x k) entry ``[j, i]``
        is ``(A[:, i], B[:, j])``.
        """
        ga = a if self.gram is None else self.gram @ a
        return b.conj().T @ ga

    def whiten(self, a: np.ndarray) -> np.ndarray:
        """Map coordinates to Euclidean ones: ``L^H a`` so that norms agree."""
        if self.cholesky is None:
            return a
        return self.cholesky.conj().T @ a

    def column_norms(self, a: np.ndarray) -> np.ndarray:
        """Norms of the columns of a dim x m coordinate array."""
        return np.linalg.norm(self.whiten(a), axis=0)

    def vector(self, coords: Any) -> "Vector":
        return Vector(space=self, coords=coords)

    def zeros(self) -> "Vector":
        return Vector(space=self, coords=np.zeros(self.dim, dtype=self.dtype))

    def basis(self, i: int) -> "Vector":
        """Standard coordinate vector e_i (zero-based)."""
        coords = np.zeros(self.dim, dtype=self.dtype)
        coords[i] = 1.0
        return Vector(space=self, coords=coords)


def _coerce_coords(value: Any, space: Space) -> np.ndarray:
    arr = np.array(value)
    if np.iscomplexobj(arr) and space.is_real:
        if np.any(arr.imag != 0):
            raise ValueError("complex coordinates given for a real space")
        arr = arr.real
    arr = arr.astype(space.dtype, copy=True)
    if arr.shape != (space.dim,):
        raise ValueError(f"expected {space.dim} coordinates, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coordinates must be finite")
    return _frozen(arr)


class Vector(BaseModel):
    """Coordinate vector of a :class:`Space`. Immutable."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    space: Space
    coords: np.ndarray

    @field_validator("coords", mode="before")
    @classmethod
    def _validate_coords(cls, value: Any, info: ValidationInfo) -> np.ndarray:
        space = info.data.get("space")
        if space is None:
            raise ValueError("vector needs a valid space")
        return _coerce_coords(value, space)

    def _with(self, coords: np.ndarray) -> "Vector":
        return Vector(space=self.space, coords=coords)

    def __add__(self, other: "Vector") -> "Vector":
        require_same_space(self, other)
        return self._with(self.coords + other.coords)

    def __sub__(self, other: "Vector") -> "Vector":
        require_same_space(self, other)
        return self._with(self.coords - other.coords)

    def __neg__(self) -> "Vector":
        return self._with(-self.coords)

    def __mul__(self, scalar: Scalar) -> "Vector":
        scalar = complex(scalar)
        if self.space.is_real:
            if scalar.imag != 0:
                raise UsageError("cannot scale a real-space vector by a complex number")
            return self._with(self.coords * scalar.real)
        return self._with(self.coords * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "Vector":
        return self * (1.0 / complex(scalar))


def require_same_space(x: Vector, y: Vector) -> None:
    if not x.space.same_as(y.space):
        raise UsageError(
            f"vectors live in different spaces (dim {x.space.dim}/{x.space.field.value} "
            f"vs dim {y.space.dim}/{y.space.field.value})"
        )


def inner(x: Vector, y: Vector) -> complex:
    """Inner product (x, y), linear in the first argument.

    Raises:
        UsageError: If x and y belong to different spaces.
    """
    require_same_space(x, y)
    return complex(x.space.cross(x.coords, y.coords))


def norm(x: Vector) -> float:
    """Induced norm sqrt((x, x))."""
    return float(np.linalg.norm(x.space.whiten(x.coords)))


def normalize(x: Vector, zero_tol: float = ZERO_TOL) -> Vector:
    """Unit vector positively proportional to x.

    Raises:
        DomainError: If the norm of x does not exceed ``zero_tol``.
    """
    n = norm(x)
    if n <= zero_tol:
        raise DomainError("cannot normalize zero vector")
    return x._with(x.coords / n)


def arg_principal(z: Scalar) -> float:
    """Principal argument in [0, 2*pi); 0 for z = 0 (sign 0 = 1)."""
    z = complex(z)
    if z == 0:
        return 0.0
    t = cmath.phase(z) % TWO_PI
    # tiny negative phases round up to exactly 2*pi
    return 0.0 if t >= TWO_PI else t


def realify(space: Space) -> Space:
    """Real 2n-dimensional embedding carrying the inner product Re(x, y).

    Coordinates map as ``a + ib -> [a; b]``; with ``G = R + iS`` the embedded
    Gram matrix is ``[[R, -S], [S, R]]``.
    """
    if space.is_real:
        return space
    if space.gram is None:
        return Space(dim=2 * space.dim, field=ScalarField.REAL)
    r, s = space.gram.real, space.gram.imag
    block = np.block([[r, -s], [s, r]])
    return Space(dim=2 * space.dim, field=ScalarField.REAL, gram=block)


def realify_coords(coords: np.ndarray) -> np.ndarray:
    """Stack real and imaginary parts along the first axis."""
    coords = np.asarray(coords)
    return np.concatenate([coords.real, coords.imag], axis=0)


def realify_vector(x: Vector, target: Optional[Space] = None) -> Vector:
    target = target or realify(x.space)
    if x.space.is_real:
        return x
    return Vector(space=target, coords=realify_coords(x.coords))
