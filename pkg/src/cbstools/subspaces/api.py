"""Angular distance and strengthened Cauchy-Schwarz constant of two subspaces.

gamma(V, F) is the largest principal cosine: the largest singular value of
the cross inner-product matrix of orthonormal bases. The angular distance
follows from kappa = sqrt(2 - 2 gamma), equivalently gamma = 1 - kappa^2/2.
Phase freedom in complex spaces makes sup Re(v, w) equal to sup |(v, w)|,
so no search over phases is needed.
"""

import logging
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationInfo, field_validator

from ..core.constants import INTERSECTION_TOL, ORTHONORMAL_TOL, RANK_TOL
from ..core.errors import DomainError, UsageError
from ..core.models import GammaReport, Method, gamma_from_kappa, kappa_from_gamma
from ..core.space import ZERO_TOL, Space, Vector
from .jacobi import jacobi_eigh

logger = logging.getLogger("cbstools")


def _as_columns(arr: np.ndarray, dim: int) -> np.ndarray:
    """View a 1-D array as one column; empty input as dim x 0."""
    if arr.size == 0:
        return np.zeros((dim, 0), dtype=arr.dtype)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.shape[0] != dim:
        raise UsageError(f"expected {dim} rows, got array of shape {arr.shape}")
    return arr


class Subspace(BaseModel):
    """Linear subspace given by a basis orthonormal in the space's inner product.

    ``basis`` is dim x k; k = 0 encodes the zero subspace.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    space: Space
    basis: np.ndarray

    @field_validator("basis", mode="before")
    @classmethod
    def _validate_basis(cls, value: Any, info: ValidationInfo) -> np.ndarray:
        space: Space = info.data.get("space")
        if space is None:
            raise ValueError("subspace needs a valid space")
        b = np.array(value)
        if np.iscomplexobj(b) and space.is_real:
            if np.any(b.imag != 0):
                raise ValueError("complex basis given for a real space")
            b = b.real
        b = _as_columns(b.astype(space.dtype), space.dim)
        if not np.all(np.isfinite(b)):
            raise ValueError("basis must be finite")
        k = b.shape[1]
        if k and np.max(np.abs(space.cross(b, b) - np.eye(k))) > ORTHONORMAL_TOL:
            raise ValueError("basis columns are not orthonormal; use orthonormalize()")
        b.setflags(write=False)
        return b

    @property
    def k(self) -> int:
        return self.basis.shape[1]

    def vector(self, coeffs: Any) -> Vector:
        """Member with the given basis coefficients."""
        return Vector(space=self.space, coords=self.basis @ np.asarray(coeffs))


def orthonormalize(space: Space, generators: Any) -> Subspace:
    """Orthonormal basis of the span of the generator columns.

    Modified Gram-Schmidt with one reorthogonalization pass. Columns whose
    norm after projection falls below ``RANK_TOL`` times the largest
    generator norm are dropped, so rank-deficient input is reduced.

    Args:
        space: Ambient space.
        generators: dim x m array (m may be 0); a 1-D array is one column.
    """
    gen = _as_columns(np.array(generators, dtype=complex), space.dim)
    if space.is_real:
        gen = gen.real
    if gen.shape[1] == 0:
        return Subspace(space=space, basis=np.zeros((space.dim, 0), dtype=space.dtype))

    cutoff = RANK_TOL * float(np.max(space.column_norms(gen)))
    columns = []
    for j in range(gen.shape[1]):
        w = gen[:, j].astype(space.dtype)
        for _ in range(2):
            for q in columns:
                w = w - space.cross(w, q) * q
        n = float(np.linalg.norm(space.whiten(w)))
        if n <= cutoff or n <= ZERO_TOL:
            logger.debug(f"orthonormalize: dropped dependent generator {j}")
            continue
        columns.append(w / n)

    basis = np.stack(columns, axis=1) if columns else np.zeros((space.dim, 0), dtype=space.dtype)
    return Subspace(space=space, basis=basis)


def _require_same_space(V: Subspace, F: Subspace) -> None:
    if not V.space.same_as(F.space):
        raise UsageError("subspaces live in different spaces")


def _cross(V: Subspace, F: Subspace) -> np.ndarray:
    """k_F x k_V matrix C with C[j, i] = (v_i, f_j)."""
    return V.space.cross(V.basis, F.basis)


def principal_angles(V: Subspace, F: Subspace) -> np.ndarray:
    """All principal cosines, descending, in [0, 1]."""
    _require_same_space(V, F)
    if V.k == 0 or F.k == 0:
        return np.zeros(0)
    c = _cross(V, F)
    w, _ = jacobi_eigh(c.conj().T @ c)
    cosines = np.sqrt(np.clip(w, 0.0, None))[::-1]
    return np.clip(cosines[: min(V.k, F.k)], 0.0, 1.0)


def gamma_subspaces(V: Subspace, F: Subspace) -> GammaReport:
    """Strengthened Cauchy-Schwarz constant of two subspaces.

    Returns a report with certificate unit vectors v in V, w in F attaining
    |(v, w)| = gamma. gamma within INTERSECTION_TOL of 1 is reported as
    exactly 1 with the ``intersection`` flag (the subspaces meet
    nontrivially, so no constant below 1 exists).

    Raises:
        UsageError: If V and F live in different spaces.
    """
    _require_same_space(V, F)
    if V.k == 0 or F.k == 0:
        return GammaReport(
            gamma=0.0, kappa=kappa_from_gamma(0.0), method=Method.EXACT_SUBSPACE,
            flags=["zero_subspace"],
        )

    c = _cross(V, F)
    w, vecs = jacobi_eigh(c.conj().T @ c)
    sigma = float(np.sqrt(max(w[-1], 0.0)))
    a = vecs[:, -1]
    image = c @ a
    image_norm = float(np.linalg.norm(image))
    if image_norm > ZERO_TOL:
        b = image / image_norm
    else:
        b = np.zeros(F.k, dtype=complex)
        b[0] = 1.0
    if V.space.is_real:
        a, b = a.real, b.real

    flags = []
    gamma = min(sigma, 1.0)
    if gamma >= 1.0 - INTERSECTION_TOL:
        gamma = 1.0
        flags.append("intersection")
        logger.warning("subspaces intersect nontrivially; no strengthened constant below 1")

    kappa = kappa_from_gamma(gamma)
    return GammaReport(
        gamma=gamma_from_kappa(kappa),
        kappa=kappa,
        certificate_v=V.vector(a),
        certificate_w=F.vector(b),
        method=Method.EXACT_SUBSPACE,
        flags=flags,
    )


def kappa_subspaces(V: Subspace, F: Subspace) -> float:
    """Angular distance inf ||v - w|| over unit v in V, w in F.

    Raises:
        DomainError: If either subspace is zero (the infimum is over an empty set).
    """
    _require_same_space(V, F)
    if V.k == 0 or F.k == 0:
        raise DomainError("angular distance of a zero subspace is undefined")
    return gamma_subspaces(V, F).kappa
