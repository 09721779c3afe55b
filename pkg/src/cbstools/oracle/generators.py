"""Seeded random instances shared by the test-suite and ``cbstools verify``.

Every generator takes an explicit :class:`Rng` and consumes a fixed number
of draws for given arguments, so instances reproduce from (seed, index).
Vector norms are log-uniform in [0.1, 10] so that absolute tolerances stay
meaningful.
"""

import numpy as np

from ..cones.models import ConvexCone
from ..core.space import ScalarField, Space, Vector, norm
from ..holder.models import LpVector, MeasureSpace
from ..subspaces.api import Subspace, orthonormalize
from .rng import Rng

NORM_LOW = 0.1
NORM_HIGH = 10.0


def _gaussian(rng: Rng, shape, field: ScalarField) -> np.ndarray:
    re = rng.normal(shape)
    if field == ScalarField.REAL:
        return re
    return re + 1j * rng.normal(shape)


def _log_uniform(rng: Rng) -> float:
    return NORM_LOW * (NORM_HIGH / NORM_LOW) ** rng.random()


def random_spd(dim: int, rng: Rng, field: ScalarField = ScalarField.REAL) -> np.ndarray:
    """Hermitian positive definite matrix with eigenvalues in roughly [0.5, 5]."""
    b = _gaussian(rng, (dim, dim), field)
    g = b.conj().T @ b / dim + 0.5 * np.eye(dim)
    g = 0.5 * (g + g.conj().T)
    return g.real if field == ScalarField.REAL else g


def random_space(
    dim: int,
    rng: Rng,
    field: ScalarField = ScalarField.COMPLEX,
    weighted: bool = False,
) -> Space:
    gram = random_spd(dim, rng, field) if weighted else None
    return Space(dim=dim, field=field, gram=gram)


def random_vector(space: Space, rng: Rng) -> Vector:
    """Nonzero vector with Gaussian direction and log-uniform norm."""
    while True:
        x = Vector(space=space, coords=_gaussian(rng, space.dim, space.field))
        n = norm(x)
        if n > 0.0:
            return x * (_log_uniform(rng) / n)


def random_subspace(space: Space, k: int, rng: Rng) -> Subspace:
    return orthonormalize(space, _gaussian(rng, (space.dim, k), space.field))


def random_cone(space: Space, m: int, rng: Rng, nonnegative: bool = False) -> ConvexCone:
    """Cone on m Gaussian generators (absolute values when ``nonnegative``)."""
    gens = rng.normal((space.dim, m))
    if nonnegative:
        gens = np.abs(gens) + 1e-3
    return ConvexCone(space=space, generators=gens)


def random_measure(n: int, rng: Rng) -> MeasureSpace:
    """Weights uniform in [0.5, 2)."""
    return MeasureSpace(weights=0.5 + 1.5 * rng.uniform(n))


def random_lp_vector(measure: MeasureSpace, rng: Rng) -> LpVector:
    values = rng.normal(measure.n)
    scale = float(np.max(np.abs(values)))
    if scale == 0.0:
        values[0] = 1.0
        scale = 1.0
    return LpVector(measure=measure, values=values * (_log_uniform(rng) / scale))
