"""Pydantic models for finitely generated cones and search options."""

from functools import cached_property
from typing import Any, List, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, ValidationInfo, field_validator

from ..core.constants import DEFAULT_MAX_ITER, DEFAULT_RESTARTS, DEFAULT_SEARCH_TOL, DEFAULT_SEED
from ..core.space import Space, Vector

MIN_GENERATOR_NORM = 1e-12


class ConvexCone(BaseModel):
    """Conic hull of the generator columns (V-representation) in a real space.

    x is a member iff x = generators @ lam for some lam >= 0.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    space: Space
    generators: np.ndarray

    @field_validator("space")
    @classmethod
    def _real_space(cls, space: Space) -> Space:
        if not space.is_real:
            raise ValueError("cones need a real space; embed complex data with realify()")
        return space

    @field_validator("generators", mode="before")
    @classmethod
    def _validate_generators(cls, value: Any, info: ValidationInfo) -> np.ndarray:
        space: Space = info.data.get("space")
        if space is None:
            raise ValueError("cone needs a valid real space")
        g = np.array(value, dtype=float)
        if g.size == 0:
            g = np.zeros((space.dim, 0))
        elif g.ndim == 1:
            g = g[:, None]
        if g.ndim != 2 or g.shape[0] != space.dim:
            raise ValueError(f"generators must be a {space.dim} x m matrix, got shape {g.shape}")
        if not np.all(np.isfinite(g)):
            raise ValueError("generators must be finite")
        if g.shape[1] and np.min(space.column_norms(g)) < MIN_GENERATOR_NORM:
            raise ValueError("cone generators must be nonzero")
        g.setflags(write=False)
        return g

    @property
    def m(self) -> int:
        return self.generators.shape[1]

    @cached_property
    def whitened(self) -> np.ndarray:
        """Generators in Euclidean (whitened) coordinates."""
        w = self.space.whiten(self.generators)
        w.setflags(write=False)
        return w

    def negated(self) -> "ConvexCone":
        return ConvexCone(space=self.space, generators=-self.generators)

    def member_from(self, coeffs: Any) -> Vector:
        """generators @ coeffs; coefficients must be nonnegative."""
        coeffs = np.asarray(coeffs, dtype=float)
        if np.any(coeffs < 0):
            raise ValueError("cone coefficients must be nonnegative")
        return Vector(space=self.space, coords=self.generators @ coeffs)


class UnionCone(BaseModel):
    """Finite union of convex cones over one space (possibly non-convex)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    parts: List[ConvexCone] = Field(min_length=1)

    @field_validator("parts")
    @classmethod
    def _shared_space(cls, parts: List[ConvexCone]) -> List[ConvexCone]:
        first = parts[0].space
        if not all(p.space.same_as(first) for p in parts[1:]):
            raise ValueError("all parts of a union cone must share one space")
        return parts

    @property
    def space(self) -> Space:
        return self.parts[0].space


Cone = Union[ConvexCone, UnionCone]


def as_parts(cone: Cone) -> List[ConvexCone]:
    return list(cone.parts) if isinstance(cone, UnionCone) else [cone]


def as_union(cone: Cone) -> UnionCone:
    return cone if isinstance(cone, UnionCone) else UnionCone(parts=[cone])


def symmetrize(cone: Cone) -> UnionCone:
    """C union -C; parts keep their order with the negated copies appended."""
    parts = as_parts(cone)
    return UnionCone(parts=parts + [p.negated() for p in parts])


def ray(space: Space, direction: Any) -> ConvexCone:
    """Single-generator cone."""
    return ConvexCone(space=space, generators=np.asarray(direction, dtype=float)[:, None])


class ConeOptions(BaseModel):
    """Multistart settings for the cone and Hölder searches."""
    restarts: int = Field(default=DEFAULT_RESTARTS, ge=0)
    max_iter: PositiveInt = DEFAULT_MAX_ITER
    tol: PositiveFloat = DEFAULT_SEARCH_TOL
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2 ** 64)
