"""Pydantic models for discrete L^p data and the Hölder reports."""

from enum import Enum
from functools import cached_property
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

from ..core.models import GammaReport
from ..core.space import ScalarField, Space

SLACK_TOL = 1e-10


class MVariant(str, Enum):
    """Constant M in the strengthened Hölder inequality."""
    MAX = "max"   # M = max(p, q)
    SUM = "sum"   # M = p + q, the weaker classical constant


def m_constant(p: float, q: float, variant: MVariant = MVariant.MAX) -> float:
    return max(p, q) if variant == MVariant.MAX else p + q


class MeasureSpace(BaseModel):
    """Finite measure space {0, ..., n-1} with point masses ``weights``."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    weights: np.ndarray

    @field_validator("weights", mode="before")
    @classmethod
    def _validate_weights(cls, value: Any) -> np.ndarray:
        w = np.array(value)
        if np.iscomplexobj(w):
            raise ValueError("measure weights must be real")
        w = w.astype(float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("measure weights must be a nonempty list")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise ValueError("measure weights must be finite and positive")
        w.setflags(write=False)
        return w

    @property
    def n(self) -> int:
        return self.weights.size

    def same_as(self, other: "MeasureSpace") -> bool:
        return self is other or bool(np.array_equal(self.weights, other.weights))

    @cached_property
    def space(self) -> Space:
        """Real coordinate space whose inner product is the L^2(mu) pairing."""
        return Space(dim=self.n, field=ScalarField.REAL, gram=np.diag(self.weights))

    def vector(self, values: Any) -> "LpVector":
        return LpVector(measure=self, values=values)


class LpVector(BaseModel):
    """Real-valued function on a :class:`MeasureSpace`."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    measure: MeasureSpace
    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def _validate_values(cls, value: Any, info: ValidationInfo) -> np.ndarray:
        measure = info.data.get("measure")
        if measure is None:
            raise ValueError("function needs a valid measure")
        v = np.array(value)
        if np.iscomplexobj(v):
            raise ValueError("L^p data must be real-valued")
        v = v.astype(float)
        if v.shape != (measure.n,):
            raise ValueError(f"expected {measure.n} values, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        v.setflags(write=False)
        return v


class HolderReport(BaseModel):
    """Both sides of the strengthened Hölder inequality for one pair.

    ``bound = ||f||_p ||g||_q (1 - defect / M)`` and ``slack = bound - pairing``.
    """

    p: float
    q: float
    m_variant: MVariant = MVariant.MAX
    m_constant: float
    pairing: float = Field(ge=0.0)
    bound: float
    defect: float = Field(ge=0.0)
    slack: float

    @model_validator(mode="after")
    def _check_slack(self) -> "HolderReport":
        if abs(self.slack - (self.bound - self.pairing)) > 1e-12 * max(1.0, abs(self.bound)):
            raise ValueError("slack must equal bound - pairing")
        return self

    @property
    def holds(self) -> bool:
        return self.slack >= -SLACK_TOL


class HolderGammaReport(GammaReport):
    """Hölder constant bound for a cone pair.

    ``gamma`` is ``clamp(1 - kappa^2 / M)`` where kappa is the angular
    distance between the Mazur images of |C1| and |C2| in L^2.
    """

    p: float
    q: float
    m_variant: MVariant = MVariant.MAX
