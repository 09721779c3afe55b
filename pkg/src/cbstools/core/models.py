"""Pydantic models shared by the subspace, cone and Hölder modules."""

import math
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .space import Vector

REPORT_TOL = 1e-12


class Method(str, Enum):
    """How a reported constant was obtained."""
    EXACT_SUBSPACE = "exact_subspace"
    EXACT_RAYS = "exact_rays"
    ALTERNATING_MULTISTART = "alternating_multistart"
    PROJECTED_GRADIENT_MULTISTART = "projected_gradient_multistart"
    ORACLE = "oracle"


class GammaReport(BaseModel):
    """A strengthened constant together with its angular distance.

    ``gamma`` and ``kappa`` are stored consistently:
    ``gamma = clamp(1 - kappa**2 / m_constant)`` (m_constant = 2 for the
    Cauchy-Schwarz setting). ``gamma_re``/``gamma_abs`` are filled in by the
    cone computation, ``oracle`` by callers that ran a brute-force check.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    gamma: float = Field(ge=-1.0 - REPORT_TOL, le=1.0 + REPORT_TOL)
    kappa: float = Field(ge=0.0)
    certificate_v: Optional[Vector] = None
    certificate_w: Optional[Vector] = None
    method: Method
    restarts_used: int = 0
    converged: bool = True
    heuristic: bool = False
    m_constant: float = 2.0
    gamma_re: Optional[float] = None
    gamma_abs: Optional[float] = None
    oracle: Optional[float] = None
    flags: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_consistency(self) -> "GammaReport":
        expected = 1.0 - self.kappa * self.kappa / self.m_constant
        if self.m_constant != 2.0:
            expected = min(1.0, max(0.0, expected))
        if abs(self.gamma - expected) > REPORT_TOL:
            raise ValueError(
                f"inconsistent report: gamma={self.gamma!r} but 1 - kappa^2/M = {expected!r}"
            )
        return self

    @property
    def intersecting(self) -> bool:
        return "intersection" in self.flags


def gamma_from_kappa(kappa: float, m_constant: float = 2.0) -> float:
    """gamma = 1 - kappa^2 / M; clamped to [0, 1] for the Hölder constant."""
    gamma = 1.0 - kappa * kappa / m_constant
    if m_constant != 2.0:
        gamma = min(1.0, max(0.0, gamma))
    return gamma


def kappa_from_gamma(gamma: float) -> float:
    """kappa = sqrt(2 - 2 gamma), the inverse of gamma_from_kappa for M = 2."""
    return math.sqrt(max(0.0, 2.0 - 2.0 * gamma))
