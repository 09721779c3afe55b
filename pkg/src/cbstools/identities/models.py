"""Pydantic models for the Cauchy-Schwarz identities."""

from enum import Enum
from typing import Dict, Optional

from pydantic import BaseModel, Field

BOUND_TOL = 1e-12


class IdentityKind(str, Enum):
    """Which identity or bound a report evaluates."""
    REAL = "real"
    IMAG = "imag"
    MODULUS = "modulus"
    VARIATIONAL = "variational"


class IdentityReport(BaseModel):
    """Both sides of an identity and their absolute residual.

    ``angular_terms`` holds the evaluated defects, keyed ``"u-v"``, ``"u-iv"``
    or ``"e^(ia)u-v"`` (squared distances between normalized vectors).
    """
    kind: IdentityKind
    lhs: float
    rhs: float
    residual: float = Field(ge=0.0)
    angular_terms: Dict[str, float] = Field(default_factory=dict)
    alpha: Optional[float] = None

    @property
    def holds(self) -> bool:
        """For the variational bound: lhs <= rhs up to rounding."""
        return self.lhs <= self.rhs + BOUND_TOL
