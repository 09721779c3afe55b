"""Core module - spaces, inner products, shared models and errors."""

from .errors import CbsError, DomainError, OracleError, ParseError, UsageError, VerificationError
from .models import GammaReport, Method, gamma_from_kappa, kappa_from_gamma
from .space import (
    ZERO_TOL,
    ScalarField,
    Space,
    Vector,
    arg_principal,
    inner,
    norm,
    normalize,
    realify,
    realify_vector,
)

__all__ = [
    "CbsError",
    "DomainError",
    "OracleError",
    "ParseError",
    "UsageError",
    "VerificationError",
    "GammaReport",
    "Method",
    "gamma_from_kappa",
    "kappa_from_gamma",
    "ZERO_TOL",
    "ScalarField",
    "Space",
    "Vector",
    "arg_principal",
    "inner",
    "norm",
    "normalize",
    "realify",
    "realify_vector",
]
