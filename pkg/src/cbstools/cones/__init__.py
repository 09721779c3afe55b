"""Cone geometry - projection, membership, gamma and kappa for cone pairs."""

from .api import (
    SearchResult,
    alternating_search,
    gamma_cones,
    kappa_cones,
    member,
    oracle_gamma,
    project_cone,
)
from .models import (
    Cone,
    ConeOptions,
    ConvexCone,
    UnionCone,
    as_parts,
    as_union,
    ray,
    symmetrize,
)
from .nnls import nnls

__all__ = [
    "SearchResult",
    "alternating_search",
    "gamma_cones",
    "kappa_cones",
    "member",
    "oracle_gamma",
    "project_cone",
    "Cone",
    "ConeOptions",
    "ConvexCone",
    "UnionCone",
    "as_parts",
    "as_union",
    "ray",
    "symmetrize",
    "nnls",
]
