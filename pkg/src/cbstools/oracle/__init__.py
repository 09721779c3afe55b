"""Oracle module - seeded RNG and brute-force baselines."""

from .api import (
    brute_force_gamma,
    grid_gamma_2d,
    oracle_report,
    sample_cone_members,
    sample_unit_in_cone,
    sample_unit_in_subspace,
    unit_members,
)
from .rng import DEFAULT_SEED, Rng

__all__ = [
    "brute_force_gamma",
    "grid_gamma_2d",
    "oracle_report",
    "sample_cone_members",
    "sample_unit_in_cone",
    "sample_unit_in_subspace",
    "unit_members",
    "DEFAULT_SEED",
    "Rng",
]
