"""Hölder module - L^p norms, Mazur map, strengthened Hölder inequality."""

from .api import (
    MazurObjective,
    conjugate_exponent,
    gamma_holder_bound,
    holder_defect,
    lp_norm,
    mazur_map,
    mazur_objective,
    measure_from_space,
    oracle_gamma_holder,
    pairing_l1,
)
from .models import HolderGammaReport, HolderReport, LpVector, MeasureSpace, MVariant, m_constant

__all__ = [
    "MazurObjective",
    "conjugate_exponent",
    "gamma_holder_bound",
    "holder_defect",
    "lp_norm",
    "mazur_map",
    "mazur_objective",
    "measure_from_space",
    "oracle_gamma_holder",
    "pairing_l1",
    "HolderGammaReport",
    "HolderReport",
    "LpVector",
    "MeasureSpace",
    "MVariant",
    "m_constant",
]
