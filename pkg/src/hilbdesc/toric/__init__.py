"""Toric surfaces: fixed-point data, Euler characteristics, surface series."""

from .closed_forms import FormulaCheck, closed_form_suite
from .series import limit_t_one, normalized_coefficients, z_surface
from .surface import (ChernData, EqClassS, SurfaceError, ToricSurface, chern_classes, chern_data,
                      euler_char, parse_bundle, parse_surface, surface_hirzebruch, surface_P1xP1,
                      surface_P2)
from .universal import RankDeficiency, UniversalFactorization, universal_extract

__all__ = [
    "ChernData", "EqClassS", "FormulaCheck", "RankDeficiency", "SurfaceError", "ToricSurface",
    "UniversalFactorization", "chern_classes", "chern_data", "closed_form_suite", "euler_char",
    "limit_t_one", "normalized_coefficients", "parse_bundle", "parse_surface", "surface_P1xP1",
    "surface_P2", "surface_hirzebruch", "universal_extract", "z_surface",
]
