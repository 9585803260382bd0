"""Convex hulls of random walks, reflection arrangements, and conic geometry."""

from .absorption import (
    AbsorptionResult,
    WalkFamily,
    absorption_probability,
    absorption_probability_float,
    non_absorption_probability_float,
    one_dimensional_reference,
    wendel_probability,
)
from .coefficients import EXACT_N_CAP, b_row, d_row, stirling_row

__all__ = [
    "AbsorptionResult",
    "WalkFamily",
    "absorption_probability",
    "absorption_probability_float",
    "non_absorption_probability_float",
    "one_dimensional_reference",
    "wendel_probability",
    "EXACT_N_CAP",
    "b_row",
    "d_row",
    "stirling_row",
]
