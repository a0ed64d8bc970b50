"""Periodic orbits of the planar circular restricted three-body problem."""

from ._pcr3bp import (
    EXAMPLE_MU,
    NOMINAL_MU,
    ClosedOrbit,
    Error,
    area_integral,
    classify,
    close_orbit,
    detect_period,
    effective_potential,
    example_orbit,
    field_sample,
    is_simple,
    jacobi_constant,
    l4_direction_analysis,
    lift,
    reference_example,
    parse_orbit_json,
    propagate,
    signed_area,
    vector_field,
    verify,
    winding_number,
)

__all__ = [
    "EXAMPLE_MU",
    "NOMINAL_MU",
    "ClosedOrbit",
    "Error",
    "area_integral",
    "classify",
    "close_orbit",
    "detect_period",
    "effective_potential",
    "example_orbit",
    "field_sample",
    "is_simple",
    "jacobi_constant",
    "l4_direction_analysis",
    "lift",
    "reference_example",
    "parse_orbit_json",
    "propagate",
    "signed_area",
    "vector_field",
    "verify",
    "winding_number",
]
