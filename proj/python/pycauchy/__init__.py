"""Boundary data conversion for 2D incompressible flow.

Converts boundary data between the (u, d_nu u, p) and (u, sigma nu) formats
on graph patches, with manufactured flows for testing.
"""

from ._core import (
    BoundaryPatch,
    DatasetError,
    GeometryError,
    Orientation,
    PatchAudit,
    assemble_system,
    audit_patch,
    determinant,
    dn_to_stress,
    flows,
    generate,
    gradient_from_dn,
    make_patch,
    normal_at,
    normal_derivative_from_gradient,
    partition,
    solve_system,
    stress_to_dn,
    tangential_derivative,
    theta,
    traction_from_gradient,
)

__all__ = [
    "BoundaryPatch",
    "DatasetError",
    "GeometryError",
    "Orientation",
    "PatchAudit",
    "assemble_system",
    "audit_patch",
    "determinant",
    "dn_to_stress",
    "flows",
    "generate",
    "gradient_from_dn",
    "make_patch",
    "normal_at",
    "normal_derivative_from_gradient",
    "partition",
    "solve_system",
    "stress_to_dn",
    "tangential_derivative",
    "theta",
    "traction_from_gradient",
]
