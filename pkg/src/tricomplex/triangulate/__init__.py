"""Gluing tables, their validation and homology, and layered constructions."""
from .gluing import GluingError, GluingTable, ValidationReport, validate
from .homology import HomologyProfile, homology
from .layered import (
    BoundaryTorusState,
    LayeredSolidTorus,
    TorusProduct,
    build_layered_solid_torus,
    build_lens,
    build_sol,
    build_torus_product,
    layer_tetrahedron,
    product_block,
)
from .snf import invariant_factors

__all__ = [
    "BoundaryTorusState",
    "GluingError",
    "GluingTable",
    "HomologyProfile",
    "LayeredSolidTorus",
    "TorusProduct",
    "ValidationReport",
    "build_layered_solid_torus",
    "build_lens",
    "build_sol",
    "build_torus_product",
    "homology",
    "invariant_factors",
    "layer_tetrahedron",
    "product_block",
    "validate",
]
