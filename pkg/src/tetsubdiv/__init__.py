"""Subdivision of order-N nodal tetrahedral elements into N^3 linear sub-tets.

The subdivision uses only the element's existing nodes (no new vertices
or edges appear on the exterior), every sub-tet has volume 1/(6N^3) of
the element, and every structural claim can be verified in exact integer
arithmetic via :func:`tetsubdiv.validation.validate`.
"""

from .connectivity import (
    AS_GENERATED,
    CHUNK,
    FILL,
    POSITIVE,
    UPRIGHT,
    SubTet,
    SubdivisionMesh,
    chunk_tets,
    fill_tets,
    generate,
    level_tets,
    upright_tets,
)
from .io import (
    FieldData,
    PhysicalEmbedding,
    apply_ordering_permutation,
    load_permutation,
    read_field,
    read_json,
    write_json,
    write_off_boundary,
    write_vtk_legacy,
)
from .lattice import (
    NodeIndex,
    corner_nodes,
    enumerate_nodes,
    linear_to_node,
    node_barycentric,
    node_coords,
    node_count,
    node_id,
    node_to_linear,
    tet_volume6,
)
from .validation import CheckResult, ValidationReport, validate

__version__ = "0.1.0"

__all__ = [
    "AS_GENERATED",
    "CHUNK",
    "CheckResult",
    "FILL",
    "FieldData",
    "NodeIndex",
    "POSITIVE",
    "PhysicalEmbedding",
    "SubTet",
    "SubdivisionMesh",
    "UPRIGHT",
    "ValidationReport",
    "apply_ordering_permutation",
    "chunk_tets",
    "corner_nodes",
    "enumerate_nodes",
    "fill_tets",
    "generate",
    "level_tets",
    "linear_to_node",
    "load_permutation",
    "node_barycentric",
    "node_coords",
    "node_count",
    "node_id",
    "node_to_linear",
    "read_field",
    "read_json",
    "tet_volume6",
    "upright_tets",
    "validate",
    "write_json",
    "write_off_boundary",
    "write_vtk_legacy",
]
