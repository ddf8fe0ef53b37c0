"""Shared builders for corrupted and partial meshes used across test modules."""

from tetsubdiv.connectivity import (
    AS_GENERATED,
    SubdivisionMesh,
    fill_tets,
    upright_tets,
)
from tetsubdiv.lattice import enumerate_nodes, node_coords


def replace_tets(mesh, tets):
    """Same lattice, different tet list; used to build corrupted meshes."""
    return SubdivisionMesh(
        mesh.order, mesh.nodes, mesh.coords, tuple(tets), mesh.orientation_policy
    )


def without_chunks(order):
    """The first two constructions only; leaves one interior cavity per chunk."""
    nodes = tuple(enumerate_nodes(order))
    coords = tuple(node_coords(v, order) for v in nodes)
    tets = tuple(
        t
        for i in range(1, order + 1)
        for t in upright_tets(i) + fill_tets(i)
    )
    return SubdivisionMesh(order, nodes, coords, tets, AS_GENERATED)
