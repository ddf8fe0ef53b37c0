"""Connectivity of the N^3 sub-tetrahedra covering an order-N element.

Three constructions, applied level by level, build the cover:

* ``upright``: i(i+1)/2 tets per level, each joining a level-(i-1) node to
  the three nodes directly below it.
* ``fill``: 2i(i-1) tets per level, four per octahedral hole left between
  the upright tets.  Each hole is split by a new interior diagonal edge
  from node (i-1, j-1, k) to node (i, j, k+1); the four tets around that
  diagonal are numbered by ``fill_slot`` 0..3.
* ``chunk``: (i-1)(i-2)/2 additional interior tets, present from level 3
  up, closing the gap the first two constructions leave deeper inside.

Per level this totals 3i^2 - 3i + 1 = i^3 - (i-1)^3 tets, so levels 1..N
sum to exactly N^3.  Every tet has |signed volume| = 1/6 in lattice units
and all of its edges stay within one unit cell of the lattice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import (
    Coords,
    NodeIndex,
    enumerate_nodes,
    node_coords,
    node_id,
    tet_volume6,
)

UPRIGHT = "upright"
FILL = "fill"
CHUNK = "chunk"
KINDS = (UPRIGHT, FILL, CHUNK)

POSITIVE = "positive"
AS_GENERATED = "as-generated"
ORIENTATION_POLICIES = (POSITIVE, AS_GENERATED)


@dataclass(frozen=True)
class SubTet:
    """One linear sub-tetrahedron: 4 node ids plus generation provenance."""

    nodes: tuple[int, int, int, int]
    kind: str
    level: int
    fill_slot: int | None = None


@dataclass(frozen=True)
class SubdivisionMesh:
    """An order-N subdivision: the full node lattice plus its N^3 sub-tets.

    ``nodes`` and ``coords`` follow the canonical lattice order, so tet
    node ids double as positions in both sequences.  Construction is
    deterministic: equal inputs produce equal meshes.
    """

    order: int
    nodes: tuple[NodeIndex, ...]
    coords: tuple[Coords, ...]
    tets: tuple[SubTet, ...]
    orientation_policy: str = POSITIVE


def _check_level(level: int) -> None:
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")


def upright_tets(level: int) -> list[SubTet]:
    """Upright tets of one level.

    For k in [0, i), j in [0, i-k): the tet joining node (i-1, j, k) to
    (i, j, k), (i, j+1, k) and (i, j, k+1).  Count: i(i+1)/2.
    """
    _check_level(level)
    i = level
    return [
        SubTet(
            (
                node_id(i - 1, j, k),
                node_id(i, j, k),
                node_id(i, j + 1, k),
                node_id(i, j, k + 1),
            ),
            UPRIGHT,
            i,
        )
        for k in range(i)
        for j in range(i - k)
    ]


def fill_tets(level: int) -> list[SubTet]:
    """Hole-filling tets of one level; empty below level 2.

    For k in [0, i-2], j in [1, i-k-1], the octahedral hole is split by
    the diagonal (a, b) = ((i-1, j-1, k), (i, j, k+1)) into four tets
    (``fill_slot`` 0..3).  Count: 2i(i-1).
    """
    _check_level(level)
    i = level
    out: list[SubTet] = []
    for k in range(i - 1):
        for j in range(1, i - k):
            a = node_id(i - 1, j - 1, k)
            b = node_id(i, j, k + 1)
            quads = (
                (a, b, node_id(i - 1, j, k), node_id(i, j, k)),
                (a, b, node_id(i - 1, j, k), node_id(i - 1, j - 1, k + 1)),
                (a, b, node_id(i, j - 1, k + 1), node_id(i - 1, j - 1, k + 1)),
                (a, b, node_id(i, j - 1, k + 1), node_id(i, j, k)),
            )
            out.extend(SubTet(q, FILL, i, slot) for slot, q in enumerate(quads))
    return out


def chunk_tets(level: int) -> list[SubTet]:
    """Deep-interior tets of one level; empty below level 3.

    For k in [0, i-3], j in [0, i-k-3]: the tet on nodes (i-1, j+1, k),
    (i-1, j+1, k+1), (i-1, j, k+1) and (i, j+1, k+1).
    Count: (i-1)(i-2)/2.
    """
    _check_level(level)
    i = level
    return [
        SubTet(
            (
                node_id(i - 1, j + 1, k),
                node_id(i - 1, j + 1, k + 1),
                node_id(i - 1, j, k + 1),
                node_id(i, j + 1, k + 1),
            ),
            CHUNK,
            i,
        )
        for k in range(max(0, i - 2))
        for j in range(max(0, i - k - 2))
    ]


def level_tets(level: int) -> list[SubTet]:
    """All tets contributed by one level: upright, then fill, then chunk.

    Length is always 3i^2 - 3i + 1.
    """
    _check_level(level)
    return upright_tets(level) + fill_tets(level) + chunk_tets(level)


def _oriented(tet: SubTet, coords: tuple[Coords, ...]) -> SubTet:
    # swapping the last two nodes flips the determinant sign
    a, b, c, d = tet.nodes
    if tet_volume6(coords[a], coords[b], coords[c], coords[d]) < 0:
        return SubTet((a, b, d, c), tet.kind, tet.level, tet.fill_slot)
    return tet


def generate(order: int, orientation_policy: str = POSITIVE) -> SubdivisionMesh:
    """Build the full order-N subdivision mesh.

    Parameters
    ----------
    order : int
        Element order N >= 1.  (A degree-0 element has a single node and
        nothing to subdivide.)
    orientation_policy : str
        ``"positive"`` (default) reorders each tet, by swapping its last
        two nodes where needed, so every signed volume is +1/6 in lattice
        units.  ``"as-generated"`` keeps the construction's node order,
        under which some volumes are -1/6.

    Returns
    -------
    SubdivisionMesh
        Exactly ``order**3`` sub-tets over the canonical node lattice.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}: nothing to subdivide")
    if orientation_policy not in ORIENTATION_POLICIES:
        raise ValueError(
            f"unknown orientation policy {orientation_policy!r}; "
            f"expected one of {ORIENTATION_POLICIES}"
        )
    nodes = tuple(enumerate_nodes(order))
    coords = tuple(node_coords(n, order) for n in nodes)
    tets: list[SubTet] = []
    for i in range(1, order + 1):
        tets.extend(level_tets(i))
    if orientation_policy == POSITIVE:
        tets = [_oriented(t, coords) for t in tets]
    return SubdivisionMesh(order, nodes, coords, tuple(tets), orientation_policy)
