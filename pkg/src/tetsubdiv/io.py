"""Mesh and field serialization: legacy VTK, OFF boundary surfaces, JSON.

Formats
-------
* Legacy ASCII VTK unstructured grid (``DATASET UNSTRUCTURED_GRID``,
  cell type 10): the primary visualization target, with optional per-node
  scalar fields and an optional affine embedding into physical space.
* OFF: the boundary triangles only, outward-oriented, with vertices
  re-indexed densely.
* JSON: a lossless round-trippable document (``format_version`` 1) with
  the node lattice, tagged tets, and optional fields.

Field inputs are newline-separated decimals or a JSON array, one value
per lattice node in canonical order.  Because subdivision introduces no
new nodes, resampling a nodal field onto the sub-tet mesh is the
identity on values.

Node-ordering interop with external conventions is handled by
user-supplied permutation tables (JSON array or whitespace-separated
ints), never by built-in convention lists.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from typing import IO, Any, Sequence, Union

from .connectivity import KINDS, ORIENTATION_POLICIES, SubTet, SubdivisionMesh
from .lattice import NodeIndex, node_barycentric, node_count, tet_volume6
from .validation import boundary_faces, build_face_incidence

JSON_FORMAT_VERSION = 1

Destination = Union[str, os.PathLike, IO[bytes], None]
Source = Union[str, os.PathLike, IO]


@dataclass(frozen=True)
class FieldData:
    """A nodal scalar field, one finite value per node in canonical order."""

    name: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("field name must be non-empty")
        bad = [v for v in self.values if not math.isfinite(v)]
        if bad:
            raise ValueError(f"field {self.name!r} has non-finite values: {bad[:4]}")


@dataclass(frozen=True)
class PhysicalEmbedding:
    """Affine image of the reference element, given by 4 corner positions.

    Corners correspond, in order, to the element corners returned by
    :func:`tetsubdiv.lattice.corner_nodes`: the apex, then the base
    corners.  The corners must be affinely independent.
    """

    corners: tuple[
        tuple[float, float, float],
        tuple[float, float, float],
        tuple[float, float, float],
        tuple[float, float, float],
    ]

    def __post_init__(self) -> None:
        if tet_volume6(*self.corners) == 0:
            raise ValueError("degenerate embedding: the 4 corners are coplanar")

    def node_position(self, node: NodeIndex, order: int) -> tuple[float, float, float]:
        """Physical position of a lattice node via exact barycentric weights."""
        weights = node_barycentric(node, order)
        return tuple(
            float(sum(w * c[axis] for w, c in zip(weights, self.corners)))
            for axis in range(3)
        )


def _check_fields(mesh: SubdivisionMesh, fields: Sequence[FieldData]) -> None:
    for f in fields:
        if len(f.values) != len(mesh.nodes):
            raise ValueError(
                f"field {f.name!r} has {len(f.values)} values, "
                f"expected {len(mesh.nodes)} for order {mesh.order}"
            )


def _deliver(destination: Destination, data: bytes) -> bytes:
    if destination is None:
        return data
    if hasattr(destination, "write"):
        destination.write(data)
        return data
    with open(destination, "wb") as handle:
        handle.write(data)
    return data


def _read_text(source: Source) -> str:
    if hasattr(source, "read"):
        content = source.read()
        return content.decode() if isinstance(content, bytes) else content
    with open(source, "r", encoding="utf-8") as handle:
        return handle.read()


def write_vtk_legacy(
    mesh: SubdivisionMesh,
    destination: Destination = None,
    fields: Sequence[FieldData] | None = None,
    embedding: PhysicalEmbedding | None = None,
) -> bytes:
    """Serialize the mesh as a legacy ASCII VTK unstructured grid.

    Points are the lattice nodes in canonical order (lattice coordinates,
    or physical coordinates when ``embedding`` is given); cells are the
    N^3 sub-tets as VTK cell type 10; each field becomes a SCALARS block.
    Returns the bytes and, if ``destination`` is a path or writable
    object, also writes them.
    """
    fields = list(fields or ())
    _check_fields(mesh, fields)
    if embedding is None:
        points: Sequence[tuple[float, float, float]] = mesh.coords
    else:
        points = [embedding.node_position(n, mesh.order) for n in mesh.nodes]
    lines = [
        "# vtk DataFile Version 3.0",
        f"tetsubdiv order-{mesh.order} subdivision",
        "ASCII",
        "DATASET UNSTRUCTURED_GRID",
        f"POINTS {len(points)} double",
    ]
    lines += [" ".join(str(float(c)) for c in p) for p in points]
    lines.append(f"CELLS {len(mesh.tets)} {5 * len(mesh.tets)}")
    lines += ["4 {} {} {} {}".format(*t.nodes) for t in mesh.tets]
    lines.append(f"CELL_TYPES {len(mesh.tets)}")
    lines += ["10"] * len(mesh.tets)
    if fields:
        lines.append(f"POINT_DATA {len(points)}")
        for f in fields:
            lines.append(f"SCALARS {'_'.join(f.name.split())} double 1")
            lines.append("LOOKUP_TABLE default")
            lines += [str(float(v)) for v in f.values]
    data = ("\n".join(lines) + "\n").encode("ascii")
    return _deliver(destination, data)


def write_json(
    mesh: SubdivisionMesh,
    destination: Destination = None,
    fields: Sequence[FieldData] | None = None,
) -> bytes:
    """Serialize the mesh (and optional fields) as a JSON document.

    The document round-trips losslessly through :func:`read_json`.
    """
    fields = list(fields or ())
    _check_fields(mesh, fields)
    doc: dict[str, Any] = {
        "format_version": JSON_FORMAT_VERSION,
        "order": mesh.order,
        "orientation_policy": mesh.orientation_policy,
        "nodes": [
            {"i": n.i, "j": n.j, "k": n.k, "x": c[0], "y": c[1], "z": c[2]}
            for n, c in zip(mesh.nodes, mesh.coords)
        ],
        "tets": [
            {
                "nodes": list(t.nodes),
                "kind": t.kind,
                "level": t.level,
                **({"fill_slot": t.fill_slot} if t.fill_slot is not None else {}),
            }
            for t in mesh.tets
        ],
    }
    if fields:
        doc["fields"] = [{"name": f.name, "values": list(f.values)} for f in fields]
    data = (json.dumps(doc, indent=2) + "\n").encode("ascii")
    return _deliver(destination, data)


def read_json(source: Source) -> tuple[SubdivisionMesh, list[FieldData]]:
    """Parse a mesh document written by :func:`write_json`.

    Raises ``ValueError`` (with position information for malformed JSON)
    on any structural problem.
    """
    doc = json.loads(_read_text(source))
    if not isinstance(doc, dict):
        raise ValueError("mesh document must be a JSON object")
    version = doc.get("format_version")
    if version != JSON_FORMAT_VERSION:
        raise ValueError(f"unsupported format_version {version!r}")
    try:
        order = int(doc["order"])
        policy = doc["orientation_policy"]
        raw_nodes = doc["nodes"]
        raw_tets = doc["tets"]
    except KeyError as exc:
        raise ValueError(f"mesh document missing key {exc.args[0]!r}") from exc
    if policy not in ORIENTATION_POLICIES:
        raise ValueError(f"unknown orientation policy {policy!r}")
    nodes = []
    coords = []
    for pos, n in enumerate(raw_nodes):
        try:
            nodes.append(NodeIndex(int(n["i"]), int(n["j"]), int(n["k"])))
            coords.append((int(n["x"]), int(n["y"]), int(n["z"])))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad node entry at nodes[{pos}]") from exc
    tets = []
    for pos, t in enumerate(raw_tets):
        try:
            ids = tuple(int(v) for v in t["nodes"])
            kind = t["kind"]
            level = int(t["level"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad tet entry at tets[{pos}]") from exc
        if len(ids) != 4:
            raise ValueError(f"tets[{pos}] must have 4 node ids, got {len(ids)}")
        if kind not in KINDS:
            raise ValueError(f"tets[{pos}] has unknown kind {kind!r}")
        if any(not 0 <= v < len(nodes) for v in ids):
            raise ValueError(f"tets[{pos}] references a node id out of range")
        slot = t.get("fill_slot")
        tets.append(SubTet(ids, kind, level, None if slot is None else int(slot)))
    mesh = SubdivisionMesh(order, tuple(nodes), tuple(coords), tuple(tets), policy)
    fields = [
        FieldData(f["name"], tuple(float(v) for v in f["values"]))
        for f in doc.get("fields", [])
    ]
    return mesh, fields


def write_off_boundary(mesh: SubdivisionMesh, destination: Destination = None) -> bytes:
    """Serialize the boundary surface as an OFF polygon file.

    Only the 4N^2 boundary triangles are written, outward-oriented, over
    the boundary nodes re-indexed densely.  Refuses meshes whose face
    incidence is not watertight.
    """
    incidence = build_face_incidence(mesh)
    if any(len(v) not in (1, 2) for v in incidence.values()):
        raise ValueError(
            "mesh is not watertight (a face is shared by more than two tets); "
            "run validation for details"
        )
    faces = boundary_faces(incidence)
    used = sorted({v for f in faces for v in f})
    dense = {v: idx for idx, v in enumerate(used)}
    lines = ["OFF", f"{len(used)} {len(faces)} {3 * len(faces) // 2}"]
    lines += ["{} {} {}".format(*mesh.coords[v]) for v in used]
    for face in faces:
        (tet_idx, local) = incidence[face][0]
        opposite = mesh.coords[mesh.tets[tet_idx].nodes[local]]
        a, b, c = face
        # outward normal: the owning tet's 4th vertex lies on the negative side
        if tet_volume6(mesh.coords[a], mesh.coords[b], mesh.coords[c], opposite) > 0:
            b, c = c, b
        lines.append(f"3 {dense[a]} {dense[b]} {dense[c]}")
    data = ("\n".join(lines) + "\n").encode("ascii")
    return _deliver(destination, data)


def read_field(source: Source, order: int, name: str | None = None) -> FieldData:
    """Read a nodal field: a JSON array or whitespace-separated decimals.

    The value count must equal ``node_count(order)``; the mismatch error
    names the expected count.
    """
    text = _read_text(source).strip()
    if name is None:
        if hasattr(source, "read"):
            name = "field"
        else:
            name = os.path.splitext(os.path.basename(os.fspath(source)))[0] or "field"
    if text.startswith("["):
        raw = json.loads(text)
        if not isinstance(raw, list):
            raise ValueError("JSON field input must be an array of numbers")
        values = [float(v) for v in raw]
    else:
        values = [float(tok) for tok in text.split()]
    expected = node_count(order)
    if len(values) != expected:
        raise ValueError(
            f"field has {len(values)} values but order {order} requires {expected}"
        )
    return FieldData(name, tuple(values))


def load_permutation(source: Source) -> list[int]:
    """Read a node-ordering permutation table: JSON array or whitespace ints."""
    text = _read_text(source).strip()
    if text.startswith("["):
        raw = json.loads(text)
        if not isinstance(raw, list) or any(
            isinstance(v, bool) or not isinstance(v, int) for v in raw
        ):
            raise ValueError("permutation table must be a JSON array of integers")
        return list(raw)
    return [int(tok) for tok in text.split()]


def _check_permutation(table: Sequence[int], n: int) -> None:
    if sorted(table) != list(range(n)):
        raise ValueError(
            f"permutation table is not a bijection on 0..{n - 1} "
            f"(got {len(table)} entries)"
        )


def apply_ordering_permutation(
    target: FieldData | SubdivisionMesh, table: Sequence[int]
) -> FieldData | SubdivisionMesh:
    """Reorder nodal data by a permutation table (``table[old_id] = new_id``).

    For a field the values move to their new positions; for a mesh the
    nodes and coordinates are reordered and every tet's node ids are
    remapped.  Permuted meshes no longer follow the canonical lattice
    order, so they are meant for export interop, not further validation.
    """
    if isinstance(target, FieldData):
        _check_permutation(table, len(target.values))
        out = [0.0] * len(target.values)
        for old, new in enumerate(table):
            out[new] = target.values[old]
        return FieldData(target.name, tuple(out))
    if isinstance(target, SubdivisionMesh):
        _check_permutation(table, len(target.nodes))
        nodes: list[NodeIndex] = [NodeIndex(0, 0, 0)] * len(target.nodes)
        coords = [(0, 0, 0)] * len(target.coords)
        for old, new in enumerate(table):
            nodes[new] = target.nodes[old]
            coords[new] = target.coords[old]
        tets = tuple(
            SubTet(tuple(table[v] for v in t.nodes), t.kind, t.level, t.fill_slot)
            for t in target.tets
        )
        return SubdivisionMesh(
            target.order, tuple(nodes), tuple(coords), tets, target.orientation_policy
        )
    raise TypeError(f"cannot permute object of type {type(target).__name__}")
