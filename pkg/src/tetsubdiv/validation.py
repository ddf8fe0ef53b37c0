"""Exact validation of subdivision meshes.

Every geometric predicate here runs in integer (or scaled-integer)
arithmetic on the lattice coordinates; there are no floating-point
tolerances anywhere.  ``validate`` bundles the individual checks into a
:class:`ValidationReport`:

* ``volumes``: every sub-tet has |6V| = 1 in lattice units and the total
  equals N^3 (all +1 under the positive orientation policy).
* ``face-pairing``: every triangular face is shared by 1 or 2 tets, there
  are exactly 4N^2 single-incidence faces, and all of them lie on one of
  the four element planes.
* ``boundary-congruence``: each element plane is tiled by exactly N^2
  unit lattice triangles whose vertices are exactly the lattice nodes on
  that plane (no new exterior vertices or edges).
* ``counts``: canonical node lattice, N^3 tets, per-level deltas
  3i^2 - 3i + 1, and per-kind totals.
* ``euler-characteristic``: the boundary surface is closed with
  V - E + F = 2.
* ``containment-sampling``: seeded random rational points in the open
  element, each required to lie strictly inside exactly one sub-tet.
* ``pairwise-disjoint``: exhaustive exact tet/tet interior-intersection
  test (separating-plane search); O(N^6) pairs, so gated by an order
  limit.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Sequence

from .connectivity import POSITIVE, SubTet, SubdivisionMesh
from .lattice import (
    Coords,
    enumerate_nodes,
    linear_to_node,
    node_coords,
    node_count,
    tet_volume6,
)

FaceKey = tuple[int, int, int]
FaceIncidence = dict[FaceKey, list[tuple[int, int]]]

# local face f omits local vertex f
_LOCAL_FACES = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))
_TET_EDGES = tuple(combinations(range(4), 2))

BOUNDARY_PLANES = ("x=0", "y=0", "z=0", "x+y+z=N")
INTERIOR = "interior"

# scale for rational sample points; prime so lattice planes are hard to hit
_SAMPLE_DENOMINATOR = 1_000_003


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a single validation check."""

    name: str
    passed: bool
    summary: str
    details: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class ValidationReport:
    """Ordered results of all checks run against one mesh."""

    order: int
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        lines = [
            f"validation of order-{self.order} subdivision: "
            f"{'PASS' if self.passed else 'FAIL'}"
        ]
        lines += [
            f"  {'PASS' if c.passed else 'FAIL'}  {c.name}: {c.summary}"
            for c in self.checks
        ]
        return "\n".join(lines)

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "summary": c.summary,
                    "details": c.details,
                }
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def signed_volume6(tet: SubTet | Sequence[int], coords: Sequence[Coords]) -> int:
    """6x signed volume of a sub-tet in lattice units; 0 if degenerate."""
    nodes = tet.nodes if isinstance(tet, SubTet) else tuple(tet)
    p0, p1, p2, p3 = (coords[n] for n in nodes)
    return tet_volume6(p0, p1, p2, p3)


def build_face_incidence(mesh: SubdivisionMesh) -> FaceIncidence:
    """Map each canonical (sorted) face key to its (tet index, local face) incidences."""
    incidence: FaceIncidence = {}
    for t, tet in enumerate(mesh.tets):
        for f, (a, b, c) in enumerate(_LOCAL_FACES):
            key = tuple(sorted((tet.nodes[a], tet.nodes[b], tet.nodes[c])))
            incidence.setdefault(key, []).append((t, f))
    return incidence


def boundary_faces(incidence: FaceIncidence) -> list[FaceKey]:
    """Faces with incidence exactly 1, in sorted key order."""
    return sorted(k for k, v in incidence.items() if len(v) == 1)


def classify_boundary_face(face: FaceKey, order: int) -> str:
    """Tag of the element plane containing all 3 face nodes, or ``"interior"``.

    Planes in lattice coordinates: x=0 (column j = 0), y=0 (row k = 0),
    z=0 (base level i = N) and the slanted face x+y+z = N (j+k = i).
    """
    pts = [node_coords(linear_to_node(n, order), order) for n in face]
    if all(p[0] == 0 for p in pts):
        return "x=0"
    if all(p[1] == 0 for p in pts):
        return "y=0"
    if all(p[2] == 0 for p in pts):
        return "z=0"
    if all(sum(p) == order for p in pts):
        return "x+y+z=N"
    return INTERIOR


def check_volumes(mesh: SubdivisionMesh) -> CheckResult:
    """Every |6V| = 1; totals N^3; all +1 under the positive policy."""
    vols = [signed_volume6(t, mesh.coords) for t in mesh.tets]
    expected = mesh.order**3
    bad = [(t, v) for t, v in enumerate(vols) if abs(v) != 1]
    total_abs = sum(abs(v) for v in vols)
    misoriented = (
        [t for t, v in enumerate(vols) if v != 1]
        if mesh.orientation_policy == POSITIVE
        else []
    )
    passed = not bad and not misoriented and total_abs == expected
    return CheckResult(
        "volumes",
        passed,
        f"{len(vols)} tets, sum |6V| = {total_abs} (expected {expected}), "
        f"{len(bad)} off-unit, {len(misoriented)} misoriented",
        {
            "tets": len(vols),
            "total_abs_volume6": total_abs,
            "expected_total": expected,
            "signed_total_volume6": sum(vols),
            "off_unit_tets": bad[:16],
            "misoriented_tets": misoriented[:16],
        },
    )


def check_face_pairing(
    mesh: SubdivisionMesh, incidence: FaceIncidence | None = None
) -> CheckResult:
    """Face incidence is 1 or 2; exactly 4N^2 boundary faces, all on element planes."""
    incidence = incidence if incidence is not None else build_face_incidence(mesh)
    overshared = sorted((k, len(v)) for k, v in incidence.items() if len(v) > 2)
    boundary = boundary_faces(incidence)
    stray = [f for f in boundary if classify_boundary_face(f, mesh.order) == INTERIOR]
    expected = 4 * mesh.order**2
    passed = not overshared and not stray and len(boundary) == expected
    return CheckResult(
        "face-pairing",
        passed,
        f"{len(incidence)} faces, {len(boundary)} boundary (expected {expected}), "
        f"{len(overshared)} overshared, {len(stray)} unpaired interior",
        {
            "faces": len(incidence),
            "boundary_faces": len(boundary),
            "expected_boundary_faces": expected,
            "overshared_faces": overshared[:16],
            "unpaired_interior_faces": sorted(stray),
        },
    )


_PLANE_PROJECTIONS = {
    "x=0": lambda p: (p[1], p[2]),
    "y=0": lambda p: (p[0], p[2]),
    "z=0": lambda p: (p[0], p[1]),
    "x+y+z=N": lambda p: (p[0], p[1]),
}


def _unit_triangle_kind(tri: list[tuple[int, int]]) -> str | None:
    # tri is lexicographically sorted; returns "up", "down", or None
    a, b = tri[0]
    if tri == [(a, b), (a, b + 1), (a + 1, b)]:
        return "up"
    if tri == [(a, b), (a + 1, b - 1), (a + 1, b)]:
        return "down"
    return None


def check_boundary_congruence(
    mesh: SubdivisionMesh, incidence: FaceIncidence | None = None
) -> CheckResult:
    """The exterior triangulation equals the natural unit triangulation.

    Projects each boundary face onto its element plane's 2D lattice; every
    face must be a unit upward or downward triangle, each plane must carry
    exactly N^2 of them, and the boundary vertices on each plane must be
    exactly that plane's lattice nodes.
    """
    incidence = incidence if incidence is not None else build_face_incidence(mesh)
    n = mesh.order
    per_plane: dict[str, dict[str, int]] = {
        p: {"triangles": 0, "up": 0, "down": 0} for p in BOUNDARY_PLANES
    }
    plane_vertices: dict[str, set[tuple[int, int]]] = {p: set() for p in BOUNDARY_PLANES}
    violations: list[dict[str, Any]] = []
    for face in boundary_faces(incidence):
        plane = classify_boundary_face(face, n)
        if plane == INTERIOR:
            violations.append({"face": face, "problem": "boundary face on no element plane"})
            continue
        project = _PLANE_PROJECTIONS[plane]
        tri = sorted(
            project(node_coords(linear_to_node(v, n), n)) for v in face
        )
        kind = _unit_triangle_kind(tri)
        if kind is None:
            violations.append({"face": face, "plane": plane, "problem": "not a unit lattice triangle"})
            continue
        per_plane[plane]["triangles"] += 1
        per_plane[plane][kind] += 1
        plane_vertices[plane].update(tri)
    expected_vertices = {
        (a, b) for a in range(n + 1) for b in range(n + 1 - a)
    }
    count_ok = all(per_plane[p]["triangles"] == n * n for p in BOUNDARY_PLANES)
    vertices_ok = all(plane_vertices[p] == expected_vertices for p in BOUNDARY_PLANES)
    passed = not violations and count_ok and vertices_ok
    return CheckResult(
        "boundary-congruence",
        passed,
        f"per-plane triangles {[per_plane[p]['triangles'] for p in BOUNDARY_PLANES]} "
        f"(expected {n * n} each), {len(violations)} violations",
        {
            "per_plane": per_plane,
            "expected_per_plane": n * n,
            "vertex_cover_ok": vertices_ok,
            "violations": violations[:16],
        },
    )


def check_counts(mesh: SubdivisionMesh) -> CheckResult:
    """Canonical lattice, N^3 tets, per-level deltas 3i^2-3i+1, per-kind totals."""
    n = mesh.order
    lattice_ok = (
        len(mesh.nodes) == node_count(n)
        and list(mesh.nodes) == enumerate_nodes(n)
        and list(mesh.coords) == [node_coords(v, n) for v in mesh.nodes]
    )
    level_counts: dict[int, int] = {i: 0 for i in range(1, n + 1)}
    kind_counts = {"upright": 0, "fill": 0, "chunk": 0}
    tags_ok = True
    for t in mesh.tets:
        if t.level in level_counts:
            level_counts[t.level] += 1
        else:
            tags_ok = False
        if t.kind in kind_counts:
            kind_counts[t.kind] += 1
        else:
            tags_ok = False
    expected_levels = {i: 3 * i * i - 3 * i + 1 for i in range(1, n + 1)}
    expected_kinds = {
        "upright": sum(i * (i + 1) // 2 for i in range(1, n + 1)),
        "fill": sum(2 * i * (i - 1) for i in range(1, n + 1)),
        "chunk": sum((i - 1) * (i - 2) // 2 for i in range(1, n + 1)),
    }
    passed = (
        lattice_ok
        and tags_ok
        and len(mesh.tets) == n**3
        and level_counts == expected_levels
        and kind_counts == expected_kinds
    )
    return CheckResult(
        "counts",
        passed,
        f"{len(mesh.nodes)} nodes, {len(mesh.tets)} tets (expected {n ** 3}), "
        f"kinds {kind_counts}",
        {
            "nodes": len(mesh.nodes),
            "expected_nodes": node_count(n),
            "canonical_lattice": lattice_ok,
            "tets": len(mesh.tets),
            "expected_tets": n**3,
            "level_counts": level_counts,
            "expected_level_counts": expected_levels,
            "kind_counts": kind_counts,
            "expected_kind_counts": expected_kinds,
        },
    )


def check_euler_characteristic(
    mesh: SubdivisionMesh, incidence: FaceIncidence | None = None
) -> CheckResult:
    """The boundary complex is a closed surface: V - E + F = 2."""
    incidence = incidence if incidence is not None else build_face_incidence(mesh)
    faces = boundary_faces(incidence)
    vertices: set[int] = set()
    edges: set[tuple[int, int]] = set()
    for f in faces:
        vertices.update(f)
        edges.update(combinations(f, 2))  # face keys are sorted, so pairs are canonical
    chi = len(vertices) - len(edges) + len(faces)
    return CheckResult(
        "euler-characteristic",
        chi == 2,
        f"boundary V={len(vertices)} E={len(edges)} F={len(faces)}, chi={chi}",
        {
            "vertices": len(vertices),
            "edges": len(edges),
            "faces": len(faces),
            "chi": chi,
        },
    )


def _strict_side_counts(
    pts: tuple[Coords, Coords, Coords, Coords], p: Coords
) -> bool | None:
    """True if p is strictly inside the tet, False if outside, None if on its boundary."""
    a, b, c, d = pts
    d0 = tet_volume6(p, b, c, d)
    d1 = tet_volume6(a, p, c, d)
    d2 = tet_volume6(a, b, p, d)
    d3 = tet_volume6(a, b, c, p)
    sign = 0
    for v in (d0, d1, d2, d3):
        if v == 0:
            return None
        s = 1 if v > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
    return True


def _bucket_tets(
    mesh: SubdivisionMesh, scale: int
) -> dict[tuple[int, int, int], list[tuple[int, tuple[Coords, ...]]]]:
    # Tets are registered in every unit cell their bounding box touches, so
    # the lookup stays exhaustive even for corrupted meshes that break the
    # one-cell locality of honest output.
    buckets: dict[tuple[int, int, int], list[tuple[int, tuple[Coords, ...]]]] = {}
    for t, tet in enumerate(mesh.tets):
        pts = tuple(mesh.coords[v] for v in tet.nodes)
        scaled = tuple((x * scale, y * scale, z * scale) for x, y, z in pts)
        los = [min(p[ax] for p in pts) for ax in range(3)]
        his = [max(p[ax] for p in pts) for ax in range(3)]
        for cx in range(los[0], max(his[0], los[0] + 1)):
            for cy in range(los[1], max(his[1], los[1] + 1)):
                for cz in range(los[2], max(his[2], los[2] + 1)):
                    buckets.setdefault((cx, cy, cz), []).append((t, scaled))
    return buckets


def check_containment_sampling(
    mesh: SubdivisionMesh, samples: int = 10_000, seed: int = 0
) -> CheckResult:
    """Seeded random interior points each lie strictly inside exactly one sub-tet.

    Points are rationals u/D with a fixed prime denominator D, drawn
    uniformly in the open element and redrawn whenever they touch a
    lattice plane or any candidate tet's boundary, so every containment
    test is exact and unambiguous.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    n = mesh.order
    d = _SAMPLE_DENOMINATOR
    nd = n * d
    buckets = _bucket_tets(mesh, d)
    rng = random.Random(seed)
    gaps: list[str] = []
    overlaps: list[str] = []
    redraws = 0
    for _ in range(samples):
        for _attempt in range(10_000):
            u, v, w = (rng.randrange(1, nd) for _ in range(3))
            if u + v + w >= nd:
                continue
            if any(t % d == 0 for t in (u, v, w, u + v, u + w, v + w, u + v + w)):
                redraws += 1
                continue
            point = (u, v, w)
            hits = 0
            on_boundary = False
            for _t, scaled in buckets.get((u // d, v // d, w // d), ()):
                side = _strict_side_counts(scaled, point)
                if side is None:
                    on_boundary = True
                    break
                if side:
                    hits += 1
            if on_boundary:
                redraws += 1
                continue
            break
        else:  # pragma: no cover - 10k consecutive redraws is unreachable
            raise RuntimeError("containment sampling failed to draw a usable point")
        label = f"({u}/{d}, {v}/{d}, {w}/{d})"
        if hits == 0:
            gaps.append(label)
        elif hits > 1:
            overlaps.append(label)
    passed = not gaps and not overlaps
    return CheckResult(
        "containment-sampling",
        passed,
        f"{samples} points (seed {seed}): {len(gaps)} gaps, {len(overlaps)} overlaps",
        {
            "samples": samples,
            "seed": seed,
            "denominator": d,
            "gaps": len(gaps),
            "overlaps": len(overlaps),
            "redraws": redraws,
            "gap_points": gaps[:8],
            "overlap_points": overlaps[:8],
        },
    )


def _cross(a: Coords, b: Coords) -> Coords:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _sub(a: Coords, b: Coords) -> Coords:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _interiors_intersect(
    a_pts: tuple[Coords, ...], b_pts: tuple[Coords, ...]
) -> bool:
    """Exact separating-plane test: do two nondegenerate tets share interior volume?

    Candidate separating directions are the face normals of both tets and
    the cross products of all edge pairs; projections touching only at an
    endpoint still count as disjoint interiors.
    """
    axes: list[Coords] = []
    for pts in (a_pts, b_pts):
        for f in _LOCAL_FACES:
            p, q, r = pts[f[0]], pts[f[1]], pts[f[2]]
            axes.append(_cross(_sub(q, p), _sub(r, p)))
    a_edges = [_sub(a_pts[j], a_pts[i]) for i, j in _TET_EDGES]
    b_edges = [_sub(b_pts[j], b_pts[i]) for i, j in _TET_EDGES]
    axes.extend(_cross(ea, eb) for ea in a_edges for eb in b_edges)
    for axis in axes:
        if axis == (0, 0, 0):
            continue
        proj_a = [axis[0] * p[0] + axis[1] * p[1] + axis[2] * p[2] for p in a_pts]
        proj_b = [axis[0] * p[0] + axis[1] * p[1] + axis[2] * p[2] for p in b_pts]
        if max(proj_a) <= min(proj_b) or max(proj_b) <= min(proj_a):
            return False
    return True


def check_pairwise_disjoint(mesh: SubdivisionMesh) -> CheckResult:
    """Exhaustive exact test that no two sub-tets overlap in the interior.

    Degenerate (zero-volume) tets have no interior and are skipped here;
    the volume check reports them.
    """
    pts = [tuple(mesh.coords[v] for v in t.nodes) for t in mesh.tets]
    live = [t for t in range(len(pts)) if tet_volume6(*pts[t]) != 0]
    intersecting = [
        (a, b) for a, b in combinations(live, 2) if _interiors_intersect(pts[a], pts[b])
    ]
    pairs = len(live) * (len(live) - 1) // 2
    return CheckResult(
        "pairwise-disjoint",
        not intersecting,
        f"{pairs} tet pairs tested, {len(intersecting)} intersecting",
        {
            "pairs": pairs,
            "degenerate_skipped": len(pts) - len(live),
            "intersecting_pairs": intersecting[:16],
        },
    )


def validate(
    mesh: SubdivisionMesh,
    samples: int = 10_000,
    seed: int = 0,
    pairwise_limit: int = 3,
) -> ValidationReport:
    """Run every check against ``mesh`` and collect the report.

    ``pairwise_limit`` caps the order for the O(N^6)-pair exhaustive
    interior-intersection test; above it that check is recorded as
    skipped (and passing).
    """
    incidence = build_face_incidence(mesh)
    checks = [
        check_volumes(mesh),
        check_face_pairing(mesh, incidence),
        check_boundary_congruence(mesh, incidence),
        check_counts(mesh),
        check_euler_characteristic(mesh, incidence),
        check_containment_sampling(mesh, samples=samples, seed=seed),
    ]
    if mesh.order <= pairwise_limit:
        checks.append(check_pairwise_disjoint(mesh))
    else:
        checks.append(
            CheckResult(
                "pairwise-disjoint",
                True,
                f"skipped: order {mesh.order} above pairwise limit {pairwise_limit}",
                {"skipped": True, "pairwise_limit": pairwise_limit},
            )
        )
    return ValidationReport(mesh.order, tuple(checks))
