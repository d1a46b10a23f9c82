"""Combinatorial triangulated disks and annuli.

Meshes are indexed face sets.  Disks are grown ring by ring: every vertex
of the current outer ring receives exactly enough new triangles on its
outer side to reach ``k`` triangles in total, which closes its link.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import BudgetError, DomainError
from .tiling import DEFAULT_TRIANGLE_BUDGET


@dataclass(frozen=True)
class VertexRecord:
    id: int
    layer: int
    boundary: bool
    # +1 / -1 for the two halves of a cylinder mesh, 0 elsewhere
    side: int = 0


@dataclass(frozen=True)
class TriMesh:
    vertices: tuple[VertexRecord, ...]
    faces: tuple[tuple[int, int, int], ...]
    k: int | None = None

    @cached_property
    def edge_faces(self) -> dict[tuple[int, int], list[int]]:
        out: dict[tuple[int, int], list[int]] = {}
        for i, (a, b, c) in enumerate(self.faces):
            for u, v in ((a, b), (b, c), (c, a)):
                out.setdefault((min(u, v), max(u, v)), []).append(i)
        return out

    @cached_property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.edge_faces)

    @cached_property
    def degrees(self) -> list[int]:
        """Number of faces incident to each vertex."""
        deg = [0] * len(self.vertices)
        for f in self.faces:
            for v in f:
                deg[v] += 1
        return deg

    @property
    def boundary_edges(self) -> list[tuple[int, int]]:
        return [e for e in self.edges if len(self.edge_faces[e]) == 1]

    @property
    def interior_vertices(self) -> list[int]:
        return [v.id for v in self.vertices if not v.boundary]

    def layer_members(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v in self.vertices:
            out.setdefault(v.layer, []).append(v.id)
        return out

    def validate(self) -> None:
        """Raise ``ValueError`` unless the mesh is an oriented manifold surface."""
        for e, fs in self.edge_faces.items():
            if len(fs) > 2:
                raise ValueError(f"edge {e} is shared by {len(fs)} faces")
        directed = Counter()
        for a, b, c in self.faces:
            for u, v in ((a, b), (b, c), (c, a)):
                directed[(u, v)] += 1
        if any(n > 1 for n in directed.values()):
            raise ValueError("inconsistent face orientation")
        if self.faces and not _faces_connected(self):
            raise ValueError("face adjacency graph is disconnected")


def _faces_connected(mesh: TriMesh) -> bool:
    seen = {0}
    todo = deque([0])
    while todo:
        i = todo.popleft()
        a, b, c = mesh.faces[i]
        for u, v in ((a, b), (b, c), (c, a)):
            for j in mesh.edge_faces[(min(u, v), max(u, v))]:
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
    return len(seen) == len(mesh.faces)


def orient_faces(faces: list[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
    """Flip faces so that every shared edge is traversed once in each direction.

    The first face of each connected component keeps its orientation.
    """
    faces = [tuple(f) for f in faces]
    edge_faces: dict[tuple[int, int], list[int]] = {}
    for i, (a, b, c) in enumerate(faces):
        for u, v in ((a, b), (b, c), (c, a)):
            edge_faces.setdefault((min(u, v), max(u, v)), []).append(i)
    done = [False] * len(faces)
    for start in range(len(faces)):
        if done[start]:
            continue
        done[start] = True
        todo = deque([start])
        while todo:
            i = todo.popleft()
            a, b, c = faces[i]
            for u, v in ((a, b), (b, c), (c, a)):
                for j in edge_faces[(min(u, v), max(u, v))]:
                    if done[j]:
                        continue
                    # neighbour must run v -> u
                    x, y, z = faces[j]
                    if (u, v) in ((x, y), (y, z), (z, x)):
                        faces[j] = (x, z, y)
                    done[j] = True
                    todo.append(j)
    return faces


class _RingBuilder:
    """Grow rings of a triangulation in which every completed vertex has ``k`` faces."""

    def __init__(self, k: int, budget: int):
        self.k = k
        self.budget = budget
        self.faces: list[tuple[int, int, int]] = []
        self.n_vertices = 0

    def new_vertex(self) -> int:
        self.n_vertices += 1
        return self.n_vertices - 1

    def add_face(self, face) -> None:
        if len(self.faces) >= self.budget:
            raise BudgetError(f"mesh needs more than {self.budget} triangles")
        self.faces.append(face)

    def grow(self, ring: list[int], filled: dict[int, int]) -> tuple[list[int], dict[int, int]]:
        """Close the links of ``ring`` (cyclic) on its outer side.

        ``filled[v]`` is the number of faces ``v`` already has.  Returns the
        next ring in cyclic order together with its face counts.
        """
        n = len(ring)
        sizes = [self.k - filled[v] for v in ring]
        for v, m in zip(ring, sizes):
            if m < 3:
                raise DomainError(f"vertex {v} has {filled[v]} faces; cannot close its link to {self.k}")
        # ids follow the cyclic order of the new ring, starting at the last apex
        last_apex = self.new_vertex()
        new_ring = [last_apex]
        new_filled = {last_apex: 3}
        prev = last_apex
        for j, (v, m) in enumerate(zip(ring, sizes)):
            middle = [self.new_vertex() for _ in range(m - 3)]
            apex = last_apex if j == n - 1 else self.new_vertex()
            spokes = [prev, *middle, apex]
            for p, q in zip(spokes, spokes[1:]):
                self.add_face((v, p, q))
            self.add_face((v, ring[(j + 1) % n], apex))
            for w in middle:
                new_filled[w] = 2
            new_filled[apex] = 3
            new_ring.extend(middle)
            if apex != last_apex:
                new_ring.append(apex)
            prev = apex
        return new_ring, new_filled


def _finish(k, n_vertices, faces, layer_of, side_of=None) -> TriMesh:
    faces = orient_faces(faces)
    count = Counter()
    for a, b, c in faces:
        for u, v in ((a, b), (b, c), (c, a)):
            count[(min(u, v), max(u, v))] += 1
    on_boundary = {v for e, n in count.items() if n == 1 for v in e}
    if not faces:
        on_boundary = set(range(n_vertices))
    side_of = side_of or {}
    verts = tuple(
        VertexRecord(i, layer_of[i], i in on_boundary, side_of.get(i, 0)) for i in range(n_vertices)
    )
    return TriMesh(verts, tuple(faces), k)


def build_disk(k: int, layers: int, budget: int = DEFAULT_TRIANGLE_BUDGET) -> TriMesh:
    """Disk of the {3,k} tiling made of the central fan and ``layers`` bands around it.

    Vertex ``layer`` is the ring index, i.e. the edge distance to the center.
    Faces are counterclockwise when the rings run counterclockwise.
    """
    if k < 7:
        raise DomainError(f"k={k} does not give a hyperbolic disk (need k >= 7)")
    if layers < 0:
        raise DomainError(f"layers must be non-negative, got {layers}")
    b = _RingBuilder(k, budget)
    center = b.new_vertex()
    ring = [b.new_vertex() for _ in range(k)]
    layer_of = {center: 0}
    layer_of.update({v: 1 for v in ring})
    for j in range(k):
        b.add_face((center, ring[j], ring[(j + 1) % k]))
    filled = {v: 2 for v in ring}
    for depth in range(2, layers + 2):
        ring, filled = b.grow(ring, filled)
        layer_of.update({v: depth for v in ring})
    return _finish(k, b.n_vertices, b.faces, layer_of)


def build_annulus(k: int, neck_count: int, rows_per_side: int, budget: int = DEFAULT_TRIANGLE_BUDGET) -> TriMesh:
    """Annulus grown symmetrically on both sides of a central ring.

    Each central vertex gets ``k // 2`` faces on each side (``k`` must be
    even).  Vertex ``layer`` is the edge distance to the central ring and
    ``side`` tells the two halves apart.
    """
    if neck_count < 3:
        raise DomainError(f"neck ring needs at least 3 vertices, got {neck_count}")
    if rows_per_side < 0:
        raise DomainError(f"rows_per_side must be non-negative, got {rows_per_side}")
    if k % 2:
        raise DomainError("symmetric annulus needs an even vertex degree")
    b = _RingBuilder(k, budget)
    neck = [b.new_vertex() for _ in range(neck_count)]
    layer_of = {v: 0 for v in neck}
    side_of = {v: 0 for v in neck}
    for side in (1, -1):
        # the other half will contribute the remaining k/2 faces
        ring, filled = (neck if side == 1 else neck[::-1]), {v: k // 2 for v in neck}
        for depth in range(1, rows_per_side + 1):
            ring, filled = b.grow(ring, filled)
            layer_of.update({v: depth for v in ring})
            side_of.update({v: side for v in ring})
    return _finish(k, b.n_vertices, b.faces, layer_of, side_of)


def euler_characteristic(mesh: TriMesh) -> int:
    return len(mesh.vertices) - len(mesh.edges) + len(mesh.faces)


def angle_defect_over_pi(mesh: TriMesh, v: int) -> Fraction:
    """Angle defect at ``v`` as an exact multiple of pi.

    Every face is read as a unit Euclidean equilateral triangle, so each
    corner contributes ``pi/3``.
    """
    if not 0 <= v < len(mesh.vertices):
        raise KeyError(f"unknown vertex {v}")
    full = 1 if mesh.vertices[v].boundary else 2
    return Fraction(full) - Fraction(mesh.degrees[v], 3)


def angle_defect(mesh: TriMesh, v: int) -> float:
    return float(angle_defect_over_pi(mesh, v)) * math.pi


@dataclass
class CurvatureReport:
    defects: list[float]
    defects_over_pi: list[Fraction] = field(repr=False)
    total_over_pi: Fraction
    interior_value: float | None

    @property
    def total(self) -> float:
        return float(self.total_over_pi) * math.pi


def curvature_report(mesh: TriMesh) -> CurvatureReport:
    exact = [angle_defect_over_pi(mesh, v.id) for v in mesh.vertices]
    interior = {exact[v] for v in mesh.interior_vertices}
    interior_value = float(interior.pop()) * math.pi if len(interior) == 1 else None
    return CurvatureReport([float(d) * math.pi for d in exact], exact, sum(exact, Fraction(0)), interior_value)


def truncate(mesh: TriMesh, layer: int) -> TriMesh:
    """Sub-mesh made of faces that touch a vertex of layer ``<= layer``.

    For disks this is ``build_disk(k, layer)`` with the same vertex ids.
    """
    faces = [f for f in mesh.faces if min(mesh.vertices[v].layer for v in f) <= layer]
    used = sorted({v for f in faces for v in f})
    remap = {v: i for i, v in enumerate(used)}
    count = Counter()
    for a, b, c in faces:
        for u, v in ((a, b), (b, c), (c, a)):
            count[(min(u, v), max(u, v))] += 1
    on_boundary = {remap[v] for e, n in count.items() if n == 1 for v in e}
    verts = tuple(
        VertexRecord(remap[v], mesh.vertices[v].layer, remap[v] in on_boundary, mesh.vertices[v].side) for v in used
    )
    return TriMesh(verts, tuple(tuple(remap[v] for v in f) for f in faces), mesh.k)


def boundary_stats(mesh: TriMesh) -> list[int]:
    """Boundary edge count of the disk truncated after each layer ``0..max``."""
    top = max(v.layer for v in mesh.vertices) - 1
    return [len(truncate(mesh, layer).boundary_edges) for layer in range(max(top, 0) + 1)]


def face_layers(mesh: TriMesh) -> list[int]:
    return [min(mesh.vertices[v].layer for v in f) for f in mesh.faces]


def layer_face_counts(mesh: TriMesh) -> list[int]:
    counts = Counter(face_layers(mesh))
    return [counts[i] for i in range(max(counts) + 1)] if counts else []


def single_triangle() -> TriMesh:
    return TriMesh(tuple(VertexRecord(i, 0 if i == 0 else 1, True) for i in range(3)), ((0, 1, 2),))
