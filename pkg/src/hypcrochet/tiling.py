"""Equilateral {3,k} triangles and tiling patches in the Klein disk.

Patches are grown on the hyperboloid ``-x0^2 + x1^2 + x2^2 = -1`` by
copying the central fan around with isometries, then projected to the Klein disk
by ``(x1, x2) / x0``.  A triangle belongs to layer ``L`` when the closest of
its corners sits ``L`` edges away from the origin vertex, so layer 0 is the
fan of ``k`` triangles around the origin and every later layer is the band
of triangles between two consecutive vertex rings.
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetError, DomainError
from .hypmath import POINT_TOL, KleinPoint, klein_distance

DEFAULT_TRIANGLE_BUDGET = 10**6

# hyperboloid spatial hash cell size
_HASH_CELL = 1e-6

# refuse patches whose vertices crowd the boundary of the disk closer than this
_BOUNDARY_MARGIN = 1e-9


class GluingName(enum.Enum):
    TRIANGLE_PILLOW = "TrianglePillow"
    TETRAHEDRON = "Tetrahedron"
    OCTAHEDRON = "Octahedron"
    ICOSAHEDRON = "Icosahedron"
    EUCLIDEAN_PLANE = "EuclideanPlane"
    HYPERBOLIC_PLANE = "HyperbolicPlane"


_SMALL_GLUINGS = {
    2: GluingName.TRIANGLE_PILLOW,
    3: GluingName.TETRAHEDRON,
    4: GluingName.OCTAHEDRON,
    5: GluingName.ICOSAHEDRON,
    6: GluingName.EUCLIDEAN_PLANE,
}


@dataclass(frozen=True)
class GluingClass:
    k: int
    name: GluingName


def classify_gluing(k: int) -> GluingClass:
    """What you get by gluing equilateral triangles ``k`` to a vertex."""
    if k < 2:
        raise DomainError(f"need at least two triangles per vertex, got k={k}")
    return GluingClass(k, _SMALL_GLUINGS.get(k, GluingName.HYPERBOLIC_PLANE))


@dataclass(frozen=True)
class EquilateralSpec:
    k: int
    vertex_angle: float
    edge_length: float
    angle_sum: float


def _require_hyperbolic(k: int) -> None:
    if k < 7:
        raise DomainError(f"k={k} does not give a hyperbolic tiling (need k >= 7)")


def edge_length(k: int) -> float:
    """Side of the equilateral triangle with all three angles ``2*pi/k``.

    From the angle form of the hyperbolic law of cosines,
    ``cosh a = cos(alpha) / (1 - cos(alpha))``.  ``k = 6`` is the Euclidean
    limit and gives exactly 0.
    """
    if k < 6:
        raise DomainError(f"k={k} is spherical; edge lengths exist only for k >= 6")
    if k == 6:
        return 0.0
    c = math.cos(2.0 * math.pi / k)
    return math.acosh(c / (1.0 - c))


def angle_sum(k: int) -> float:
    _require_hyperbolic(k)
    return 6.0 * math.pi / k


def equilateral_spec(k: int) -> EquilateralSpec:
    _require_hyperbolic(k)
    return EquilateralSpec(k, 2.0 * math.pi / k, edge_length(k), angle_sum(k))


def angle_from_sides(a: float, b: float, c: float) -> float:
    """Angle opposite side ``a`` of a hyperbolic triangle with sides ``a, b, c``."""
    cos_a = (math.cosh(b) * math.cosh(c) - math.cosh(a)) / (math.sinh(b) * math.sinh(c))
    return math.acos(max(-1.0, min(1.0, cos_a)))


def base_triangle(k: int) -> tuple[KleinPoint, KleinPoint, KleinPoint]:
    """The equilateral triangle ``O, A, B`` with ``O`` at the origin and ``A`` on the x-axis.

    Of the four mirror-image solutions this returns the one with ``B`` in
    the first quadrant.  Rotating ``A`` about the origin is legitimate because
    the Klein model shows angles at the origin undistorted.
    """
    _require_hyperbolic(k)
    r = math.tanh(edge_length(k))
    alpha = 2.0 * math.pi / k
    return (
        KleinPoint(0.0, 0.0),
        KleinPoint(r, 0.0),
        KleinPoint(r * math.cos(alpha), r * math.sin(alpha)),
    )


# --- hyperboloid helpers -------------------------------------------------

_J = np.array([-1.0, 1.0, 1.0])


def _minkowski(u: np.ndarray, v: np.ndarray) -> float:
    return float(-u[0] * v[0] + u[1] * v[1] + u[2] * v[2])


def klein_to_hyperboloid(p: KleinPoint) -> np.ndarray:
    s = 1.0 / math.sqrt(1.0 - (p.x * p.x + p.y * p.y))
    return np.array([s, p.x * s, p.y * s])


def _renormalize(x: np.ndarray) -> np.ndarray:
    return x / math.sqrt(-_minkowski(x, x))


def _rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def reflect_across(x: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Reflect hyperboloid point ``x`` in the geodesic through ``u`` and ``v``."""
    n = _J * np.cross(u, v)
    return _renormalize(x - 2.0 * _minkowski(x, n) / _minkowski(n, n) * n)


class _VertexIndex:
    """Deduplicating store of hyperboloid points."""

    def __init__(self):
        self.points: list[np.ndarray] = []
        self._cells: dict[tuple[int, int, int], list[int]] = {}

    @staticmethod
    def _cell(x: np.ndarray) -> tuple[int, int, int]:
        return tuple(int(math.floor(c / _HASH_CELL)) for c in x)

    def find(self, x: np.ndarray) -> int | None:
        cx, cy, cz = self._cell(x)
        tol = POINT_TOL * max(1.0, float(x[0]))
        for key in itertools.product((cx - 1, cx, cx + 1), (cy - 1, cy, cy + 1), (cz - 1, cz, cz + 1)):
            for i in self._cells.get(key, ()):
                if float(np.max(np.abs(self.points[i] - x))) <= tol:
                    return i
        return None

    def add(self, x: np.ndarray) -> tuple[int, bool]:
        i = self.find(x)
        if i is not None:
            return i, False
        self.points.append(x)
        self._cells.setdefault(self._cell(x), []).append(len(self.points) - 1)
        return len(self.points) - 1, True


@dataclass
class TilingPatch:
    k: int
    layers: int
    vertices: list[KleinPoint]
    vertex_layers: list[int]
    triangles: list[tuple[int, int, int]]
    triangle_layers: list[int]
    hyperboloid: np.ndarray = field(repr=False)

    def edges(self) -> set[tuple[int, int]]:
        out = set()
        for a, b, c in self.triangles:
            for u, v in ((a, b), (b, c), (c, a)):
                out.add((min(u, v), max(u, v)))
        return out

    def vertex_degrees(self) -> list[int]:
        deg = [0] * len(self.vertices)
        for tri in self.triangles:
            for v in tri:
                deg[v] += 1
        return deg

    def interior_vertices(self) -> list[int]:
        """Vertices whose every incident edge is shared by two triangles."""
        count: dict[tuple[int, int], int] = {}
        for a, b, c in self.triangles:
            for u, v in ((a, b), (b, c), (c, a)):
                e = (min(u, v), max(u, v))
                count[e] = count.get(e, 0) + 1
        on_boundary = {v for e, n in count.items() if n == 1 for v in e}
        return [v for v in range(len(self.vertices)) if v not in on_boundary]


def _ccw(tri, pts) -> tuple[int, int, int]:
    a, b, c = tri
    (ax, ay), (bx, by), (cx, cy) = (pts[a][1:] / pts[a][0], pts[b][1:] / pts[b][0], pts[c][1:] / pts[c][0])
    if (bx - ax) * (cy - ay) - (by - ay) * (cx - ax) < 0:
        return (a, c, b)
    return (a, b, c)


def expand_tiling(
    k: int,
    layers: int,
    budget: int = DEFAULT_TRIANGLE_BUDGET,
    shuffle_seed: int | None = None,
) -> TilingPatch:
    """Grow the {3,k} tiling around the origin out to ``layers`` layers.

    The fan of every vertex in rings ``0..layers`` is completed by carrying
    the origin's fan over with an isometry of the hyperboloid.  Each new
    vertex gets its isometry from its parent's by a half-turn about the
    shared edge's midpoint, so errors grow with depth only additively.
    ``shuffle_seed`` permutes the order in which each ring is processed,
    which must not change the result up to relabelling.
    """
    _require_hyperbolic(k)
    if layers < 0:
        raise DomainError(f"layers must be non-negative, got {layers}")
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None

    a = edge_length(k)
    ca, sa = math.cosh(a), math.sinh(a)
    # half-turn swapping the origin and A = (tanh a, 0): rotate by pi, then boost along x
    half_turn = np.array([[ca, sa, 0.0], [sa, ca, 0.0], [0.0, 0.0, 1.0]]) @ _rotation(math.pi)
    fan = [_rotation(2.0 * math.pi * j / k) for j in range(k)]
    a_point = np.array([ca, sa, 0.0])

    store = _VertexIndex()
    store.add(np.array([1.0, 0.0, 0.0]))
    frames = [np.eye(3)]
    ring_of = [0]
    tri_keys: set[tuple[int, int, int]] = set()
    triangles: list[tuple[int, int, int]] = []
    max_x0 = 1.0 / math.sqrt(1.0 - (1.0 - _BOUNDARY_MARGIN) ** 2)

    ring = [0]
    for depth in range(layers + 1):
        order = list(ring)
        if rng is not None:
            rng.shuffle(order)
        for v in order:
            # each vertex carries an isometry moving the origin's fan onto its own
            link = []
            for rot in fan:
                frame = frames[v] @ rot
                x = frame @ a_point
                if x[0] > max_x0:
                    raise DomainError(
                        f"layer {layers} of the {{3,{k}}} tiling reaches too close to the disk boundary"
                    )
                w, new = store.add(x)
                if new:
                    frames.append(frame @ half_turn)
                    ring_of.append(depth + 1)
                link.append(w)
            for j in range(k):
                tri = (v, link[j], link[(j + 1) % k])
                key = tuple(sorted(tri))
                if key in tri_keys:
                    continue
                if len(triangles) >= budget:
                    raise BudgetError(f"tiling patch needs more than {budget} triangles")
                tri_keys.add(key)
                triangles.append(tri)
        ring = [v for v, d in enumerate(ring_of) if d == depth + 1]

    pts = store.points
    vertices = [KleinPoint(float(x[1] / x[0]), float(x[2] / x[0])) for x in pts]
    triangles = [_ccw(t, pts) for t in triangles]
    tri_layers = [min(ring_of[v] for v in t) for t in triangles]
    keep = [i for i, lay in enumerate(tri_layers) if lay <= layers]
    triangles = [triangles[i] for i in keep]
    tri_layers = [tri_layers[i] for i in keep]
    return TilingPatch(k, layers, vertices, ring_of, triangles, tri_layers, np.array(pts))


def triangle_side_lengths(patch: TilingPatch, tri) -> tuple[float, float, float]:
    a, b, c = (patch.vertices[i] for i in tri)
    return klein_distance(b, c), klein_distance(c, a), klein_distance(a, b)
