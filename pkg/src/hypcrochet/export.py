"""File emitters: SVG drawings of tilings, OBJ meshes, CSV tables, JSON documents.

Every number is written with ``repr``, the shortest decimal that reads back
to the same float, so files are byte-stable and re-parse exactly.
"""

from __future__ import annotations

import enum
import io
import json
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .crochet import Pattern, to_document
from .growth import CSV_HEADER, GrowthRow
from .hypmath import klein_to_poincare
from .mesh import TriMesh, curvature_report, euler_characteristic
from .tiling import TilingPatch

# layer index -> fill, cycling
PALETTE = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666")

# arcs flatter than this are drawn as straight segments
MAX_ARC_RADIUS = 1e4


def fmt(x: float) -> str:
    x = float(x)
    if x == 0.0:
        return "0.0"  # no "-0.0"
    return repr(x)


class Model(enum.Enum):
    KLEIN = "klein"
    POINCARE = "poincare"


@dataclass(frozen=True)
class RenderOptions:
    model: Model = Model.KLEIN
    width_px: int = 800
    stroke_width: float = 0.002
    show_disk_boundary: bool = True
    depth_coloring: bool = False

    def __post_init__(self):
        if self.width_px < 64:
            raise ValueError(f"width_px must be at least 64, got {self.width_px}")
        if not self.stroke_width > 0:
            raise ValueError("stroke_width must be positive")


def _arc_command(p: tuple[float, float], q: tuple[float, float]) -> str:
    """SVG path segment from ``p`` to ``q`` along the Poincare geodesic (SVG coordinates)."""
    px, py = p
    qx, qy = q
    cross = px * qy - py * qx
    n2 = px * px + py * py
    if abs(cross) < 1e-15 or n2 < 1e-30:
        return f"L {fmt(qx)} {fmt(qy)}"
    # the geodesic circle passes through p, q and the inverse point p / |p|^2
    ix, iy = px / n2, py / n2
    ax, ay = qx - px, qy - py
    bx, by = ix - px, iy - py
    det = 2.0 * (ax * by - ay * bx)
    if det == 0.0:
        return f"L {fmt(qx)} {fmt(qy)}"
    a2 = ax * ax + ay * ay
    b2 = bx * bx + by * by
    cx = px + (by * a2 - ay * b2) / det
    cy = py + (ax * b2 - bx * a2) / det
    r = math.hypot(px - cx, py - cy)
    if r > MAX_ARC_RADIUS:
        return f"L {fmt(qx)} {fmt(qy)}"
    turn = (px - cx) * (qy - cy) - (py - cy) * (qx - cx)
    sweep = 1 if turn > 0 else 0
    return f"A {fmt(r)} {fmt(r)} 0 0 {sweep} {fmt(qx)} {fmt(qy)}"


def svg_tiling(patch: TilingPatch, options: RenderOptions = RenderOptions()) -> str:
    """One ``polygon`` (Klein) or closed ``path`` (Poincare) per triangle.

    Model y points up; it is negated on output so the picture is not mirrored.
    """
    if options.model is Model.KLEIN:
        pts = [(p.x, -p.y) for p in patch.vertices]
    else:
        pts = [(x, -y) for x, y in (klein_to_poincare(p) for p in patch.vertices)]
    out = io.StringIO()
    w = options.width_px
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{w}" '
        'viewBox="-1.05 -1.05 2.1 2.1">\n'
    )
    sw = fmt(options.stroke_width)
    if options.show_disk_boundary:
        out.write(f'<circle cx="0" cy="0" r="1" fill="none" stroke="black" stroke-width="{sw}"/>\n')
    out.write(f'<g stroke="black" stroke-width="{sw}" stroke-linejoin="round">\n')
    for tri, layer in zip(patch.triangles, patch.triangle_layers):
        fill = PALETTE[layer % len(PALETTE)] if options.depth_coloring else "none"
        corners = [pts[v] for v in tri]
        if options.model is Model.KLEIN:
            coords = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in corners)
            out.write(f'<polygon points="{coords}" fill="{fill}" data-layer="{layer}"/>\n')
        else:
            x0, y0 = corners[0]
            segs = [f"M {fmt(x0)} {fmt(y0)}"]
            for a, b in zip(corners, corners[1:] + corners[:1]):
                segs.append(_arc_command(a, b))
            out.write(f'<path d="{" ".join(segs)} Z" fill="{fill}" data-layer="{layer}"/>\n')
    out.write("</g>\n</svg>\n")
    return out.getvalue()


def obj_text(positions: np.ndarray, faces: Iterable[Sequence[int]], comment: str = "") -> str:
    lines = [f"# {comment}"] if comment else []
    lines += [f"v {fmt(x)} {fmt(y)} {fmt(z)}" for x, y, z in np.asarray(positions, dtype=float)]
    lines += ["f " + " ".join(str(i + 1) for i in f) for f in faces]
    return "\n".join(lines) + "\n"


def read_obj(text: str) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """Parse ``v``/``f`` records; faces come back 0-based.  Raises ``ValueError`` on bad indices."""
    verts, faces = [], []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            verts.append(tuple(float(s) for s in parts[1:4]))
        elif parts[0] == "f":
            idx = tuple(int(s.split("/")[0]) for s in parts[1:])
            if any(not 1 <= i <= len(verts) for i in idx):
                raise ValueError(f"face index out of range in {line!r}")
            faces.append(tuple(i - 1 for i in idx))
    return np.array(verts, dtype=float).reshape(-1, 3), faces


def csv_text(header: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    lines = [",".join(header)]
    lines += [",".join(fmt(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def growth_csv(rows: Sequence[GrowthRow]) -> str:
    return csv_text(CSV_HEADER, ((g.r, g.c_euclidean, g.c_hyperbolic, g.ratio) for g in rows))


def mesh_stats(mesh: TriMesh) -> dict:
    rep = curvature_report(mesh)
    degrees = Counter(mesh.degrees[v] for v in mesh.interior_vertices)
    defects = Counter(str(d) for d in rep.defects_over_pi)
    return {
        "k": mesh.k,
        "V": len(mesh.vertices),
        "E": len(mesh.edges),
        "F": len(mesh.faces),
        "euler_characteristic": euler_characteristic(mesh),
        "boundary_edges": len(mesh.boundary_edges),
        "interior_degree_histogram": {str(d): n for d, n in sorted(degrees.items())},
        # defect (in units of pi) -> number of vertices
        "defects_over_pi": dict(sorted(defects.items())),
        "total_defect_over_pi": str(rep.total_over_pi),
    }


def json_text(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def pattern_json(p: Pattern) -> str:
    return json_text(to_document(p))
