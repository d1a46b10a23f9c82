"""End-to-end acceptance checks, one per criterion.

Run under pytest (a summary block lists PASS/FAIL per criterion) or directly
with ``python tests/test_acceptance.py``.
"""

import math
import os
import subprocess
import sys
import tempfile
import time
from collections import Counter
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from hypcrochet.crochet import DC, compile_pattern, pattern_k7, row_counts, stitch_counts
from hypcrochet.cylinder import CylinderSurface, build_cylinder_mesh, distance_to_axis, neck
from hypcrochet.embed import EmbeddingState, EmbedParams, energy, energy_gradient, relax
from hypcrochet.growth import circumference_euclidean, circumference_hyperbolic, circumference_ratio
from hypcrochet.hypmath import Geodesic3, IdealEndpoint
from hypcrochet.mesh import build_disk, curvature_report, euler_characteristic, layer_face_counts
from hypcrochet.tiling import angle_from_sides, base_triangle, edge_length, expand_tiling, triangle_side_lengths

RESULTS: dict[int, tuple[bool, str]] = {}


def _clauses(parts):
    """``parts`` is a list of (name, ok, detail); fold into one verdict line."""
    ok = all(p[1] for p in parts)
    text = "; ".join(f"{name}: {'ok' if good else 'FAILED'} ({detail})" for name, good, detail in parts)
    return ok, text


def criterion_1():
    e7, e8 = edge_length(7), edge_length(8)
    return _clauses(
        [
            ("k=7", abs(e7 - 1.0905) <= 5e-4, f"{e7:.6f}"),
            ("k=8", abs(e8 - 1.5285) <= 5e-4, f"{e8:.6f}"),
        ]
    )


def criterion_2():
    _, a, b = base_triangle(7)
    return _clauses(
        [
            ("A", max(abs(a.x - 0.797), abs(a.y)) <= 1e-3, f"({a.x:.4f}, {a.y:.4f})"),
            ("B", max(abs(b.x - 0.496), abs(b.y - 0.623)) <= 1e-3, f"({b.x:.4f}, {b.y:.4f})"),
        ]
    )


def _tiling_check(k, layers):
    patch = expand_tiling(k, layers)
    deg = patch.vertex_degrees()
    interior = patch.interior_vertices()
    s = edge_length(k)
    edge_err = ang_err = 0.0
    for tri in patch.triangles:
        a, b, c = triangle_side_lengths(patch, tri)
        edge_err = max(edge_err, abs(a - s), abs(b - s), abs(c - s))
        for ang in (angle_from_sides(a, b, c), angle_from_sides(b, c, a), angle_from_sides(c, a, b)):
            ang_err = max(ang_err, abs(ang - 2 * math.pi / k))
    degrees_ok = bool(interior) and {deg[v] for v in interior} == {k}
    ok = degrees_ok and edge_err <= 1e-8 and ang_err <= 1e-8
    return ok, f"{len(interior)} interior vertices of degree {k}: {degrees_ok}, edge err {edge_err:.1e}, angle err {ang_err:.1e}"


def criterion_3():
    t = time.perf_counter()
    ok7, d7 = _tiling_check(7, 3)
    ok8, d8 = _tiling_check(8, 2)
    dt = time.perf_counter() - t
    return _clauses([("(7,3)", ok7, d7), ("(8,2)", ok8, d8), ("time", dt < 10, f"{dt:.2f} s")])


def criterion_4():
    parts = []
    for L in range(5):
        m = build_disk(7, L)
        rep = curvature_report(m)
        chi = euler_characteristic(m)
        ok = chi == 1 and rep.total_over_pi == Fraction(2) and rep.interior_value == -math.pi / 3
        parts.append((f"L={L}", ok, f"chi={chi}, total={rep.total_over_pi}pi, interior={rep.interior_value}"))
    return _clauses(parts)


def criterion_5():
    grid = np.linspace(0.0, 5.0, 51)[1:]
    err = max(
        abs(circumference_hyperbolic(float(r)) / circumference_euclidean(float(r)) - math.sinh(r) / r) / (math.sinh(r) / r)
        for r in grid
    )
    end = abs(circumference_ratio(5.0) - math.sinh(5.0) / 5.0)
    return _clauses([("grid", err <= 1e-12, f"max rel err {err:.1e}"), ("r=5", end <= 1e-6, f"err {end:.1e}")])


def _fd_gradient(mesh, x, h=1e-6):
    g = np.zeros_like(x)
    for i in range(x.shape[0]):
        for c in range(3):
            xp, xm = x.copy(), x.copy()
            xp[i, c] += h
            xm[i, c] -= h
            g[i, c] = (energy(mesh, EmbeddingState(xp)) - energy(mesh, EmbeddingState(xm))) / (2 * h)
    return g


def criterion_6():
    mesh = build_disk(7, 1)
    worst = 0.0
    for seed in range(10):
        x = np.random.default_rng(seed).normal(scale=1.5, size=(len(mesh.vertices), 3))
        g = energy_gradient(mesh, EmbeddingState(x))
        fd = _fd_gradient(mesh, x)
        worst = max(worst, float(np.linalg.norm(g - fd) / np.linalg.norm(fd)))
    runs = [relax(build_disk(7, 2), EmbedParams(seed=0)), relax(mesh, EmbedParams(seed=1, planar=True))]
    monotone = all(np.all(np.diff(rep.energy_history) <= 0) for _, rep in runs)
    rep = runs[0][1]
    return _clauses(
        [
            ("gradient", worst < 1e-5, f"worst rel err {worst:.1e}"),
            ("monotone", monotone, f"{len(runs)} runs"),
            (
                "relax (7,2)",
                rep.max_relative_distortion < 0.02 and rep.iterations_used <= 50_000,
                f"distortion {rep.max_relative_distortion:.4f} after {rep.iterations_used} iterations",
            ),
        ]
    )


def criterion_7():
    mesh = build_disk(7, 1)
    _, flat = relax(mesh, EmbedParams(seed=0, planar=True))
    _, space = relax(mesh, EmbedParams(seed=0))
    return _clauses(
        [
            ("planar", flat.max_relative_distortion >= 0.05, f"stalls at {flat.max_relative_distortion:.4f}"),
            ("3D", space.max_relative_distortion < 0.02, f"reaches {space.max_relative_distortion:.4f}"),
        ]
    )


def _grid_min(f, n=10_000):
    """Two-stage grid search on (0, 1): a coarse pass then a pass of the same size around the best cell."""
    ts = np.linspace(0.0, 1.0, n + 2)[1:-1]
    vals = np.array([f(float(t)) for t in ts])
    i = int(np.argmin(vals))
    lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, n - 1)]
    fine = np.linspace(lo, hi, n)
    fvals = np.array([f(float(t)) for t in fine])
    return float(fvals.min())


def criterion_8():
    def surf(p1, a1, p2, a2):
        return CylinderSurface(Geodesic3(IdealEndpoint.from_angles(p1, a1), IdealEndpoint.from_angles(p2, a2)))

    sym = neck(surf(1.0, 0.0, math.pi - 1.0, 2.0))
    c = surf(0.7, 0.2, 2.1, 2.6)
    n = neck(c)
    grid = _grid_min(lambda t: distance_to_axis(c.generator, t))
    spread = max(
        abs(neck(surf(0.7, 0.2 + th, 2.1, 2.6 + th)).hyperbolic_radius - n.hyperbolic_radius)
        for th in (2 * math.pi * i / 16 for i in range(16))
    )
    return _clauses(
        [
            ("symmetric height", abs(sym.height) <= 1e-9, f"{sym.height:.1e}"),
            ("grid agreement", abs(n.hyperbolic_radius - grid) <= 1e-6, f"diff {abs(n.hyperbolic_radius - grid):.1e}"),
            ("rotations", spread <= 1e-12, f"spread {spread:.1e}"),
        ]
    )


def criterion_9():
    m = build_cylinder_mesh(2, 8)
    chi = euler_characteristic(m)
    degs = Counter(m.degrees[v] for v in m.interior_vertices)
    return _clauses([("euler", chi == 0, f"chi={chi}"), ("degrees", set(degs) == {8}, f"{dict(degs)}")])


def _enumerate_k7(rows):
    """Stitch totals and double-crochet counts by walking the written steps one at a time."""
    totals, dcs = [], []
    # Row 1: 3 rising chains, (3 chains + dc) then five more, 3 chains, half stitch
    row = ["ch"] * 3 + ["ch", "ch", "ch", "dc"] * (1 + 5) + ["ch"] * 3 + ["hs"]
    totals.append(len(row))
    dcs.append(row.count("dc"))
    for _ in range(1, rows):
        row = ["ch"] * 3
        for _anchor in range(dcs[-1]):
            row += ["ch", "ch", "ch", "dc"] * (1 + 3)
        row += ["ch"] * 3 + ["hs"]
        totals.append(len(row))
        dcs.append(row.count("dc"))
    return totals, dcs


def criterion_10():
    p = pattern_k7(4)
    numbers = [[s.number for s in r.steps] for r in p.rows]
    steps_ok = numbers[0] == [1, 2, 3, 4, 5] and numbers[1] == list(range(6, 12))
    repeats_ok = all(
        [(s.stitches, s.repeat) for s in r.steps][:3] == [(s.stitches, s.repeat) for s in p.rows[1].steps][:3]
        for r in p.rows[2:]
    )
    totals, dcs = _enumerate_k7(4)
    counts = stitch_counts(p)
    same = all(compile_pattern(7, r) == pattern_k7(r) for r in range(1, 5))
    row_dc = [row_counts(r)[DC] for r in p.rows]
    layers = layer_face_counts(build_disk(7, 4))[:4]
    return _clauses(
        [
            ("steps", steps_ok and repeats_ok, f"step numbers {numbers[0]} / {numbers[1]}"),
            ("row 1 total", counts.row_totals[0] == totals[0] == 31, f"{counts.row_totals[0]} vs enumeration {totals[0]}"),
            ("row 2 dc", row_dc[1] == dcs[1] == 24, f"{row_dc[1]} vs enumeration {dcs[1]}"),
            ("compiled = literal", same, "rows 1..4"),
            ("dc vs layer triangles", row_dc == layers, f"dc per row {row_dc}, triangles per layer {layers}"),
        ]
    )


CLI_RUNS = [
    ["tile", "--layers", "2", "--model", "klein"],
    ["tile", "--layers", "2", "--model", "poincare", "--depth-coloring"],
    ["mesh", "--layers", "3"],
    ["mesh", "--k", "8", "--annulus", "8", "2"],
    ["growth", "--r-max", "5", "--steps", "51"],
    ["embed", "--layers", "2", "--report", "{dir}/report.json"],
    ["cylinder", "--mode", "neck"],
    ["cylinder", "--mode", "profile"],
    ["cylinder", "--mode", "surface"],
    ["cylinder", "--mode", "mesh", "--report", "{dir}/report.json"],
    ["crochet", "--rows", "4", "--json", "{dir}/pattern.json"],
]


def _run_cli(argv, directory, hashseed):
    argv = [a.format(dir=directory) for a in argv]
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    cmd = [sys.executable, "-m", "hypcrochet", "--seed", "5", "--out", f"{directory}/out", *argv]
    res = subprocess.run(cmd, env=env, capture_output=True)
    files = {p.name: p.read_bytes() for p in sorted(Path(directory).iterdir())}
    return res.returncode, files


def criterion_11():
    t = time.perf_counter()
    parts = []
    for argv in CLI_RUNS:
        outs = []
        for hashseed in (1, 2):
            with tempfile.TemporaryDirectory() as d:
                outs.append(_run_cli(argv, d, hashseed))
        (c1, f1), (c2, f2) = outs
        parts.append((argv[0] + ("/" + argv[2] if argv[1] == "--mode" else ""), c1 == c2 == 0 and f1 == f2 and bool(f1), f"{len(f1)} file(s)"))
    dt = time.perf_counter() - t
    ok = all(p[1] for p in parts) and dt < 60
    bad = [p[0] for p in parts if not p[1]]
    return ok, f"{len(parts)} commands, byte-identical: {not bad}{' ' + str(bad) if bad else ''}, {dt:.1f} s"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 12)}


def _line(i, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {i}: {detail}"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, detail = CRITERIA[number]()
    RESULTS[number] = (ok, detail)
    print(_line(number, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for i, check in CRITERIA.items():
        ok, detail = check()
        failed += not ok
        print(_line(i, ok, detail))
    sys.exit(1 if failed else 0)
