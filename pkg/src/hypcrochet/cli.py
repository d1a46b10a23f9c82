"""``hypcrochet`` command line.

Exit codes: 0 success, 2 bad usage, 3 input outside the model's domain,
4 resource budget exceeded.  Output is built in memory first, so a failing
command never leaves a partial file behind.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import crochet, cylinder, embed, export, growth, mesh, tiling
from .errors import BudgetError, DegenerateEdgeError, DomainError
from .hypmath import Geodesic3, IdealEndpoint

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_BUDGET = 4


def _endpoint(text: str) -> IdealEndpoint:
    try:
        polar, azimuth = (float(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected POLAR,AZIMUTH in radians, got {text!r}")
    return IdealEndpoint.from_angles(polar, azimuth)


def cmd_tile(args) -> dict[str, str]:
    opts = export.RenderOptions(
        model=export.Model(args.model),
        width_px=args.width,
        stroke_width=args.stroke_width,
        show_disk_boundary=not args.no_boundary,
        depth_coloring=args.depth_coloring,
    )
    patch = tiling.expand_tiling(args.k, args.layers, budget=args.budget)
    return {args.out: export.svg_tiling(patch, opts)}


def cmd_mesh(args) -> dict[str, str]:
    if args.annulus is not None:
        neck_count, rows = args.annulus
        m = mesh.build_annulus(args.k, neck_count, rows, budget=args.budget)
    else:
        m = mesh.build_disk(args.k, args.layers, budget=args.budget)
    m.validate()
    stats = export.mesh_stats(m)
    if args.annulus is None:
        stats["layer_face_counts"] = mesh.layer_face_counts(m)
        stats["boundary_stats"] = mesh.boundary_stats(m)
    return {args.out: export.json_text(stats)}


def cmd_growth(args) -> dict[str, str]:
    return {args.out: export.growth_csv(growth.growth_table(args.r_max, args.steps))}


def _embed_params(args, target: float) -> embed.EmbedParams:
    return embed.EmbedParams(
        max_iterations=args.max_iterations,
        step_size=args.step_size,
        tolerance=args.tolerance,
        seed=args.seed,
        target_length=target,
        planar=getattr(args, "planar", False),
    )


def _report_json(report: embed.EmbedReport, converged: bool) -> str:
    return export.json_text(
        {
            "iterations_used": report.iterations_used,
            "final_energy": report.final_energy,
            "max_relative_distortion": report.max_relative_distortion,
            "bounding_radius": report.bounding_radius,
            "converged": converged,
        }
    )


def cmd_embed(args) -> dict[str, str]:
    m = mesh.build_disk(args.k, args.layers, budget=args.budget)
    params = _embed_params(args, 1.0)
    state, report = embed.relax(m, params)
    converged = report.max_relative_distortion < params.tolerance
    files = {args.out: export.obj_text(state.positions, m.faces)}
    if args.report:
        files[args.report] = _report_json(report, converged)
    return files


def cmd_cylinder(args) -> dict[str, str]:
    if args.mode == "mesh":
        m = cylinder.build_cylinder_mesh(args.rows, args.neck_count)
        params = _embed_params(args, tiling.edge_length(8))
        state, report = embed.relax(m, params)
        files = {args.out: export.obj_text(state.positions, m.faces)}
        if args.report:
            files[args.report] = _report_json(report, report.max_relative_distortion < params.tolerance)
        return files
    surf = cylinder.CylinderSurface(Geodesic3(args.e1, args.e2))
    if args.mode == "neck":
        n = cylinder.neck(surf)
        rows = [
            ("neck_height", n.height),
            ("hyperbolic_radius", n.hyperbolic_radius),
            ("circumference", n.circumference),
            ("parameter", n.parameter),
            ("axis_height", n.axis_height),
        ]
        text = "quantity,value\n" + "".join(f"{name},{export.fmt(v)}\n" for name, v in rows)
        return {args.out: text}
    if args.mode == "profile":
        return {args.out: export.csv_text(("t", "distance_to_axis"), cylinder.distance_profile(surf, args.samples))}
    pts, faces = cylinder.sample_surface(surf, args.n_t, args.n_theta)
    return {args.out: export.obj_text(pts, faces)}


def cmd_crochet(args) -> dict[str, str]:
    if args.literal:
        if args.k != 7:
            raise DomainError("the literal scheme exists only for k = 7")
        p = crochet.pattern_k7(args.rows)
    else:
        p = crochet.compile_pattern(args.k, args.rows)
    files = {args.out: crochet.render_text(p)}
    if args.json:
        files[args.json] = export.pattern_json(p)
    return files


def _global_flags(parser, default) -> None:
    parser.add_argument("--out", default=default, help="output file, '-' for stdout (default)")
    parser.add_argument("--seed", type=int, default=default, help="seed for the embedding jitter (default 0)")
    parser.add_argument("--budget", type=int, default=default, help="maximum triangle count")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypcrochet", description="Hyperbolic triangle tilings, meshes and crochet patterns.")
    _global_flags(parser, argparse.SUPPRESS)
    parser.set_defaults(out="-", seed=0, budget=tiling.DEFAULT_TRIANGLE_BUDGET)
    # the same flags are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add("tile", help="SVG drawing of a {3,k} tiling patch")
    p.add_argument("--k", type=int, default=7)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--model", choices=[m.value for m in export.Model], default="klein")
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--stroke-width", type=float, default=0.002)
    p.add_argument("--no-boundary", action="store_true", help="omit the unit circle")
    p.add_argument("--depth-coloring", action="store_true", help="fill triangles by layer")
    p.set_defaults(func=cmd_tile)

    p = add("mesh", help="combinatorial mesh statistics as JSON")
    p.add_argument("--k", type=int, default=7)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--annulus", type=int, nargs=2, metavar=("NECK", "ROWS"), help="annulus instead of a disk")
    p.set_defaults(func=cmd_mesh)

    p = add("growth", help="circumference table as CSV")
    p.add_argument("--r-max", type=float, default=5.0)
    p.add_argument("--steps", type=int, default=51)
    p.set_defaults(func=cmd_growth)

    def relax_flags(p):
        p.add_argument("--max-iterations", type=int, default=50_000)
        p.add_argument("--step-size", type=float, default=0.1)
        p.add_argument("--tolerance", type=float, default=0.02)
        p.add_argument("--report", help="also write a JSON run report here")

    p = add("embed", help="relax a disk into 3-space with unit edges, write OBJ")
    p.add_argument("--k", type=int, default=7)
    p.add_argument("--layers", type=int, default=1)
    p.add_argument("--planar", action="store_true", help="keep every vertex in the plane z = 0")
    relax_flags(p)
    p.set_defaults(func=cmd_embed)

    p = add("cylinder", help="hyperbolic cylinder: neck, profile, surface or mesh")
    p.add_argument("--mode", choices=["neck", "profile", "surface", "mesh"], default="neck")
    p.add_argument("--e1", type=_endpoint, default=_endpoint("1.0,0.0"), help="generator endpoint POLAR,AZIMUTH")
    p.add_argument("--e2", type=_endpoint, default=_endpoint(f"{math.pi - 1.0},2.0"))
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--n-t", type=int, default=32)
    p.add_argument("--n-theta", type=int, default=48)
    p.add_argument("--rows", type=int, default=2, help="mesh rows on each side of the neck")
    p.add_argument("--neck-count", type=int, default=8)
    relax_flags(p)
    p.set_defaults(func=cmd_cylinder)

    p = add("crochet", help="row-by-row crochet instructions")
    p.add_argument("--k", type=int, default=7)
    p.add_argument("--rows", type=int, default=2)
    p.add_argument("--literal", action="store_true", help="use the hand-written seven-triangle scheme")
    p.add_argument("--json", help="also write the structured document here")
    p.set_defaults(func=cmd_crochet)
    return parser


def _write(files: dict[str, str]) -> None:
    for path, text in files.items():
        if path == "-":
            sys.stdout.write(text)
        else:
            Path(path).write_text(text, encoding="utf-8", newline="\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        files = args.func(args)
    except DomainError as exc:
        print(f"hypcrochet: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DegenerateEdgeError as exc:
        print(f"hypcrochet: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except BudgetError as exc:
        print(f"hypcrochet: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"hypcrochet: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write(files)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
