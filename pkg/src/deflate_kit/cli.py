"""Command line front end: ``deflate-kit <command> ...``.

Exit codes: 0 success, 1 negative verdict or failed precondition, 2 malformed
input document, 64 usage error, 66 unreadable or unwritable file.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .deflatability import certify, dump_certificate
from .dual import direct_dual, dump_dual, find_illegal_path, maximal_outer_paths, parse_dual
from .errors import DeflateKitError, MalformedDocument, NotGeneralPosition, PolygonError
from .exact_geom import Point, ScalarFormatError, parse_scalar
from .fixtures import resolve_path
from .polygon import Polygon, dump_polygon, parse_polygon, reflex_vertices, signed_area2
from .realize_deform import (
    Mode,
    check_monotonic,
    deform_same_dual,
    dump_trajectory,
    parse_trajectory,
    realize,
)
from .smallpoly import dump_report, hexlab_report
from .svg import RenderOptions, render_dual, render_polygon, render_trajectory, render_trajectory_frame
from .triangulation import enumerate_triangulations
from .visibility import is_general_position, visibility_graph

EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_USAGE = 64
EXIT_IO = 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_json(path: str) -> dict:
    text = resolve_path(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"{path}: invalid JSON: {exc}") from exc


def _polygon(path: str) -> Polygon:
    return parse_polygon(_read_json(path))


def _write(path: str | Path, text: str) -> None:
    p = Path(path)
    if p.parent and not p.parent.exists():
        p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text)


def _flag(value) -> str:
    return "true" if value else "false"


# --- commands --------------------------------------------------------------


def cmd_check(args) -> int:
    doc = _read_json(args.file)
    raw = doc.get("vertices") if isinstance(doc, dict) else None
    if not isinstance(raw, list):
        raise MalformedDocument("expected an object with a 'vertices' list")
    try:
        pts = [Point(parse_scalar(x), parse_scalar(y)) for x, y in raw]
    except (ScalarFormatError, ValueError, TypeError) as exc:
        raise MalformedDocument(f"bad vertex list: {exc}") from exc
    try:
        P = Polygon(pts)
    except PolygonError as exc:
        print("simple: false")
        print(f"reason: {type(exc).__name__}: {exc}")
        return EXIT_NEGATIVE
    print("simple: true")
    print("orientation: " + ("ccw" if signed_area2(pts) > 0 else "cw"))
    print("general_position: " + _flag(is_general_position(P)))
    print("reflex: " + json.dumps(sorted(reflex_vertices(P))))
    return 0


def cmd_vis(args) -> int:
    P = _polygon(args.file)
    g = visibility_graph(P)
    for u, v in sorted(g.vv):
        print(f"vv {u} {v}")
    for u, e in sorted(g.ve):
        print(f"ve {u} {e}")
    if args.svg:
        _write(args.svg, render_polygon(P, RenderOptions(show_vv=True)))
    return 0


def cmd_tris(args) -> int:
    P = _polygon(args.file)
    tris = enumerate_triangulations(P)
    if args.limit is not None:
        tris = tris[: args.limit]
    for k, T in enumerate(tris):
        diags = T.sorted_diagonals()
        print(json.dumps({"diagonals": [list(d) for d in diags]}))
        if args.svg_dir:
            _write(Path(args.svg_dir) / f"tri-{k}.svg", render_polygon(P, RenderOptions(diagonals=tuple(diags))))
    return 0


def cmd_dual(args) -> int:
    P = _polygon(args.file)
    tris = enumerate_triangulations(P)
    if not 0 <= args.tri < len(tris):
        raise UsageError(f"--tri must lie in [0, {len(tris)})")
    print(dump_dual(direct_dual(P, tris[args.tri])))
    return 0


def cmd_outer(args) -> int:
    D = parse_dual(_read_json(args.file))
    for path in maximal_outer_paths(D):
        print(" ".join(str(x) for x in path))
    return 0


def cmd_illegal(args) -> int:
    D = parse_dual(_read_json(args.file))
    bad = find_illegal_path(D)
    if bad is None:
        print("none")
        return 0
    print(" ".join(str(x) for x in bad))
    return EXIT_NEGATIVE


def cmd_realize(args) -> int:
    D = parse_dual(_read_json(args.file))
    print(dump_polygon(realize(D)))
    return 0


def cmd_certify(args) -> int:
    cert = certify(_polygon(args.file))
    text = dump_certificate(cert)
    if args.json:
        _write(args.json, text + "\n")
        print(f"kind: {cert.kind}")
        print(f"candidates: {cert.candidate_count}")
    else:
        print(text)
    return 0


def cmd_deform(args) -> int:
    traj = deform_same_dual(_polygon(args.a), _polygon(args.b))
    text = dump_trajectory(traj)
    if args.out:
        _write(args.out, text + "\n")
        print(f"frames: {len(traj.frames)}")
    else:
        print(text)
    return 0


def cmd_verify_deform(args) -> int:
    traj = parse_trajectory(_read_json(args.file))
    report = check_monotonic(traj, Mode.VV_AND_VE if args.ve else Mode.VV)
    if args.svg_anim:
        width = len(str(len(traj.frames) - 1))
        for i in range(len(traj.frames)):
            _write(Path(args.svg_anim) / f"frame-{i:0{width}d}.svg", render_trajectory_frame(traj.frames, i))
    if report.ok:
        print("monotonic: true")
        return 0
    print("monotonic: false")
    for v in report.violations:
        print(f"vv {v}")
    for v in report.ve_violations:
        print(f"ve {v}")
    return EXIT_NEGATIVE


def cmd_hexlab(args) -> int:
    if args.n not in (3, 4, 5, 6):
        raise UsageError("--n must be 3, 4, 5 or 6")
    report = hexlab_report((args.n,))
    section = report["sizes"][0]
    print(f"n: {section['n']}")
    print(f"order_types: {section['order_types']}")
    print(f"polygons: {section['polygons']}")
    for reflex, group in section["by_reflex"].items():
        counts = ", ".join(f"{k}={v}" for k, v in group.items())
        print(f"reflex {reflex}: {counts}")
    if args.report:
        _write(args.report, dump_report(report) + "\n")
    if args.svg_dir:
        for i, entry in enumerate(section["entries"]):
            P = parse_polygon(entry["polygon"])
            name = f"poly-{i:03d}-r{entry['reflex']}-{entry['verdict']}.svg"
            _write(Path(args.svg_dir) / name, render_polygon(P, RenderOptions(show_vv=True)))
    return 0


def cmd_svg(args) -> int:
    doc = _read_json(args.file)
    if "vertices" in doc:
        text = render_polygon(parse_polygon(doc), RenderOptions(show_vv=args.show_vv))
    elif "nodes" in doc:
        text = render_dual(parse_dual(doc))
    elif "frames" in doc:
        text = render_trajectory(parse_trajectory(doc))
    else:
        raise MalformedDocument("not a polygon, dual or trajectory document")
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="deflate-kit", description="Visibility, directed duals and deflation of simple polygons.")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", help="simplicity, orientation, general position, reflex set")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("vis", help="vertex-vertex and vertex-edge visibilities")
    s.add_argument("file")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_vis)

    s = sub.add_parser("tris", help="enumerate triangulations")
    s.add_argument("file")
    s.add_argument("--limit", type=int)
    s.add_argument("--svg-dir")
    s.set_defaults(func=cmd_tris)

    s = sub.add_parser("dual", help="directed dual of one triangulation")
    s.add_argument("file")
    s.add_argument("--tri", type=int, default=0)
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("outer", help="maximal outer paths of a dual")
    s.add_argument("file")
    s.set_defaults(func=cmd_outer)

    s = sub.add_parser("illegal", help="first illegal path of a dual, or none")
    s.add_argument("file")
    s.set_defaults(func=cmd_illegal)

    s = sub.add_parser("realize", help="deflated polygon with the given directed dual")
    s.add_argument("file")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("certify", help="search for a compatible directed dual")
    s.add_argument("file")
    s.add_argument("--json")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("deform", help="monotonic deformation between two same-dual deflated polygons")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--out")
    s.set_defaults(func=cmd_deform)

    s = sub.add_parser("verify-deform", help="check a trajectory for monotonicity")
    s.add_argument("file")
    s.add_argument("--ve", action="store_true")
    s.add_argument("--svg-anim")
    s.set_defaults(func=cmd_verify_deform)

    s = sub.add_parser("hexlab", help="classify every simple polygon on small point sets")
    s.add_argument("--n", type=int, default=6)
    s.add_argument("--report")
    s.add_argument("--svg-dir")
    s.set_defaults(func=cmd_hexlab)

    s = sub.add_parser("svg", help="render a polygon, dual or trajectory")
    s.add_argument("file")
    s.add_argument("--show-vv", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_svg)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    random.seed(args.seed)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"deflate-kit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"deflate-kit: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NotGeneralPosition as exc:
        print(f"deflate-kit: NotGeneralPosition: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (MalformedDocument, PolygonError) as exc:
        print(f"deflate-kit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DeflateKitError as exc:
        print(f"deflate-kit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
