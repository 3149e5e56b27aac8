"""Deterministic SVG rendering of polygons, duals and trajectories.

Coordinates are converted to decimals with six places for display only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .dual import DualTree, terminal_order
from .exact_geom import Point, midpoint
from .polygon import Polygon
from .visibility import crossing_pairs, vv_pairs

SIZE = 400
MARGIN = 20


@dataclass(frozen=True)
class RenderOptions:
    show_vv: bool = False
    diagonals: tuple[tuple[int, int], ...] = ()
    labels: bool = True


def _fmt(v) -> str:
    return f"{float(v):.6f}"


class _Frame:
    """Affine map from polygon coordinates into the SVG box (y flipped)."""

    def __init__(self, pts: Sequence[Point]):
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys), mpq(1))
        self.k = mpq(SIZE - 2 * MARGIN) / span

    def __call__(self, p: Point) -> tuple[str, str]:
        return _fmt(MARGIN + (p.x - self.x0) * self.k), _fmt(MARGIN + (self.y1 - p.y) * self.k)


def _header() -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" '
        'orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="black"/></marker></defs>',
    ]


def _polygon_body(vertices: Sequence[Point], f: _Frame, opacity: str = "1") -> str:
    d = " ".join(("M" if i == 0 else "L") + "{},{}".format(*f(p)) for i, p in enumerate(vertices)) + " Z"
    return f'<path d="{d}" fill="none" stroke="black" stroke-width="1.5" stroke-opacity="{opacity}"/>'


def _segment(f: _Frame, a: Point, b: Point, style: str) -> str:
    (x1, y1), (x2, y2) = f(a), f(b)
    return f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {style}/>'


def render_polygon(P: Polygon, options: RenderOptions = RenderOptions()) -> str:
    f = _Frame(P.vertices)
    out = _header()
    if options.show_vv:
        crossing = {s for pair in crossing_pairs(P) for s in pair}
        for a, b in sorted(vv_pairs(P)):
            if P.adjacent(a, b):
                continue
            colour = "red" if (a, b) in crossing else "grey"
            out.append(_segment(f, P[a], P[b], f'stroke="{colour}" stroke-width="1"'))
    for a, b in options.diagonals:
        out.append(_segment(f, P[a], P[b], 'stroke="black" stroke-width="1" stroke-dasharray="4,3"'))
    out.append(_polygon_body(P.vertices, f))
    for i, p in enumerate(P.vertices):
        x, y = f(p)
        out.append(f'<circle cx="{x}" cy="{y}" r="2.5" fill="black"/>')
        if options.labels:
            out.append(f'<text x="{x}" y="{y}" dx="4" dy="-4" font-size="11">{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _dual_positions(D: DualTree) -> tuple[dict[int, Point], list[Point]]:
    """Node positions: triangle centroids and edge midpoints of a polygon.

    A bound dual uses its own polygon.  An abstract dual is laid out on a
    convex polygon whose vertex k is the fan of maximal outer
    path k, so every tree can be drawn, legal or not.
    """
    from .dual import maximal_outer_paths
    from .realize_deform import convex_polygon

    third = mpq(1, 3)
    pos: dict[int, Point] = {}
    if D.bound:
        T = D.triangulation
        P = T.polygon
        for x in range(D.size):
            if D.is_triangle(x):
                a, b, c = (P[v] for v in T.triangles[D.triangle_of_node(x)])
                pos[x] = Point((a.x + b.x + c.x) * third, (a.y + b.y + c.y) * third)
            else:
                pos[x] = midpoint(*P.edge(D.edge_of_node(x)))
        return pos, list(P.vertices)
    paths = maximal_outer_paths(D)
    P = convex_polygon(len(paths))
    for k, x in enumerate(terminal_order(D)):
        pos[x] = midpoint(*P.edge(k))
    for x in D.triangle_nodes():
        a, b, c = (P[k] for k, path in enumerate(paths) if x in path)
        pos[x] = Point((a.x + b.x + c.x) * third, (a.y + b.y + c.y) * third)
    return pos, list(P.vertices)


def render_dual(D: DualTree, with_polygon: bool = True) -> str:
    pos, outline = _dual_positions(D)
    f = _Frame(list(pos.values()) + outline)
    out = _header()
    if D.bound and with_polygon:
        T = D.triangulation
        out.append(_polygon_body(T.polygon.vertices, f, "0.4"))
        for a, b in T.sorted_diagonals():
            out.append(_segment(f, T.polygon[a], T.polygon[b], 'stroke="grey" stroke-dasharray="4,3"'))
    for e, (a, b) in enumerate(D.edges):
        d = D.directions[e]
        src, dst = (b, a) if d == "ba" else (a, b)
        marker = ' marker-end="url(#arrow)"' if d is not None else ""
        out.append(_segment(f, pos[src], pos[dst], f'stroke="black" stroke-width="1"{marker}'))
    labels = {x: k for k, x in enumerate(terminal_order(D))}
    for x in range(D.size):
        cx, cy = f(pos[x])
        if D.is_triangle(x):
            out.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="black"/>')
        else:
            # a tee: short bar across the terminal edge
            (nb,) = D.neighbours(x)
            v = pos[x] - pos[nb]
            n = max(abs(v.x), abs(v.y)) or mpq(1)
            w = Point(-v.y / n, v.x / n).scaled(mpq(5) / f.k)
            out.append(_segment(f, pos[x] - w, pos[x] + w, 'stroke="black" stroke-width="2"'))
            out.append(f'<text x="{cx}" y="{cy}" dx="4" dy="-4" font-size="10">t{labels[x]}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_trajectory_frame(frames, index: int) -> str:
    allpts = [p for fr in frames for p in fr.vertices]
    f = _Frame(allpts)
    out = _header()
    out.append(_polygon_body(frames[index].vertices, f))
    out.append(f'<text x="{MARGIN}" y="{SIZE - 4}" font-size="11">t = {_fmt(frames[index].t)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_trajectory(traj) -> str:
    """All frames overlaid, later frames darker."""
    allpts = [p for fr in traj.frames for p in fr.vertices]
    f = _Frame(allpts)
    out = _header()
    m = len(traj.frames)
    for i, fr in enumerate(traj.frames):
        out.append(_polygon_body(fr.vertices, f, _fmt(mpq(i + 1, m))))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(entity, options: RenderOptions = RenderOptions()) -> str:
    from .realize_deform import Trajectory

    if isinstance(entity, Polygon):
        return render_polygon(entity, options)
    if isinstance(entity, DualTree):
        return render_dual(entity)
    if isinstance(entity, Trajectory):
        return render_trajectory(entity)
    raise TypeError(f"cannot render {type(entity).__name__}")
