"""Simple polygons with exact rational vertices.

A :class:`Polygon` always stores its ring counter-clockwise.  Vertex ``i`` is
``vertices[i]`` and edge ``i`` joins vertex ``i`` to vertex ``i + 1 (mod n)``.
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CollinearTriple, DuplicateVertex, MalformedDocument, NotSimple, TooFewVertices
from .exact_geom import (
    Point,
    ScalarFormatError,
    Turn,
    det,
    on_segment,
    orient,
    parse_scalar,
    point,
    segments_intersect,
)


def signed_area2(pts: Sequence[Point]):
    """Twice the signed area of the ring."""
    n = len(pts)
    total = 0
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        total += p.x * q.y - q.x * p.y
    return total


def find_self_intersection(pts: Sequence[Point]) -> tuple[int, int] | None:
    """First pair of edges violating simplicity, or None for a simple ring."""
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        for j in range(i + 1, n):
            c, d = pts[j], pts[(j + 1) % n]
            if j == i + 1:
                # consecutive edges share pts[j]; they may only meet there
                if n == 3:
                    continue
                if on_segment(d, a, b) or on_segment(a, c, d):
                    return (i, j)
                continue
            if i == 0 and j == n - 1:
                if on_segment(c, a, b) or on_segment(b, c, d):
                    return (i, j)
                continue
            if segments_intersect((a, b), (c, d)):
                return (i, j)
    return None


class Polygon:
    """Simple polygon, ring stored counter-clockwise (clockwise input is reversed)."""

    def __init__(self, vertices: Iterable[Point], *, normalize: bool = True):
        pts = tuple(vertices)
        if len(pts) < 3:
            raise TooFewVertices(f"a polygon needs at least 3 vertices, got {len(pts)}")
        if len(set(pts)) != len(pts):
            seen = set()
            for p in pts:
                if p in seen:
                    raise DuplicateVertex(f"vertex {p} repeated")
                seen.add(p)
        bad = find_self_intersection(pts)
        if bad is not None:
            raise NotSimple(*bad)
        area = signed_area2(pts)
        if area == 0:
            raise NotSimple(0, 0)
        if area < 0:
            if not normalize:
                raise ValueError("ring is clockwise")
            pts = tuple(reversed(pts))
        self.vertices: tuple[Point, ...] = pts

    @classmethod
    def from_coords(cls, coords: Iterable) -> "Polygon":
        return cls(point(x, y) for x, y in coords)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i: int) -> Point:
        return self.vertices[i % len(self.vertices)]

    def edge(self, k: int) -> tuple[Point, Point]:
        n = self.n
        return self.vertices[k % n], self.vertices[(k + 1) % n]

    def edge_vertices(self, k: int) -> tuple[int, int]:
        return k % self.n, (k + 1) % self.n

    def adjacent(self, i: int, j: int) -> bool:
        n = self.n
        return (i - j) % n in (1, n - 1)

    def signed_area2(self):
        return signed_area2(self.vertices)

    @cached_property
    def canonical(self) -> tuple[Point, ...]:
        k = min(range(self.n), key=lambda i: self.vertices[i])
        return self.vertices[k:] + self.vertices[:k]

    def __eq__(self, other) -> bool:
        return isinstance(other, Polygon) and self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(self.canonical)

    def rotated(self, k: int) -> "Polygon":
        """Same polygon with vertex ``k`` renumbered as vertex 0."""
        k %= self.n
        return Polygon(self.vertices[k:] + self.vertices[:k])

    def __repr__(self) -> str:
        return f"Polygon({list(self.vertices)!r})"


def parse_polygon(document: str | dict) -> Polygon:
    """Parse the polygon JSON document ``{"vertices": [["x", "y"], ...]}``."""
    if isinstance(document, str):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"invalid JSON: {exc}") from exc
    else:
        data = document
    if not isinstance(data, dict) or "vertices" not in data:
        raise MalformedDocument("expected an object with a 'vertices' list")
    raw = data["vertices"]
    if not isinstance(raw, list):
        raise MalformedDocument("'vertices' must be a list")
    pts = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(c, str) for c in item)):
            raise MalformedDocument(f"vertex {item!r} is not a pair of scalar strings")
        try:
            pts.append(Point(parse_scalar(item[0]), parse_scalar(item[1])))
        except ScalarFormatError as exc:
            raise MalformedDocument(str(exc)) from exc
    return Polygon(pts)


def polygon_to_json(P: Polygon) -> dict:
    return {"vertices": [p.as_text() for p in P.vertices]}


def dump_polygon(P: Polygon) -> str:
    return json.dumps(polygon_to_json(P))


def check_no_collinear_triples(P: Polygon) -> None:
    n = P.n
    for i in range(n):
        if det(P[i - 1], P[i], P[i + 1]) == 0:
            raise CollinearTriple(i)


def reflex_vertices(P: Polygon) -> frozenset[int]:
    n = P.n
    out = set()
    for i in range(n):
        t = orient(P[i - 1], P[i], P[i + 1])
        if t is Turn.COLLINEAR:
            raise CollinearTriple(i)
        if t is Turn.RIGHT:
            out.add(i)
    return frozenset(out)


def is_convex_position(P: Polygon) -> bool:
    return not reflex_vertices(P)


def point_in_closed_polygon(P: Polygon, q: Point) -> bool:
    return point_location(P, q) >= 0


def point_location(P: Polygon, q: Point) -> int:
    """1 strictly inside, 0 on the boundary, -1 outside."""
    pts = P.vertices
    n = len(pts)
    inside = False
    for i in range(n):
        a = pts[i]
        b = pts[(i + 1) % n]
        if on_segment(q, a, b):
            return 0
        # half-open crossing rule on the horizontal ray to +x
        if (a.y > q.y) != (b.y > q.y):
            d = det(a, b, q)
            if (d > 0) == (b.y > a.y):
                inside = not inside
    return 1 if inside else -1
