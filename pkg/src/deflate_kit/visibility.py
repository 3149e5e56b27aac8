"""Exact vertex-vertex and vertex-edge visibility, deflatedness, induced sequences."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any

from .errors import NotDeflated
from .exact_geom import (
    Point,
    det,
    line_intersection,
    midpoint,
    on_segment,
    open_segments_intersect,
    proper_crossing,
    segment_param,
)
from .polygon import Polygon, point_location


@dataclass(frozen=True)
class Verdict:
    """A boolean answer with an optional witness; truthy iff ``ok``."""

    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


def _cache(P: Polygon) -> dict:
    c = P.__dict__.get("_vis_cache")
    if c is None:
        c = P.__dict__["_vis_cache"] = {}
    return c


def segment_in_closed_polygon(P: Polygon, a: Point, b: Point) -> bool:
    """Is the closed segment ab contained in the closed polygon?"""
    pts = P.vertices
    n = len(pts)
    for i in range(n):
        if proper_crossing(a, b, pts[i], pts[(i + 1) % n]):
            return False
    if a == b:
        return point_location(P, a) >= 0
    params = {0, 1}
    for q in pts:
        if q != a and q != b and on_segment(q, a, b):
            params.add(segment_param(q, a, b))
    ts = sorted(params)
    for t0, t1 in zip(ts, ts[1:]):
        tm = (t0 + t1) / 2
        m = Point(a.x + (b.x - a.x) * tm, a.y + (b.y - a.y) * tm)
        if point_location(P, m) < 0:
            return False
    return True


def vertices_visible(P: Polygon, u: int, v: int) -> bool:
    if u == v:
        raise ValueError("a vertex is not compared with itself")
    if P.adjacent(u, v):
        return True
    return segment_in_closed_polygon(P, P[u], P[v])


def _vv_matrix(P: Polygon) -> list[list[bool]]:
    c = _cache(P)
    m = c.get("vv")
    if m is None:
        n = P.n
        m = [[False] * n for _ in range(n)]
        for u, v in combinations(range(n), 2):
            m[u][v] = m[v][u] = vertices_visible(P, u, v)
        c["vv"] = m
    return m


def is_diagonal(P: Polygon, u: int, v: int) -> bool:
    """Open segment uv lies in the open polygon (u, v non-adjacent)."""
    if u == v or P.adjacent(u, v):
        return False
    c = _cache(P)
    diag = c.get("diag")
    if diag is None:
        diag = c["diag"] = {}
    key = (min(u, v), max(u, v))
    if key in diag:
        return diag[key]
    a, b = P[u], P[v]
    ok = True
    for i, q in enumerate(P.vertices):
        if i != u and i != v and on_segment(q, a, b):
            ok = False
            break
    if ok:
        pts = P.vertices
        n = len(pts)
        for i in range(n):
            if proper_crossing(a, b, pts[i], pts[(i + 1) % n]):
                ok = False
                break
    if ok:
        ok = point_location(P, midpoint(a, b)) > 0
    diag[key] = ok
    return ok


def _edge_candidates(P: Polygon, u: int, e: int) -> list[Point]:
    """Finite witness candidates on the open edge e for visibility from u.

    The visible part of e changes only where a line through u and another
    vertex meets e, so those points plus one point between consecutive events
    decide the question exactly.
    """
    a, b = P.edge(e)
    pu = P[u]
    cands = [a, b]
    seen = {a, b}
    for w, pw in enumerate(P.vertices):
        if w == u:
            continue
        x = line_intersection(pu, pw, a, b)
        if x is None or x in seen:
            continue
        if on_segment(x, a, b):
            seen.add(x)
            cands.append(x)
    # a point between consecutive candidates, for visibility along open sub-intervals
    def key(p: Point):
        return segment_param(p, a, b)

    cands.sort(key=key)
    extra = [midpoint(p, q) for p, q in zip(cands, cands[1:])]
    return cands[1:-1] + extra


def vertex_sees_edge(P: Polygon, u: int, e: int) -> Verdict:
    """Does vertex u see a point of the open edge e?  Witness is that point.

    Seeing only an endpoint of e does not count.  An edge incident to u is
    always seen, with witness u itself.
    """
    n = P.n
    e %= n
    if e == u or (e + 1) % n == u:
        return Verdict(True, P[u])
    pu = P[u]
    for cand in _edge_candidates(P, u, e):
        if segment_in_closed_polygon(P, pu, cand):
            return Verdict(True, cand)
    return Verdict(False, None)


@dataclass(frozen=True)
class VisibilityGraph:
    n: int
    vv: frozenset[tuple[int, int]]
    ve: frozenset[tuple[int, int]]

    def sees(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.vv

    def sees_edge(self, u: int, e: int) -> bool:
        return (u, e) in self.ve

    def diagonals(self) -> list[tuple[int, int]]:
        n = self.n
        return sorted(p for p in self.vv if (p[1] - p[0]) % n not in (1, n - 1))


def visibility_graph(P: Polygon) -> VisibilityGraph:
    c = _cache(P)
    g = c.get("graph")
    if g is None:
        n = P.n
        m = _vv_matrix(P)
        vv = frozenset((u, v) for u, v in combinations(range(n), 2) if m[u][v])
        ve = frozenset((u, e) for u in range(n) for e in range(n) if vertex_sees_edge(P, u, e))
        g = c["graph"] = VisibilityGraph(n, vv, ve)
    return g


def vv_pairs(P: Polygon) -> frozenset[tuple[int, int]]:
    m = _vv_matrix(P)
    n = P.n
    return frozenset((u, v) for u, v in combinations(range(n), 2) if m[u][v])


@dataclass(frozen=True)
class Grazing:
    u: int
    v: int
    point: Point


def is_general_position(P: Polygon) -> Verdict:
    """Every visible non-adjacent pair is joined through the open polygon.

    On failure the witness is a :class:`Grazing` naming the pair and the
    boundary point the open segment touches.
    """
    n = P.n
    m = _vv_matrix(P)
    for u, v in combinations(range(n), 2):
        if P.adjacent(u, v) or not m[u][v]:
            continue
        a, b = P[u], P[v]
        for w, q in enumerate(P.vertices):
            if w != u and w != v and on_segment(q, a, b):
                return Verdict(False, Grazing(u, v, q))
    return Verdict(True, None)


def crossing_pairs(P: Polygon) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """All pairs of visibility segments whose open segments intersect."""
    segs = sorted(vv_pairs(P))
    pts = P.vertices
    out = []
    for i, (a, b) in enumerate(segs):
        for c, d in segs[i + 1:]:
            if open_segments_intersect(pts[a], pts[b], pts[c], pts[d]):
                out.append(((a, b), (c, d)))
    return out


def is_deflated(P: Polygon) -> Verdict:
    c = _cache(P)
    res = c.get("deflated")
    if res is None:
        segs = sorted(vv_pairs(P))
        pts = P.vertices
        res = Verdict(True, None)
        for i, (a, b) in enumerate(segs):
            for cc, d in segs[i + 1:]:
                if open_segments_intersect(pts[a], pts[b], pts[cc], pts[d]):
                    res = Verdict(False, ((a, b), (cc, d)))
                    break
            if not res.ok:
                break
        c["deflated"] = res
    return res


@dataclass(frozen=True)
class InducedSequence:
    source: int
    entry: tuple[int, int]
    chain: tuple[tuple[int, int], ...]
    terminal: int


def _edge_key(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


def induced_sequence(P: Polygon, T, u: int, e: tuple[int, int]) -> InducedSequence:
    """Edges of ``T`` crossed by ``u``'s sight line through ``e``, nearest first.

    ``e`` is an edge (vertex pair) of a triangle of ``T`` opposite ``u``.  The
    last chain element is the polygon edge seen, also reported as ``terminal``.
    """
    if not is_deflated(P):
        raise NotDeflated("induced sequences are defined for deflated polygons")
    n = P.n
    e = _edge_key(*e)
    if not any(u in tri and e[0] in tri and e[1] in tri and u not in e for tri in T.triangles):
        raise ValueError(f"{e} is not opposite vertex {u} in a triangle of T")
    if P.adjacent(*e):
        k = e[0] if (e[0] + 1) % n == e[1] else e[1]
        return InducedSequence(u, e, (e,), k)
    pu = P[u]
    through = midpoint(P[e[0]], P[e[1]])
    # first boundary hit of the ray u -> through beyond the window
    best = None
    best_edge = None
    direction = through - pu
    far = Point(pu.x + direction.x * 2, pu.y + direction.y * 2)
    for k in range(n):
        a, b = P.edge(k)
        if u in (k, (k + 1) % n):
            continue
        x = line_intersection(pu, far, a, b)
        if x is None or not on_segment(x, a, b):
            continue
        t = segment_param(x, pu, through)
        if t <= 1:
            continue
        if best is None or t < best:
            best, best_edge = t, k
    if best_edge is None:
        raise AssertionError("sight line leaves the polygon without hitting an edge")
    hit = Point(pu.x + direction.x * best, pu.y + direction.y * best)
    crossed = []
    for i, j in T.edges():
        if u in (i, j):
            continue
        if P.adjacent(i, j):
            continue
        a, b = P[i], P[j]
        if proper_crossing(pu, hit, a, b):
            x = line_intersection(pu, hit, a, b)
            crossed.append((segment_param(x, pu, hit), (i, j)))
    crossed.sort()
    kk = best_edge
    chain = tuple(ed for _, ed in crossed) + (_edge_key(kk, (kk + 1) % n),)
    return InducedSequence(u, e, chain, kk)


def sees_through(P: Polygon, u: int, e: tuple[int, int]) -> list[int]:
    """Polygon edges that u sees via a segment crossing the open segment e.

    Brute force over the finite candidate set; used by tests of the uniqueness
    property in deflated polygons.
    """
    a, b = P[e[0]], P[e[1]]
    pu = P[u]
    out = []
    for k in range(P.n):
        for cand in _edge_candidates(P, u, k):
            if cand == pu:
                continue
            if not (proper_crossing(pu, cand, a, b) or (on_segment(cand, a, b) and cand not in (a, b))):
                continue
            if segment_in_closed_polygon(P, pu, cand):
                out.append(k)
                break
    return out
