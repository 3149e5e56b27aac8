"""Enumeration of polygon triangulations, ears and ear removal."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import SingleTriangle
from .exact_geom import Turn, orient
from .polygon import Polygon, check_no_collinear_triples
from .visibility import is_diagonal


def _key(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Triangulation:
    polygon: Polygon
    diagonals: frozenset[tuple[int, int]]
    triangles: tuple[tuple[int, int, int], ...]
    # original vertex index of each vertex, when this triangulates a sub-polygon
    origin: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return self.polygon.n

    def is_polygon_edge(self, i: int, j: int) -> bool:
        return self.polygon.adjacent(i, j)

    def edges(self) -> list[tuple[int, int]]:
        n = self.n
        return sorted(set(self.diagonals) | {_key(k, (k + 1) % n) for k in range(n)})

    def triangle_edges(self, t: int) -> list[tuple[int, int]]:
        """The edges of triangle t in counter-clockwise order."""
        a, b, c = self.triangles[t]
        return [(a, b), (b, c), (c, a)]

    def triangles_of_edge(self, i: int, j: int) -> list[int]:
        return [t for t, tri in enumerate(self.triangles) if i in tri and j in tri]

    def triangles_at(self, v: int) -> list[int]:
        return [t for t, tri in enumerate(self.triangles) if v in tri]

    def opposite(self, t: int, v: int) -> tuple[int, int]:
        """Edge of triangle t opposite vertex v."""
        tri = self.triangles[t]
        rest = [w for w in tri if w != v]
        if len(rest) != 2:
            raise ValueError(f"vertex {v} is not in triangle {t}")
        return _key(*rest)

    def sorted_diagonals(self) -> list[tuple[int, int]]:
        return sorted(self.diagonals)


def _ccw(P: Polygon, a: int, b: int, c: int) -> tuple[int, int, int]:
    t = orient(P[a], P[b], P[c])
    if t is Turn.LEFT:
        tri = (a, b, c)
    else:
        tri = (a, c, b)
    # rotate so the smallest index leads, keeping orientation
    k = tri.index(min(tri))
    return tri[k:] + tri[:k]


def triangles_from_diagonals(P: Polygon, diagonals) -> tuple[tuple[int, int, int], ...]:
    n = P.n
    adj = {v: set() for v in range(n)}
    for k in range(n):
        adj[k].add((k + 1) % n)
        adj[(k + 1) % n].add(k)
    for i, j in diagonals:
        adj[i].add(j)
        adj[j].add(i)
    tris = set()
    for i in range(n):
        for j in adj[i]:
            if j <= i:
                continue
            for k in adj[i] & adj[j]:
                if k <= j:
                    continue
                tris.add(_ccw(P, i, j, k))
    # in a triangulation every 3-cycle of the edge graph bounds a triangle
    return tuple(sorted(tris))


def make_triangulation(P: Polygon, diagonals, origin=None) -> Triangulation:
    diags = frozenset(_key(*d) for d in diagonals)
    tris = triangles_from_diagonals(P, diags)
    if len(diags) != P.n - 3 or len(tris) != P.n - 2:
        raise ValueError("diagonal set is not a triangulation")
    return Triangulation(P, diags, tris, origin)


def enumerate_triangulations(P: Polygon) -> list[Triangulation]:
    """Every triangulation of ``P``, ordered by sorted diagonal list."""
    check_no_collinear_triples(P)
    n = P.n

    def ok(i: int, j: int) -> bool:
        return P.adjacent(i, j) or is_diagonal(P, i, j)

    @lru_cache(maxsize=None)
    def solve(i: int, j: int) -> tuple[frozenset, ...]:
        # triangulations of the chain i, i+1, ..., j closed by the chord (i, j)
        if j - i < 2:
            return (frozenset(),)
        out = []
        for m in range(i + 1, j):
            if not (ok(i, m) and ok(m, j)):
                continue
            if orient(P[i], P[m], P[j]) is not Turn.LEFT:
                continue
            here = set()
            if m - i >= 2:
                here.add((i, m))
            if j - m >= 2:
                here.add(_key(m, j))
            for left in solve(i, m):
                for right in solve(m, j):
                    out.append(frozenset(here) | left | right)
        return tuple(out)

    sets = set(solve(0, n - 1))
    result = [make_triangulation(P, d) for d in sets]
    result.sort(key=lambda T: T.sorted_diagonals())
    return result


def count_triangulations(P: Polygon) -> int:
    return len(enumerate_triangulations(P))


@dataclass(frozen=True)
class Ear:
    triangle: int
    helix: int
    diagonal: tuple[int, int]


def find_ears(T: Triangulation) -> list[Ear]:
    if len(T.triangles) < 2:
        raise SingleTriangle("a single triangle has no distinguished ear")
    out = []
    for t, tri in enumerate(T.triangles):
        diags = [_key(a, b) for a, b in T.triangle_edges(t) if _key(a, b) in T.diagonals]
        if len(diags) == 1:
            d = diags[0]
            helix = next(v for v in tri if v not in d)
            out.append(Ear(t, helix, d))
    return out


def remove_ear(T: Triangulation, ear: Ear) -> Triangulation:
    """Triangulation of the polygon left after cutting off ``ear``.

    Vertex indices are renumbered; ``origin`` maps each new index back to the
    index in ``T.polygon`` (composed with ``T.origin`` when present).
    """
    if len(T.triangles) < 2:
        raise SingleTriangle("cannot remove the only triangle")
    n = T.n
    h = ear.helix
    keep = [v for v in range(n) if v != h]
    new_index = {v: i for i, v in enumerate(keep)}
    sub = Polygon([T.polygon[v] for v in keep])
    diags = [(new_index[a], new_index[b]) for a, b in T.diagonals if (a, b) != ear.diagonal]
    base = T.origin if T.origin is not None else tuple(range(n))
    origin = tuple(base[v] for v in keep)
    return make_triangulation(sub, diags, origin)
