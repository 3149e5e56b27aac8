"""Dual trees of triangulations and the directed dual.

A :class:`DualTree` is a plane tree: every node carries the counter-clockwise
cyclic order of its incident edge ids.  Non-terminal edges may carry a
direction.  Everything below that does not mention a triangulation works on the
rotation system alone, so abstract duals (with no source polygon) are first
class.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import (
    BadDegrees,
    DegenerateQuadrilateral,
    MalformedDocument,
    UndirectedEdgeOnPath,
    UndirectedNonTerminalEdge,
)
from .exact_geom import det
from .triangulation import Triangulation

TRIANGLE = "triangle"
TERMINAL = "terminal"

# edge direction markers: None (undirected), "ab" (a -> b), "ba" (b -> a)
AB = "ab"
BA = "ba"


@dataclass(frozen=True)
class DualTree:
    kinds: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    directions: tuple[str | None, ...]
    rotation: tuple[tuple[int, ...], ...]
    triangulation: Triangulation | None = field(default=None, compare=False, repr=False)

    # --- structure -------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.kinds)

    def is_triangle(self, x: int) -> bool:
        return self.kinds[x] == TRIANGLE

    def is_terminal(self, x: int) -> bool:
        return self.kinds[x] == TERMINAL

    def triangle_nodes(self) -> list[int]:
        return [x for x, k in enumerate(self.kinds) if k == TRIANGLE]

    def terminal_nodes(self) -> list[int]:
        return [x for x, k in enumerate(self.kinds) if k == TERMINAL]

    def other(self, edge: int, x: int) -> int:
        a, b = self.edges[edge]
        return b if x == a else a

    def neighbours(self, x: int) -> list[int]:
        """Neighbours of x in counter-clockwise order."""
        return [self.other(e, x) for e in self.rotation[x]]

    def edge_between(self, x: int, y: int) -> int:
        for e in self.rotation[x]:
            if self.other(e, x) == y:
                return e
        raise KeyError(f"nodes {x} and {y} are not adjacent")

    def is_terminal_edge(self, e: int) -> bool:
        a, b = self.edges[e]
        return self.is_terminal(a) or self.is_terminal(b)

    def non_terminal_edges(self) -> list[int]:
        return [e for e in range(len(self.edges)) if not self.is_terminal_edge(e)]

    def arrow(self, x: int, y: int) -> int:
        """+1 if the edge is directed x -> y, -1 if y -> x, 0 if undirected."""
        e = self.edge_between(x, y)
        d = self.directions[e]
        if d is None:
            return 0
        a, _ = self.edges[e]
        forward = (d == AB) == (a == x)
        return 1 if forward else -1

    def undirected_non_terminal(self) -> list[int]:
        return [e for e in self.non_terminal_edges() if self.directions[e] is None]

    def with_directions(self, assignment: dict[int, str | None]) -> "DualTree":
        dirs = list(self.directions)
        for e, d in assignment.items():
            dirs[e] = d
        return replace(self, directions=tuple(dirs))

    def directed(self, x: int, y: int) -> "DualTree":
        """Copy with the edge between x and y directed x -> y."""
        e = self.edge_between(x, y)
        a, _ = self.edges[e]
        return self.with_directions({e: AB if a == x else BA})

    def unbound(self) -> "DualTree":
        return replace(self, triangulation=None)

    # --- binding to a triangulation ---------------------------------------

    @property
    def bound(self) -> bool:
        return self.triangulation is not None

    def node_of_triangle(self, t: int) -> int:
        return t

    def node_of_edge(self, k: int) -> int:
        return len(self.triangulation.triangles) + k

    def triangle_of_node(self, x: int) -> int:
        return x

    def edge_of_node(self, x: int) -> int:
        return x - len(self.triangulation.triangles)


def validate(D: DualTree) -> None:
    """Check degree, tree and direction conditions; raise BadDegrees."""
    n = D.size
    if len(D.rotation) != n:
        raise BadDegrees("rotation does not cover every node")
    deg = [0] * n
    for e, (a, b) in enumerate(D.edges):
        if not (0 <= a < n and 0 <= b < n) or a == b:
            raise BadDegrees(f"edge {e} has bad endpoints")
        deg[a] += 1
        deg[b] += 1
    for x in range(n):
        want = 3 if D.is_triangle(x) else 1
        if deg[x] != want:
            raise BadDegrees(f"node {x} ({D.kinds[x]}) has degree {deg[x]}, expected {want}")
        if sorted(D.rotation[x]) != sorted(e for e, (a, b) in enumerate(D.edges) if x in (a, b)):
            raise BadDegrees(f"rotation at node {x} does not list its edges")
    if len(D.edges) != n - 1:
        raise BadDegrees("edge count is not node count - 1")
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in D.neighbours(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != n:
        raise BadDegrees("dual is not connected")
    if not D.triangle_nodes():
        raise BadDegrees("dual has no triangle node")
    for e in range(len(D.edges)):
        if D.is_terminal_edge(e) and D.directions[e] is not None:
            raise BadDegrees(f"terminal edge {e} is directed")


def build_dual(T: Triangulation) -> DualTree:
    m = len(T.triangles)
    n = T.n
    kinds = [TRIANGLE] * m + [TERMINAL] * n
    edge_ids: dict[tuple[int, int], int] = {}
    edges: list[tuple[int, int]] = []
    owner: dict[tuple[int, int], list[int]] = {}
    for t in range(m):
        for a, b in T.triangle_edges(t):
            owner.setdefault((min(a, b), max(a, b)), []).append(t)
    for key in sorted(T.diagonals):
        t1, t2 = owner[key]
        edge_ids[key] = len(edges)
        edges.append((t1, t2))
    for k in range(n):
        key = (min(k, (k + 1) % n), max(k, (k + 1) % n))
        (t,) = owner[key]
        edge_ids[key] = len(edges)
        edges.append((t, m + k))
    rotation: list[tuple[int, ...]] = []
    for t in range(m):
        rotation.append(tuple(edge_ids[(min(a, b), max(a, b))] for a, b in T.triangle_edges(t)))
    for k in range(n):
        key = (min(k, (k + 1) % n), max(k, (k + 1) % n))
        rotation.append((edge_ids[key],))
    return DualTree(tuple(kinds), tuple(edges), (None,) * len(edges), tuple(rotation), T)


def shared_edge(T: Triangulation, t1: int, t2: int) -> tuple[int, int]:
    common = sorted(set(T.triangles[t1]) & set(T.triangles[t2]))
    if len(common) != 2:
        raise ValueError(f"triangles {t1} and {t2} are not adjacent")
    return common[0], common[1]


def right_endpoint(T: Triangulation, a: int, b: int) -> int:
    """Endpoint of the edge shared by triangles a and b lying to the right of
    a path crossing from a into b."""
    P = T.polygon
    s, t = shared_edge(T, a, b)
    x = next(v for v in T.triangles[a] if v not in (s, t))
    return s if det(P[s], P[t], P[x]) > 0 else t


def reflex_endpoint(T: Triangulation, a: int, b: int) -> int | None:
    """Vertex of the shared edge that is reflex in the union of a and b."""
    P = T.polygon
    s, t = shared_edge(T, a, b)
    x = next(v for v in T.triangles[a] if v not in (s, t))
    y = next(v for v in T.triangles[b] if v not in (s, t))
    # CCW quadrilateral: s, y, t, x when x lies left of s -> t
    if det(P[s], P[t], P[x]) < 0:
        x, y = y, x
    found = None
    for v, prev, nxt in ((s, x, y), (t, y, x)):
        d = det(P[prev], P[v], P[nxt])
        if d == 0:
            raise DegenerateQuadrilateral(f"vertex {v} is collinear in the union of triangles {a} and {b}")
        if d < 0:
            found = v
    return found


def is_right_reflex(T: Triangulation, a: int, b: int) -> bool:
    r = reflex_endpoint(T, a, b)
    return r is not None and r == right_endpoint(T, a, b)


def direct_dual(P, T: Triangulation) -> DualTree:
    """Directed dual of T: every right-reflex pair (a, b) gives a -> b."""
    if P is not None and P != T.polygon:
        raise ValueError("triangulation does not belong to this polygon")
    D = build_dual(T)
    dirs = list(D.directions)
    for e in D.non_terminal_edges():
        a, b = D.edges[e]
        if is_right_reflex(T, a, b):
            dirs[e] = AB
        elif is_right_reflex(T, b, a):
            dirs[e] = BA
    return replace(D, directions=tuple(dirs))


# --- visibility paths ------------------------------------------------------


def trace_visibility_path(D: DualTree, a: int, b: int) -> list[int]:
    if not D.is_triangle(a):
        raise ValueError("a visibility path starts on a triangle node")
    path = [a, b]
    D.edge_between(a, b)
    prev, cur = a, b
    while D.is_triangle(cur):
        arrow = D.arrow(prev, cur)
        if arrow == 0:
            raise UndirectedEdgeOnPath(f"edge {prev}-{cur} is undirected")
        nbrs = D.neighbours(cur)
        i = nbrs.index(prev)
        r = nbrs[(i + 1) % 3]
        l = nbrs[(i + 2) % 3]
        nxt = l if arrow > 0 else r
        path.append(nxt)
        prev, cur = cur, nxt
        if len(path) > D.size + 1:
            raise AssertionError("visibility path did not terminate")
    return path


# --- outer paths -----------------------------------------------------------


def outer_walk(D: DualTree, start_leaf: int) -> list[int]:
    """Nodes of the counter-clockwise outer-face walk, starting at a leaf and
    ending just before returning to it."""
    (e0,) = D.rotation[start_leaf]
    walk = [start_leaf]
    prev, edge = start_leaf, e0
    while True:
        cur = D.other(edge, prev)
        if cur == start_leaf:
            return walk
        walk.append(cur)
        rot = D.rotation[cur]
        edge = rot[(rot.index(edge) + 1) % len(rot)]
        prev = cur


def terminal_order(D: DualTree) -> list[int]:
    """Terminal nodes listed as polygon edges 0, 1, ..., n-1.

    For a bound dual this is the binding.  For an abstract dual the terminals
    are numbered along the outer walk starting at the lowest-id terminal.
    """
    if D.bound:
        return [D.node_of_edge(k) for k in range(D.triangulation.n)]
    first = min(D.terminal_nodes())
    return [x for x in outer_walk(D, first) if D.is_terminal(x)]


def maximal_outer_paths(D: DualTree) -> list[list[int]]:
    """Maximal outer paths; path k runs from terminal k-1 to terminal k, i.e.
    it is the fan about polygon vertex k."""
    order = terminal_order(D)
    walk = outer_walk(D, order[-1])
    walk.append(order[-1])
    paths = []
    cur = [walk[0]]
    for x in walk[1:]:
        cur.append(x)
        if D.is_terminal(x):
            paths.append(cur)
            cur = [x]
    assert [p[-1] for p in paths] == order, "outer walk disagrees with terminal numbering"
    return paths


def find_illegal_path(D: DualTree) -> list[int] | None:
    if D.undirected_non_terminal():
        raise UndirectedNonTerminalEdge("every non-terminal edge must be directed")
    for path in maximal_outer_paths(D):
        inner = path[1:-1]
        forward = [D.arrow(inner[i], inner[i + 1]) > 0 for i in range(len(inner) - 1)]
        for i in range(len(forward)):
            if not forward[i]:
                continue
            for j in range(i + 2, len(forward)):
                if forward[j]:
                    return inner[i:j + 2]
    return None


# --- combinatorial visibility ----------------------------------------------


def _fan_starts(D: DualTree, path: list[int]) -> list[tuple[int, int]]:
    """(triangle, neighbour across the edge opposite the fan vertex)."""
    out = []
    for i in range(1, len(path) - 1):
        y = path[i]
        third = [z for z in D.neighbours(y) if z not in (path[i - 1], path[i + 1])]
        out.append((y, third[0]))
    return out


def dual_vertex_edge_pairs(D: DualTree) -> frozenset[tuple[int, int]]:
    """All (vertex, polygon edge) pairs the directed dual declares visible."""
    cache = D.__dict__.get("_ve")
    if cache is not None:
        return cache
    label = {x: k for k, x in enumerate(terminal_order(D))}
    out = set()
    for u, path in enumerate(maximal_outer_paths(D)):
        out.add((u, label[path[0]]))
        out.add((u, label[path[-1]]))
        for a, b in _fan_starts(D, path):
            end = b if D.is_terminal(b) else trace_visibility_path(D, a, b)[-1]
            out.add((u, label[end]))
    res = frozenset(out)
    object.__setattr__(D, "_ve", res)
    return res


def dual_vertex_edge_visible(D: DualTree, u: int, g: int) -> bool:
    return (u, g) in dual_vertex_edge_pairs(D)


def dual_vertex_vertex_visible(D: DualTree, u: int, v: int) -> bool:
    paths = maximal_outer_paths(D)
    return bool(set(paths[u]) & set(paths[v]))


def dual_vertex_vertex_pairs(D: DualTree) -> frozenset[tuple[int, int]]:
    paths = [set(p) for p in maximal_outer_paths(D)]
    n = len(paths)
    return frozenset((u, v) for u in range(n) for v in range(u + 1, n) if paths[u] & paths[v])


# --- plane isomorphism -----------------------------------------------------


def _encode(D: DualTree, x: int, via: int) -> tuple:
    """Encoding of the subtree hanging off x, edges read CCW after ``via``."""
    rot = D.rotation[x]
    k = rot.index(via)
    parts = [D.kinds[x]]
    for e in rot[k + 1:] + rot[:k]:
        y = D.other(e, x)
        parts.append((D.arrow(x, y), _encode(D, y, e)))
    return tuple(parts)


def _dart_code(D: DualTree, x: int, e: int) -> tuple:
    y = D.other(e, x)
    return (D.kinds[x], D.arrow(x, y), _encode(D, x, e), _encode(D, y, e))


def canonical_form(D: DualTree) -> tuple:
    return min(_dart_code(D, x, e) for x in range(D.size) for e in D.rotation[x])


def plane_isomorphism(D1: DualTree, D2: DualTree, respect_directions: bool = True) -> dict[int, int] | None:
    """Node map D1 -> D2 preserving adjacency, rotation, kinds and arrows."""
    if D1.size != D2.size or sorted(D1.kinds) != sorted(D2.kinds):
        return None
    x0 = min(D1.triangle_nodes())
    e0 = D1.rotation[x0][0]
    for x in D2.triangle_nodes():
        for e in D2.rotation[x]:
            m = _extend(D1, D2, x0, e0, x, e, respect_directions)
            if m is not None:
                return m
    return None


def _extend(D1, D2, x1, e1, x2, e2, dirs) -> dict[int, int] | None:
    mapping = {x1: x2}
    stack = [(x1, e1, x2, e2)]
    while stack:
        a1, f1, a2, f2 = stack.pop()
        if D1.kinds[a1] != D2.kinds[a2]:
            return None
        r1, r2 = D1.rotation[a1], D2.rotation[a2]
        if len(r1) != len(r2):
            return None
        k1, k2 = r1.index(f1), r2.index(f2)
        for i in range(len(r1)):
            g1 = r1[(k1 + i) % len(r1)]
            g2 = r2[(k2 + i) % len(r2)]
            b1, b2 = D1.other(g1, a1), D2.other(g2, a2)
            if dirs and D1.arrow(a1, b1) != D2.arrow(a2, b2):
                return None
            if b1 in mapping:
                if mapping[b1] != b2:
                    return None
                continue
            mapping[b1] = b2
            stack.append((b1, g1, b2, g2))
    return mapping


def isomorphic(D1: DualTree, D2: DualTree) -> bool:
    return plane_isomorphism(D1, D2) is not None


# --- documents -------------------------------------------------------------


def dual_to_json(D: DualTree) -> dict:
    doc = {
        "nodes": [{"id": x, "kind": k} for x, k in enumerate(D.kinds)],
        "edges": [
            {"a": a, "b": b, "dir": D.directions[e] or "none"} for e, (a, b) in enumerate(D.edges)
        ],
        "rotation": {str(x): list(D.rotation[x]) for x in range(D.size)},
    }
    if D.bound:
        T = D.triangulation
        binding = {}
        for t, tri in enumerate(T.triangles):
            binding[str(D.node_of_triangle(t))] = {"triangle": list(tri)}
        for k in range(T.n):
            binding[str(D.node_of_edge(k))] = {"edge": k}
        doc["binding"] = binding
    return doc


def dump_dual(D: DualTree) -> str:
    return json.dumps(dual_to_json(D))


def parse_dual(document: str | dict) -> DualTree:
    if isinstance(document, str):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"invalid JSON: {exc}") from exc
    else:
        data = document
    try:
        nodes = sorted(data["nodes"], key=lambda d: d["id"])
        ids = [d["id"] for d in nodes]
        if ids != list(range(len(ids))):
            raise MalformedDocument("node ids must be 0..n-1")
        kinds = []
        for d in nodes:
            if d["kind"] not in (TRIANGLE, TERMINAL):
                raise MalformedDocument(f"unknown node kind {d['kind']!r}")
            kinds.append(d["kind"])
        edges = []
        dirs = []
        for d in data["edges"]:
            edges.append((int(d["a"]), int(d["b"])))
            raw = d.get("dir", "none")
            if raw not in ("none", AB, BA):
                raise MalformedDocument(f"unknown direction {raw!r}")
            dirs.append(None if raw == "none" else raw)
        rot = data["rotation"]
        rotation = tuple(tuple(int(e) for e in rot[str(x)]) for x in range(len(kinds)))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad dual document: {exc}") from exc
    D = DualTree(tuple(kinds), tuple(edges), tuple(dirs), rotation)
    validate(D)
    return D


def from_parent_list(kinds: Sequence[str], adjacency: Iterable[Sequence[int]], directions=None) -> DualTree:
    """Build a dual from per-node CCW neighbour lists.

    ``directions`` maps (x, y) pairs to mean x -> y.
    """
    adjacency = [list(a) for a in adjacency]
    edges: list[tuple[int, int]] = []
    index: dict[tuple[int, int], int] = {}
    for x, nbrs in enumerate(adjacency):
        for y in nbrs:
            key = (min(x, y), max(x, y))
            if key not in index:
                index[key] = len(edges)
                edges.append(key)
    rotation = tuple(tuple(index[(min(x, y), max(x, y))] for y in nbrs) for x, nbrs in enumerate(adjacency))
    dirs = [None] * len(edges)
    for (x, y) in directions or ():
        e = index[(min(x, y), max(x, y))]
        dirs[e] = AB if edges[e][0] == x else BA
    D = DualTree(tuple(kinds), tuple(edges), tuple(dirs), rotation)
    validate(D)
    return D


def relabel(D: DualTree, perm: Sequence[int]) -> DualTree:
    """Copy of an abstract dual with node x renamed perm[x]."""
    n = D.size
    kinds = [None] * n
    rotation = [None] * n
    for x in range(n):
        kinds[perm[x]] = D.kinds[x]
        rotation[perm[x]] = D.rotation[x]
    edges = tuple((perm[a], perm[b]) for a, b in D.edges)
    return DualTree(tuple(kinds), edges, D.directions, tuple(rotation))
