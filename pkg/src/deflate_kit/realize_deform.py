"""Realizing directed duals as deflated polygons, same-dual deformations and
the sampled monotonicity checker."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from gmpy2 import mpq

from .dual import (
    AB,
    BA,
    TERMINAL,
    TRIANGLE,
    DualTree,
    canonical_form,
    direct_dual,
    find_illegal_path,
    plane_isomorphism,
    terminal_order,
    validate,
)
from .errors import (
    BadDegrees,
    DualMismatch,
    IllegalPath,
    MalformedDocument,
    NonSimpleFrame,
    NotDeflated,
    RadiusSearchFailed,
)
from .exact_geom import Point, ScalarFormatError, det, format_scalar, parse_scalar, point
from .polygon import Polygon, find_self_intersection
from .triangulation import Triangulation, enumerate_triangulations
from .visibility import is_deflated, visibility_graph, vv_pairs

CANONICAL_TRIANGLE = (point(0, 0), point(4, 0), point(1, 2))
MAX_HALVINGS = 64


def _unit(v: Point) -> Point:
    """v scaled to unit L-infinity norm (exact)."""
    return v.scaled(1 / v.norm_inf())


# --- realization -----------------------------------------------------------


@dataclass
class _Ring:
    pts: list[Point]
    # dart for each boundary edge, keyed by (tail vertex id, head vertex id)
    darts: dict[tuple[int, int], tuple[int, int]]
    order: list[int]

    def polygon(self) -> list[Point]:
        return [self.pts[v] for v in self.order]

    def neighbours(self, v: int) -> tuple[int, int]:
        k = self.order.index(v)
        return self.order[k - 1], self.order[(k + 1) % len(self.order)]


def _attach_direction(ring: _Ring, s: int, t: int, x: int, forward: bool) -> tuple[int, Point]:
    """Anchor vertex and direction for the new apex across edge s -> t.

    ``forward`` means the edge is directed from the old triangle (apex x) into
    the new one, so the reflex endpoint is the clockwise one, s.  The
    direction points into the cone between the ray opposite x and the boundary
    neighbour of the anchor, which makes the anchor reflex in the new
    quadrilateral and keeps the ring simple for small offsets.
    """
    P = ring.pts
    if forward:
        u, w = s, t
        p, _ = ring.neighbours(u)
        pu, pw, pp, px = P[u], P[w], P[p], P[x]
        if not ((px - pu).cross(pp - pu) > 0 or p == x):
            raise AssertionError("fan angle at the anchor is not below a half turn")
        n1 = (pu - pp) if (pw - pu).cross(pu - pp) > 0 else (pw - pu)
        minus_d = _unit(n1) + _unit(px - pu)
    else:
        u, w = t, s
        _, q = ring.neighbours(u)
        pu, pw, pq, px = P[u], P[w], P[q], P[x]
        if not ((pq - pu).cross(px - pu) > 0 or q == x):
            raise AssertionError("fan angle at the anchor is not below a half turn")
        n2 = (pu - pq) if (pu - pq).cross(pw - pu) > 0 else (pw - pu)
        minus_d = _unit(px - pu) + _unit(n2)
    return u, -minus_d


def _attach_ok(pts: list[Point], y: int, s: int, t: int) -> bool:
    if find_self_intersection(pts) is not None:
        return False
    try:
        poly = Polygon(pts, normalize=False)
    except Exception:
        return False
    vv = vv_pairs(poly)
    n = len(pts)
    for v in range(n):
        if v != y and v not in (s, t) and (min(v, y), max(v, y)) in vv:
            return False
    return bool(is_deflated(poly))


def _realize_ring(D: DualTree) -> tuple[_Ring, dict[int, tuple[int, int, int]]]:
    root = min(D.triangle_nodes())
    ring = _Ring(list(CANONICAL_TRIANGLE), {}, [0, 1, 2])
    tri_of: dict[int, tuple[int, int, int]] = {root: (0, 1, 2)}
    for e, (a, b) in zip(D.rotation[root], ((0, 1), (1, 2), (2, 0))):
        ring.darts[(a, b)] = (root, e)

    def attach(a: int, e: int) -> None:
        b = D.other(e, a)
        (s, t), = [k for k, v in ring.darts.items() if v == (a, e)]
        x = next(v for v in tri_of[a] if v not in (s, t))
        arrow = D.arrow(a, b)
        if arrow == 0:
            raise BadDegrees(f"non-terminal edge {e} is undirected")
        u, d = _attach_direction(ring, s, t, x, arrow > 0)
        eps = (ring.pts[t] - ring.pts[s]).norm_inf() / 2
        y = len(ring.pts)
        k = ring.order.index(t)
        order = ring.order[:k] + [y] + ring.order[k:]
        for _ in range(MAX_HALVINGS):
            cand = ring.pts + [ring.pts[u] + _unit(d).scaled(eps)]
            pts = [cand[v] for v in order]
            if _attach_ok(pts, order.index(y), order.index(s), order.index(t)):
                break
            eps /= 2
        else:
            raise RadiusSearchFailed(f"could not place the apex of triangle node {b}")
        ring.pts = cand
        ring.order = order
        del ring.darts[(s, t)]
        tri_of[b] = (t, s, y)
        rot = D.rotation[b]
        i = rot.index(e)
        e1, e2 = rot[(i + 1) % 3], rot[(i + 2) % 3]
        ring.darts[(s, y)] = (b, e1)
        ring.darts[(y, t)] = (b, e2)
        for f in (e1, e2):
            if D.is_triangle(D.other(f, b)):
                attach(b, f)

    for e in D.rotation[root]:
        if D.is_triangle(D.other(e, root)):
            attach(root, e)
    return ring, tri_of


def realize(D: DualTree) -> Polygon:
    """A deflated polygon whose directed dual is plane-isomorphic to ``D``.

    Polygon edge k corresponds to terminal ``terminal_order(D)[k]``.
    """
    validate(D)
    if D.undirected_non_terminal():
        raise BadDegrees("every non-terminal edge must be directed")
    bad = find_illegal_path(D)
    if bad is not None:
        raise IllegalPath(bad)
    ring, _ = _realize_ring(D)
    first = terminal_order(D)[0]
    start = next(s for (s, t), (node, e) in ring.darts.items() if D.other(e, node) == first)
    k = ring.order.index(start)
    order = ring.order[k:] + ring.order[:k]
    return Polygon([ring.pts[v] for v in order], normalize=False)


def unique_triangulation(P: Polygon) -> Triangulation:
    tris = enumerate_triangulations(P)
    if len(tris) != 1:
        raise NotDeflated(f"polygon has {len(tris)} triangulations")
    return tris[0]


def dual_of(P: Polygon) -> DualTree:
    """Directed dual of a deflated polygon's unique triangulation."""
    if not is_deflated(P):
        raise NotDeflated("polygon is not deflated")
    return direct_dual(P, unique_triangulation(P))


# --- random and exhaustive directed duals -----------------------------------


def _tree_from_adjacency(kinds: list[str], adj: list[list[int]], arrows: dict) -> DualTree:
    from .dual import from_parent_list

    return from_parent_list(kinds, adj, [k for k, v in arrows.items() if v])


def random_dual(triangles: int, rng: random.Random, max_tries: int = 1000) -> DualTree:
    """A random fully directed dual with no illegal path."""
    for _ in range(max_tries):
        kinds = [TRIANGLE, TERMINAL, TERMINAL, TERMINAL]
        adj = [[1, 2, 3], [0], [0], [0]]
        arrows: dict[tuple[int, int], bool] = {}
        ok = True
        for _k in range(triangles - 1):
            leaves = [x for x, k in enumerate(kinds) if k == TERMINAL]
            for _attempt in range(20):
                leaf = rng.choice(leaves)
                (parent,) = adj[leaf]
                trial_kinds = kinds + [TERMINAL, TERMINAL]
                trial_kinds[leaf] = TRIANGLE
                n1, n2 = len(kinds), len(kinds) + 1
                trial_adj = [list(a) for a in adj] + [[leaf], [leaf]]
                trial_adj[leaf] = [parent, n1, n2]
                trial_arrows = dict(arrows)
                pair = (parent, leaf) if rng.random() < 0.5 else (leaf, parent)
                trial_arrows[pair] = True
                D = _tree_from_adjacency(trial_kinds, trial_adj, trial_arrows)
                if find_illegal_path(D) is None:
                    kinds, adj, arrows = trial_kinds, trial_adj, trial_arrows
                    break
            else:
                ok = False
                break
        if ok:
            return _tree_from_adjacency(kinds, adj, arrows)
    raise RuntimeError("could not sample a legal dual")


def convex_polygon(n: int) -> Polygon:
    """Strictly convex n-gon with small integer vertices on a parabola."""
    pts = [point(i, i * i) for i in range(n - 1)] + [point(0, (n - 2) ** 2 + 1)]
    # vertices (i, i^2) are convex; close with a point above the first
    return Polygon(pts)


def all_duals(triangles: int) -> list[DualTree]:
    """Every fully directed dual with the given number of triangle nodes, one
    per plane-isomorphism class, legal or not."""
    from .dual import build_dual

    if triangles == 1:
        return [build_dual(enumerate_triangulations(convex_polygon(3))[0]).unbound()]
    seen = {}
    for T in enumerate_triangulations(convex_polygon(triangles + 2)):
        base = build_dual(T).unbound()
        inner = base.non_terminal_edges()
        for mask in range(1 << len(inner)):
            D = base.with_directions({e: (AB if mask >> i & 1 else BA) for i, e in enumerate(inner)})
            key = canonical_form(D)
            if key not in seen:
                seen[key] = D
    return [seen[k] for k in sorted(seen)]


# --- trajectories ----------------------------------------------------------

FRAMES_PER_PHASE = 16
MAX_FRAMES_PER_PHASE = 1 << 10


@dataclass(frozen=True)
class Frame:
    t: mpq
    vertices: tuple[Point, ...]

    def polygon(self) -> Polygon:
        return Polygon(self.vertices, normalize=False)


@dataclass(frozen=True)
class Trajectory:
    frames: tuple[Frame, ...]

    def __post_init__(self):
        if len(self.frames) < 2:
            raise ValueError("a trajectory needs at least two frames")
        ts = [f.t for f in self.frames]
        if ts[0] != 0 or ts[-1] != 1 or any(a >= b for a, b in zip(ts, ts[1:])):
            raise ValueError("frame times must increase strictly from 0 to 1")
        n = len(self.frames[0].vertices)
        if any(len(f.vertices) != n for f in self.frames):
            raise ValueError("frames differ in vertex count")

    @property
    def start(self) -> tuple[Point, ...]:
        return self.frames[0].vertices

    @property
    def end(self) -> tuple[Point, ...]:
        return self.frames[-1].vertices

    def reversed(self) -> "Trajectory":
        return Trajectory(tuple(Frame(1 - f.t, f.vertices) for f in reversed(self.frames)))


def trajectory_to_json(traj: Trajectory) -> dict:
    return {
        "frames": [
            {"t": format_scalar(f.t), "vertices": [p.as_text() for p in f.vertices]} for f in traj.frames
        ]
    }


def dump_trajectory(traj: Trajectory) -> str:
    return json.dumps(trajectory_to_json(traj))


def parse_trajectory(document: str | dict) -> Trajectory:
    if isinstance(document, str):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"invalid JSON: {exc}") from exc
    else:
        data = document
    try:
        frames = []
        for fr in data["frames"]:
            verts = tuple(point(parse_scalar(x), parse_scalar(y)) for x, y in fr["vertices"])
            frames.append(Frame(parse_scalar(fr["t"]), verts))
        return Trajectory(tuple(frames))
    except (KeyError, TypeError, ValueError, ScalarFormatError) as exc:
        raise MalformedDocument(f"bad trajectory document: {exc}") from exc


# --- monotonicity ----------------------------------------------------------


class Mode(Enum):
    VV = "vv"
    VV_AND_VE = "vv+ve"


@dataclass(frozen=True)
class MonotonicityReport:
    ok: bool
    violations: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    ve_violations: tuple[tuple[int, int], ...] = ()


def _frame_polygon(frame: Frame, index: int) -> tuple[Polygon, bool]:
    """Polygon of a frame and whether its ring had to be reversed."""
    bad = find_self_intersection(frame.vertices)
    if bad is not None:
        raise NonSimpleFrame(index, bad)
    from .polygon import signed_area2

    area = signed_area2(frame.vertices)
    if area == 0:
        raise NonSimpleFrame(index, (0, 0))
    if area > 0:
        return Polygon(frame.vertices, normalize=False), False
    return Polygon(tuple(reversed(frame.vertices)), normalize=False), True


def _frame_vv(frame: Frame, index: int) -> frozenset[tuple[int, int]]:
    P, flipped = _frame_polygon(frame, index)
    pairs = vv_pairs(P)
    if not flipped:
        return pairs
    n = P.n
    return frozenset((min(n - 1 - a, n - 1 - b), max(n - 1 - a, n - 1 - b)) for a, b in pairs)


def _frame_ve(frame: Frame, index: int):
    P, flipped = _frame_polygon(frame, index)
    ve = visibility_graph(P).ve
    if not flipped:
        return P, ve
    n = P.n
    # reversed ring: vertex i -> n-1-i, edge k (k, k+1) -> edge n-2-k
    return P, frozenset((n - 1 - u, (n - 2 - e) % n) for u, e in ve)


def check_monotonic(traj: Trajectory, mode: Mode = Mode.VV) -> MonotonicityReport:
    """Sampled monotonicity: vv never grows between consecutive frames.

    In ``VV_AND_VE`` mode the vertex-edge relation of the last frame must also
    be contained in that of the first, when both end frames are in general
    position.
    """
    from .visibility import is_general_position

    violations = []
    prev = _frame_vv(traj.frames[0], 0)
    for i in range(1, len(traj.frames)):
        cur = _frame_vv(traj.frames[i], i)
        for pair in sorted(cur - prev):
            violations.append(((i - 1, i), pair))
        prev = cur
    ve_bad: list[tuple[int, int]] = []
    if mode is Mode.VV_AND_VE:
        last = len(traj.frames) - 1
        P0, ve0 = _frame_ve(traj.frames[0], 0)
        P1, ve1 = _frame_ve(traj.frames[-1], last)
        if is_general_position(P0) and is_general_position(P1):
            ve_bad = sorted(ve1 - ve0)
    return MonotonicityReport(not violations and not ve_bad, tuple(violations), tuple(ve_bad))


# --- same-dual deformation --------------------------------------------------


def _pts_polygon(pts: Sequence[Point]) -> Polygon | None:
    if find_self_intersection(pts) is not None:
        return None
    try:
        return Polygon(pts, normalize=False)
    except Exception:
        return None


def _has_dual(pts: Sequence[Point], T: Triangulation, directions) -> bool:
    """Frame is simple, deflated, triangulated by T's diagonals with the same
    edge directions."""
    from .triangulation import make_triangulation

    P = _pts_polygon(pts)
    if P is None or not is_deflated(P):
        return False
    expected = set(T.diagonals) | {(min(k, (k + 1) % P.n), max(k, (k + 1) % P.n)) for k in range(P.n)}
    if set(vv_pairs(P)) != expected:
        return False
    return direct_dual(P, make_triangulation(P, T.diagonals)).directions == directions


def _ts(start, end, count: int) -> list[mpq]:
    start, end = mpq(start), mpq(end)
    return [start + (end - start) * mpq(k, count) for k in range(1, count + 1)]


def _rot90(v: Point) -> Point:
    return Point(-v.y, v.x)


def _triangle_motion(A: Sequence[Point], B: Sequence[Point], F: int) -> list[tuple[mpq, list[Point]]]:
    """Keep a triangle counter-clockwise while moving it from A to B."""
    frames = [(mpq(0), list(A))]
    a0, a1, a2 = A
    b0, b1, b2 = B
    r1, r2 = a1 - a0, a2 - a0
    s1, s2 = b1 - b0, b2 - b0
    # phase 1: translate
    for t in _ts(0, mpq(1, 4), F):
        lam = t * 4
        o = a0 + (b0 - a0).scaled(lam)
        frames.append((t, [o, o + r1, o + r2]))
    o = b0
    # phase 2: second vertex to the quarter turn of the first
    q = _rot90(r1)
    for t in _ts(mpq(1, 4), mpq(1, 2), F):
        lam = (t - mpq(1, 4)) * 4
        frames.append((t, [o, o + r1, o + r2 + (q - r2).scaled(lam)]))
    # phase 3: first vertex along a path avoiding the origin, second follows
    waypoints = [r1]
    if det(Point(mpq(0), mpq(0)), r1, s1) == 0 and r1.dot(s1) < 0:
        waypoints.append(_rot90(r1))
    waypoints.append(s1)
    legs = len(waypoints) - 1
    for t in _ts(mpq(1, 2), mpq(3, 4), F):
        lam = (t - mpq(1, 2)) * 4 * legs
        k = min(int(lam), legs - 1)
        v = waypoints[k] + (waypoints[k + 1] - waypoints[k]).scaled(lam - k)
        frames.append((t, [o, o + v, o + _rot90(v)]))
    # phase 4: second vertex to its target
    q = _rot90(s1)
    for t in _ts(mpq(3, 4), 1, F):
        lam = (t - mpq(3, 4)) * 4
        frames.append((t, [o, o + s1, o + q + (s2 - q).scaled(lam)]))
    return frames


def _cone_direction(pts: Sequence[Point], u: int, w: int, x: int) -> Point:
    """Feasible direction for the ear apex anchored at reflex vertex u.

    ``pts`` is the sub-polygon ring, (u, w) a boundary edge and x the apex of
    the triangle on the inner side of (u, w).
    """
    n = len(pts)
    ring = _Ring(list(pts), {}, list(range(n)))
    if (u + 1) % n == w:
        _, d = _attach_direction(ring, u, w, x, True)
    else:
        _, d = _attach_direction(ring, w, u, x, False)
    return _unit(d)


def _min_dist2(pts: Sequence[Point], u: int) -> mpq:
    """Squared distance from vertex u to the nearest non-incident edge."""
    n = len(pts)
    pu = pts[u]
    best = None
    for k in range(n):
        if u in (k, (k + 1) % n):
            continue
        a, b = pts[k], pts[(k + 1) % n]
        ab = b - a
        lam = (pu - a).dot(ab) / ab.norm2()
        lam = min(max(lam, mpq(0)), mpq(1))
        c = a + ab.scaled(lam)
        d2 = (pu - c).norm2()
        if best is None or d2 < best:
            best = d2
    return best


def _insert(pts: Sequence[Point], v: int, y: Point) -> list[Point]:
    return list(pts[:v]) + [y] + list(pts[v:])


def _deform(A: Sequence[Point], B: Sequence[Point], T: Triangulation, F: int) -> list[tuple[mpq, list[Point]]]:
    from .dual import build_dual, reflex_endpoint
    from .triangulation import find_ears, remove_ear

    if list(A) == list(B):
        return [(mpq(0), list(A)), (mpq(1), list(B))]
    n = len(A)
    if n == 3:
        return _triangle_motion(A, B, F)
    ear = find_ears(T)[0]
    v = ear.helix
    a = next(t for t in T.triangles_of_edge(*ear.diagonal) if t != ear.triangle)
    u = reflex_endpoint(T, ear.triangle, a)
    w = ear.diagonal[0] if ear.diagonal[1] == u else ear.diagonal[1]
    x = next(z for z in T.triangles[a] if z not in ear.diagonal)
    sub_T = remove_ear(T, ear)
    sub = lambda z: z if z < v else z - 1  # noqa: E731
    su, sw, sx = sub(u), sub(w), sub(x)
    A_sub = [p for i, p in enumerate(A) if i != v]
    B_sub = [p for i, p in enumerate(B) if i != v]
    inner = _deform(A_sub, B_sub, sub_T, F)
    directions = direct_dual(None, T).directions

    d_start = _unit(A[v] - A[u])
    d_end = _unit(B[v] - B[u])
    cone = [_cone_direction(fr, su, sw, sx) for _, fr in inner]
    bound = min(min(_min_dist2(fr, su) for _, fr in inner), (A[v] - A[u]).norm2(), (B[v] - B[u]).norm2())
    rho = mpq(1)
    while 8 * rho * rho > bound:
        rho /= 2
    while 8 * (2 * rho) ** 2 <= bound:
        rho *= 2

    for _ in range(MAX_HALVINGS):
        frames = _ear_frames(A, B, inner, cone, v, su, d_start, d_end, rho, F)
        if all(_has_dual(fr, T, directions) for _, fr in frames):
            return frames
        rho /= 2
    raise RadiusSearchFailed("no ear radius keeps every frame deflated")


def _ear_frames(A, B, inner, cone, v, su, d_start, d_end, rho, F):
    frames = [(mpq(0), list(A))]
    A_sub, B_sub = inner[0][1], inner[-1][1]
    ua, ub = A_sub[su], B_sub[su]
    ra = (A[v] - ua).norm_inf()
    rb = (B[v] - ub).norm_inf()
    # phase 1: slide the helix towards its anchor
    for t in _ts(0, mpq(1, 10), F):
        lam = t * 10
        r = ra + (rho - ra) * lam
        frames.append((t, _insert(A_sub, v, ua + d_start.scaled(r))))
    # phase 2: turn into the feasible direction
    for t in _ts(mpq(1, 10), mpq(2, 10), F):
        lam = (t - mpq(1, 10)) * 10
        d = _unit(d_start.scaled(1 - lam) + cone[0].scaled(lam))
        frames.append((t, _insert(A_sub, v, ua + d.scaled(rho))))
    # phase 3: follow the inner motion
    for (tau, fr), d in zip(inner[1:], cone[1:]):
        t = mpq(2, 10) + mpq(6, 10) * tau
        frames.append((t, _insert(fr, v, fr[su] + d.scaled(rho))))
    # phase 4: turn towards the target direction
    for t in _ts(mpq(8, 10), mpq(9, 10), F):
        lam = (t - mpq(8, 10)) * 10
        d = _unit(cone[-1].scaled(1 - lam) + d_end.scaled(lam))
        frames.append((t, _insert(B_sub, v, ub + d.scaled(rho))))
    # phase 5: slide out to the target
    for t in _ts(mpq(9, 10), 1, F):
        lam = (t - mpq(9, 10)) * 10
        r = rho + (rb - rho) * lam
        frames.append((t, _insert(B_sub, v, ub + d_end.scaled(r))))
    return frames


def deform_same_dual(P: Polygon, Q: Polygon, frames_per_phase: int = FRAMES_PER_PHASE) -> Trajectory:
    """Monotonic deformation between deflated polygons with the same directed dual.

    Q's vertices are renumbered to correspond to P's through the dual
    isomorphism; the returned trajectory starts at P and ends at that
    renumbering of Q.
    """
    DP, DQ = dual_of(P), dual_of(Q)
    iso = plane_isomorphism(DP, DQ)
    if iso is None:
        raise DualMismatch("directed duals are not isomorphic")
    T = DP.triangulation
    # terminal of P's edge 0 maps to some edge k of Q: Q's vertex k is P's vertex 0
    shift = DQ.edge_of_node(iso[DP.node_of_edge(0)])
    B = [Q.vertices[(i + shift) % Q.n] for i in range(Q.n)]
    if list(P.vertices) == B:
        return Trajectory((Frame(mpq(0), P.vertices), Frame(mpq(1), tuple(B))))
    F = frames_per_phase
    while True:
        raw = _deform(P.vertices, B, T, F)
        traj = Trajectory(tuple(Frame(t, tuple(fr)) for t, fr in raw))
        if check_monotonic(traj).ok or F >= MAX_FRAMES_PER_PHASE:
            return traj
        F *= 2


# --- random corpora ---------------------------------------------------------


def _random_affine(P: Polygon, rng: random.Random) -> Polygon:
    """Image of P under a random orientation-preserving rational affine map."""
    while True:
        a, b, c, d = (mpq(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4))
        if a * d - b * c > 0:
            break
    ox, oy = mpq(rng.randint(-10, 10)), mpq(rng.randint(-10, 10))
    return Polygon([Point(a * p.x + b * p.y + ox, c * p.x + d * p.y + oy) for p in P.vertices], normalize=False)


def jitter(P: Polygon, rng: random.Random, rounds: int = 3) -> Polygon:
    """Randomly nudge vertices, keeping the polygon deflated with the same
    directed dual (positionally)."""
    T = unique_triangulation(P)
    dirs = direct_dual(P, T).directions
    pts = list(P.vertices)
    scale = min((pts[i] - pts[(i + 1) % len(pts)]).norm_inf() for i in range(len(pts)))
    for _ in range(rounds):
        for i in range(len(pts)):
            step = scale / 4
            for _try in range(4):
                dx = step * mpq(rng.randint(-8, 8), 8)
                dy = step * mpq(rng.randint(-8, 8), 8)
                cand = pts[:i] + [pts[i] + Point(dx, dy)] + pts[i + 1:]
                if _has_dual(cand, T, dirs):
                    pts = cand
                    break
                step /= 2
    return Polygon(pts, normalize=False)


def random_deflated(triangles: int, rng: random.Random) -> Polygon:
    D = random_dual(triangles, rng)
    perm = list(range(D.size))
    rng.shuffle(perm)
    from .dual import relabel

    return jitter(realize(relabel(D, perm)), rng)


def random_same_dual_pair(triangles: int, rng: random.Random) -> tuple[Polygon, Polygon]:
    """Two deflated polygons with plane-isomorphic directed duals."""
    from .dual import relabel

    D = random_dual(triangles, rng)
    perm = list(range(D.size))
    P = jitter(realize(D), rng)
    rng.shuffle(perm)
    Q = jitter(_random_affine(realize(relabel(D, perm)), rng), rng)
    return P, Q
