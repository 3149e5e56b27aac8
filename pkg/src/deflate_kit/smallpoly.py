"""Order types of small point sets and exhaustive classification of the simple
polygons they support."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations, permutations
from typing import Sequence

from .deflatability import NON_DEFLATABLE, certify
from .errors import GridExhausted, NotGeneralPosition
from .exact_geom import Point, Turn, point
from .polygon import Polygon, find_self_intersection, polygon_to_json, reflex_vertices
from .visibility import crossing_pairs, is_deflated, is_general_position

KNOWN_COUNTS = {3: 1, 4: 2, 5: 3, 6: 16}
BASE_GRID = 16
REPS_PER_CLASS = 4
MAX_DOUBLINGS = 4

Coord = tuple[int, int]


def _orient(p: Coord, q: Coord, r: Coord) -> int:
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def _hull(pts: Sequence[Coord]) -> list[int]:
    idx = sorted(range(len(pts)), key=lambda i: pts[i])

    def chain(order):
        out: list[int] = []
        for i in order:
            while len(out) >= 2 and _orient(pts[out[-2]], pts[out[-1]], pts[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower, upper = chain(idx), chain(idx[::-1])
    return lower[:-1] + upper[:-1]


def signature_key(pts: Sequence[Coord]) -> tuple[int, ...]:
    """Canonical orientation table, invariant under relabelling and reflection.

    Each hull vertex, read in each handedness, induces a labelling by angular
    order of the remaining points; the least resulting triple table wins.
    """
    n = len(pts)
    best = None
    for h in _hull(pts):
        for mirror in (1, -1):
            rest = [i for i in range(n) if i != h]
            rest.sort(key=cmp_to_key(lambda a, b: -mirror * _orient(pts[h], pts[a], pts[b])))
            order = [h] + rest
            key = tuple(mirror * _orient(pts[order[a]], pts[order[b]], pts[order[c]]) for a, b, c in combinations(range(n), 3))
            if best is None or key < best:
                best = key
    return best


@dataclass(frozen=True)
class OrderType:
    points: tuple[Point, ...]
    signature: dict

    @property
    def n(self) -> int:
        return len(self.points)

    def coords(self) -> list[Coord]:
        return [(int(p.x), int(p.y)) for p in self.points]


def _signature_map(pts: Sequence[Coord]) -> dict[tuple[int, int, int], Turn]:
    out = {}
    for a, b, c in permutations(range(len(pts)), 3):
        out[(a, b, c)] = Turn(_orient(pts[a], pts[b], pts[c]))
    return out


def _in_general_position(pts: Sequence[Coord]) -> bool:
    return all(_orient(a, b, c) != 0 for a, b, c in combinations(pts, 3))


def _extend(classes: dict, grid: int) -> dict:
    """Add one grid point to every stored representative.

    Grid points are scanned in a fixed pseudo-random order so the stored
    representatives of a class are spread over the grid rather than bunched in
    one corner.
    """
    cells = [(x, y) for x in range(grid + 1) for y in range(grid + 1)]
    random.Random(grid).shuffle(cells)
    out: dict = {}
    for key in sorted(classes):
        for rep in classes[key]:
            used = set(rep)
            for q in cells:
                if q in used:
                    continue
                if any(_orient(a, b, q) == 0 for a, b in combinations(rep, 2)):
                    continue
                pts = rep + [q]
                k = signature_key(pts)
                bucket = out.setdefault(k, [])
                if len(bucket) < REPS_PER_CLASS:
                    bucket.append(pts)
    return out


def _classes(n: int, grid: int) -> dict:
    seed = [(0, 0), (grid, 1), (1, grid)]
    classes = {signature_key(seed): [seed]}
    for _ in range(n - 3):
        classes = _extend(classes, grid)
    return classes


def enumerate_order_types(n: int, grid: int = BASE_GRID) -> list[OrderType]:
    """One representative per order type of n points (3 <= n <= 6).

    The search extends representatives point by point over the integer grid
    [0, grid]^2.  The result is accepted once two successive grid doublings
    find no new class; otherwise GridExhausted is raised.
    """
    if n not in KNOWN_COUNTS:
        raise ValueError("order types are enumerated for 3 <= n <= 6")
    base = _classes(n, grid)
    stable = 0
    g = grid
    for _ in range(MAX_DOUBLINGS):
        if stable == 2:
            break
        g *= 2
        bigger = _classes(n, g)
        new = set(bigger) - set(base)
        if not new:
            stable += 1
        else:
            for k in new:
                base[k] = bigger[k]
            stable = 0
    if stable < 2:
        raise GridExhausted(f"order types of {n} points still growing at grid {g}")
    out = []
    for key in sorted(base):
        rep = base[key][0]
        out.append(OrderType(tuple(point(x, y) for x, y in rep), _signature_map(rep)))
    return out


def enumerate_simple_polygons(points: Sequence[Point] | OrderType) -> list[Polygon]:
    """Every simple polygon on the point set, up to start vertex and direction."""
    if isinstance(points, OrderType):
        points = points.points
    pts = list(points)
    n = len(pts)
    seen = set()
    out = []
    for perm in permutations(range(1, n)):
        if perm[0] > perm[-1]:
            continue
        ring = [pts[0]] + [pts[i] for i in perm]
        if find_self_intersection(ring) is not None:
            continue
        P = Polygon(ring)
        if P.canonical not in seen:
            seen.add(P.canonical)
            out.append(P)
    out.sort(key=lambda P: P.canonical)
    return out


DEFLATED = "Deflated"
COMPATIBLE = "CompatibleDualExists"
NO_COMPATIBLE = "NoCompatibleDual"


@dataclass(frozen=True)
class Classification:
    verdict: str
    reflex: int
    crossings: int


def classify_small(P: Polygon) -> Classification:
    gp = is_general_position(P)
    if not gp:
        raise NotGeneralPosition(gp.witness)
    reflex = len(reflex_vertices(P))
    crossings = len(crossing_pairs(P))
    if is_deflated(P):
        return Classification(DEFLATED, reflex, crossings)
    kind = certify(P).kind
    return Classification(NO_COMPATIBLE if kind == NON_DEFLATABLE else COMPATIBLE, reflex, crossings)


def hexlab_report(sizes: Sequence[int] = (6,)) -> dict:
    """Classify every simple polygon on every order type of each size."""
    report: dict = {"sizes": []}
    for n in sizes:
        types = enumerate_order_types(n)
        section = {"n": n, "order_types": len(types), "polygons": 0, "by_reflex": {}, "by_verdict": {}, "entries": []}
        for tid, ot in enumerate(types):
            for P in enumerate_simple_polygons(ot):
                c = classify_small(P)
                section["polygons"] += 1
                group = section["by_reflex"].setdefault(str(c.reflex), {})
                group[c.verdict] = group.get(c.verdict, 0) + 1
                section["by_verdict"][c.verdict] = section["by_verdict"].get(c.verdict, 0) + 1
                section["entries"].append(
                    {
                        "order_type": tid,
                        "polygon": polygon_to_json(P),
                        "verdict": c.verdict,
                        "reflex": c.reflex,
                        "crossings": c.crossings,
                    }
                )
        section["by_reflex"] = dict(sorted(section["by_reflex"].items()))
        section["by_verdict"] = dict(sorted(section["by_verdict"].items()))
        report["sizes"].append(section)
    return report


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2)
