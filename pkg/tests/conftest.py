"""Shared helpers and brute-force oracles.

The oracles here work on ``fractions.Fraction`` and share no code with the
package, so they can cross-check its predicates independently.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from deflate_kit.exact_geom import point
from deflate_kit.polygon import Polygon
from deflate_kit.realize_deform import random_deflated

SEED = 20261017


def poly(*coords, normalize=True) -> Polygon:
    return Polygon([point(x, y) for x, y in coords], normalize=normalize)


def frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def coords(P: Polygon) -> list[tuple[Fraction, Fraction]]:
    return [(frac(p.x), frac(p.y)) for p in P.vertices]


# --- oracles -----------------------------------------------------------------


def cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def param_intersection(p, q, a, b):
    """Parametric solve of p + s(q - p) = a + t(b - a).

    Returns ("point", s, t), ("overlap", lo, hi) in the s-parameter, or None.
    """
    dx, dy = q[0] - p[0], q[1] - p[1]
    ex, ey = b[0] - a[0], b[1] - a[1]
    den = dx * ey - dy * ex
    if den != 0:
        s = ((a[0] - p[0]) * ey - (a[1] - p[1]) * ex) / den
        t = ((a[0] - p[0]) * dy - (a[1] - p[1]) * dx) / den
        if 0 <= s <= 1 and 0 <= t <= 1:
            return ("point", s, t)
        return None
    if cross(p, q, a) != 0:
        return None
    # collinear: project on the dominant axis
    k = 0 if dx != 0 else 1
    base, span = p[k], q[k] - p[k]
    sa, sb = (a[k] - base) / span, (b[k] - base) / span
    lo, hi = max(min(sa, sb), 0), min(max(sa, sb), 1)
    if lo > hi:
        return None
    return ("overlap", lo, hi)


def point_in_closed(ring, q) -> bool:
    """Closed point-in-polygon: on-boundary counts, else even-odd ray cast."""
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        if cross(a, b, q) == 0 and min(a[0], b[0]) <= q[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= q[1] <= max(a[1], b[1]):
            return True
    inside = False
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        if (a[1] > q[1]) != (b[1] > q[1]):
            x = a[0] + (q[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x > q[0]:
                inside = not inside
    return inside


def segment_in_closed(ring, p, q) -> bool:
    """Split pq at every boundary contact and test each piece's midpoint."""
    cuts = {Fraction(0), Fraction(1)}
    n = len(ring)
    for i in range(n):
        hit = param_intersection(p, q, ring[i], ring[(i + 1) % n])
        if hit is None:
            continue
        if hit[0] == "point":
            cuts.add(hit[1])
        else:
            cuts.update(hit[1:])
    cuts = sorted(cuts)
    pts = [(p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])) for s in cuts]
    if not all(point_in_closed(ring, x) for x in pts):
        return False
    for s0, s1 in zip(cuts, cuts[1:]):
        m = (s0 + s1) / 2
        if not point_in_closed(ring, (p[0] + m * (q[0] - p[0]), p[1] + m * (q[1] - p[1]))):
            return False
    return True


def oracle_vv(P: Polygon) -> set[tuple[int, int]]:
    ring = coords(P)
    return {(u, v) for u, v in combinations(range(P.n), 2) if segment_in_closed(ring, ring[u], ring[v])}


def oracle_sampled_ve(P: Polygon, u: int, k: int, samples: int = 64) -> bool:
    """Does u see some sampled interior point of edge k?"""
    ring = coords(P)
    n = P.n
    if u in (k, (k + 1) % n):
        return True
    a, b = ring[k], ring[(k + 1) % n]
    for i in range(1, samples):
        s = Fraction(i, samples)
        x = (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]))
        if segment_in_closed(ring, ring[u], x):
            return True
    return False


def segments_cross_properly(p, q, a, b) -> bool:
    hit = param_intersection(p, q, a, b)
    return hit is not None and hit[0] == "point" and 0 < hit[1] < 1 and 0 < hit[2] < 1


def oracle_simple(ring) -> bool:
    n = len(ring)
    for i in range(n):
        for j in range(i + 1, n):
            hit = param_intersection(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n])
            if hit is None:
                continue
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if not adjacent:
                return False
            if hit[0] == "overlap":
                if hit[1] != hit[2]:
                    return False
            s = hit[1]
            shared_end = (j == i + 1 and s == 1) or (i == 0 and j == n - 1 and s == 0)
            if not shared_end:
                return False
    return True


# --- acceptance summary ----------------------------------------------------

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    _ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


# --- corpora -------------------------------------------------------------------


def deflated_corpus(count: int, seed: int = SEED, lo: int = 3, hi: int = 8) -> list[Polygon]:
    """Deflated polygons with lo..hi triangles, from realize on random duals."""
    rng = random.Random(seed)
    return [random_deflated(rng.randint(lo, hi), rng) for _ in range(count)]


@pytest.fixture(scope="session")
def corpus() -> list[Polygon]:
    return deflated_corpus(40)
