from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deflate_kit.errors import NotGeneralPosition
from deflate_kit.exact_geom import Turn, point
from deflate_kit.fixtures import load_fixture
from deflate_kit.smallpoly import (
    COMPATIBLE,
    DEFLATED,
    KNOWN_COUNTS,
    NO_COMPATIBLE,
    classify_small,
    enumerate_order_types,
    enumerate_simple_polygons,
    signature_key,
)

from conftest import oracle_simple, poly


def _o(p, q, r) -> int:
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def brute_order_type(pts) -> tuple:
    """Least orientation table over every relabelling and both handednesses."""
    n = len(pts)
    best = None
    for perm in permutations(range(n)):
        for s in (1, -1):
            key = tuple(s * _o(pts[perm[a]], pts[perm[b]], pts[perm[c]]) for a, b, c in combinations(range(n), 3))
            if best is None or key < best:
                best = key
    return best


def brute_polygon_count(pts) -> int:
    """Simple polygons on pts up to start and direction, by the fraction oracle."""
    n = len(pts)
    ring0 = [(Fraction(x), Fraction(y)) for x, y in pts]
    seen = set()
    for perm in permutations(range(1, n)):
        order = (0,) + perm
        ring = [ring0[i] for i in order]
        if not oracle_simple(ring):
            continue
        rots = [order[k:] + order[:k] for k in range(n)]
        rev = order[::-1]
        rots += [rev[k:] + rev[:k] for k in range(n)]
        seen.add(min(rots))
    return len(seen)


@pytest.fixture(scope="module")
def order_types():
    return {n: enumerate_order_types(n) for n in (3, 4, 5)}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_order_type_counts(order_types, n):
    assert len(order_types[n]) == KNOWN_COUNTS[n]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_order_types_distinct_by_brute_force(order_types, n):
    keys = [brute_order_type(ot.coords()) for ot in order_types[n]]
    assert len(set(keys)) == len(keys)


def test_random_five_point_sets_covered(order_types):
    known = {brute_order_type(ot.coords()) for ot in order_types[5]}
    rng = random.Random(5)
    hits = 0
    while hits < 60:
        pts = [(rng.randint(0, 40), rng.randint(0, 40)) for _ in range(5)]
        if any(_o(a, b, c) == 0 for a, b, c in combinations(pts, 3)):
            continue
        assert brute_order_type(pts) in known
        hits += 1


def test_signature_has_no_collinear_entries(order_types):
    for n, types in order_types.items():
        for ot in types:
            assert len(ot.signature) == n * (n - 1) * (n - 2)
            assert Turn.COLLINEAR not in ot.signature.values()


@given(st.lists(st.tuples(st.integers(0, 30), st.integers(0, 30)), min_size=4, max_size=6, unique=True), st.randoms())
@settings(max_examples=40, deadline=None)
def test_signature_key_invariant(pts, rnd):
    if any(_o(a, b, c) == 0 for a, b, c in combinations(pts, 3)):
        return
    shuffled = list(pts)
    rnd.shuffle(shuffled)
    mirrored = [(-x, y) for x, y in shuffled]
    assert signature_key(pts) == signature_key(shuffled) == signature_key(mirrored)


_pts = st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12)), min_size=5, max_size=5, unique=True)


@given(_pts, _pts)
@settings(max_examples=60, deadline=None)
def test_signature_key_separates_like_brute_force(a, b):
    if any(_o(p, q, r) == 0 for pts in (a, b) for p, q, r in combinations(pts, 3)):
        return
    assert (signature_key(a) == signature_key(b)) == (brute_order_type(a) == brute_order_type(b))


@pytest.mark.parametrize(
    "pts, count",
    [
        ([(0, 0), (4, 0), (4, 4), (0, 4)], 1),
        ([(0, 0), (6, 0), (3, 5), (3, 2)], 3),
    ],
)
def test_k4_polygon_counts(pts, count):
    assert len(enumerate_simple_polygons([point(*p) for p in pts])) == count
    assert brute_polygon_count(pts) == count


@pytest.mark.parametrize("n", [4, 5])
def test_polygon_counts_match_brute_force(order_types, n):
    for ot in order_types[n]:
        assert len(enumerate_simple_polygons(ot)) == brute_polygon_count(ot.coords())


def test_k6_random_sets_match_brute_force():
    rng = random.Random(6)
    for _ in range(4):
        while True:
            pts = [(rng.randint(0, 30), rng.randint(0, 30)) for _ in range(6)]
            if len(set(pts)) == 6 and all(_o(a, b, c) for a, b, c in combinations(pts, 3)):
                break
        assert len(enumerate_simple_polygons([point(*p) for p in pts])) == brute_polygon_count(pts)


def test_polygons_distinct_and_on_the_points(order_types):
    for ot in order_types[5]:
        polys = enumerate_simple_polygons(ot)
        assert len({P.canonical for P in polys}) == len(polys)
        for P in polys:
            assert set(P.vertices) == set(ot.points)


@pytest.mark.parametrize(
    "cs, verdict",
    [
        ([(0, 0), (4, 0), (1, 1), (0, 4)], DEFLATED),
        ([(0, 0), (4, 0), (5, 3), (1, 4)], COMPATIBLE),
        ([(0, 0), (3, 1), (1, 2)], DEFLATED),
    ],
)
def test_classify_examples(cs, verdict):
    assert classify_small(poly(*cs)).verdict == verdict


def test_classify_fig8():
    c = classify_small(load_fixture("fig8", verify=False).polygon())
    assert c.verdict == NO_COMPATIBLE
    assert c.crossings > 0


def test_classify_counts_reflex_and_crossings():
    c = classify_small(poly((0, 0), (4, 0), (5, 3), (1, 4)))
    assert (c.reflex, c.crossings) == (0, 1)


def test_classify_requires_general_position():
    with pytest.raises(NotGeneralPosition):
        classify_small(poly((0, 0), (4, 0), (2, 2), (4, 4), (0, 4)))


def test_enumerate_order_types_range():
    with pytest.raises(ValueError):
        enumerate_order_types(7)
