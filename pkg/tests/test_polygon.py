from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deflate_kit.errors import (
    CollinearTriple,
    DuplicateVertex,
    MalformedDocument,
    NotSimple,
    TooFewVertices,
)
from deflate_kit.exact_geom import Turn, orient, point
from deflate_kit.polygon import (
    Polygon,
    check_no_collinear_triples,
    dump_polygon,
    parse_polygon,
    reflex_vertices,
    signed_area2,
)
from deflate_kit.visibility import is_general_position

from conftest import coords, oracle_simple, point_in_closed, poly

SQUARE = [(0, 0), (4, 0), (4, 4), (0, 4)]


def doc(cs) -> str:
    return json.dumps({"vertices": [[str(x), str(y)] for x, y in cs]})


def test_parse_square_keeps_ccw():
    P = parse_polygon(doc(SQUARE))
    assert P.n == 4
    assert P.vertices == tuple(point(*c) for c in SQUARE)


def test_parse_clockwise_square_is_reversed():
    P = parse_polygon(doc(SQUARE[::-1]))
    assert P == parse_polygon(doc(SQUARE))
    assert signed_area2(P.vertices) > 0


def test_bowtie_not_simple():
    with pytest.raises(NotSimple) as info:
        parse_polygon(doc([(0, 0), (2, 2), (2, 0), (0, 2)]))
    assert set(info.value.edges) == {0, 2}


@pytest.mark.parametrize(
    "document, error",
    [
        ('{"vertices": [["0","0"],["1","0"]]}', TooFewVertices),
        ('{"vertices": [["0","0"],["1","0"],["0","0"],["0","1"]]}', DuplicateVertex),
        ('{"vertices": [[0,0],[1,0],[0,1]]}', MalformedDocument),
        ('{"points": []}', MalformedDocument),
        ("not json", MalformedDocument),
        ('{"vertices": [["0.5","0"],["1","0"],["0","1"]]}', MalformedDocument),
    ],
)
def test_parse_errors(document, error):
    with pytest.raises(error):
        parse_polygon(document)


@pytest.mark.parametrize(
    "cs, want",
    [
        (SQUARE, True),
        ([(0, 0), (4, 0), (2, 2), (4, 4), (0, 4)], False),
        ([(0, 0), (3, 1), (1, 2)], True),
    ],
)
def test_general_position_examples(cs, want):
    assert bool(is_general_position(poly(*cs))) is want


def test_general_position_witness_grazes_vertex():
    verdict = is_general_position(poly((0, 0), (4, 0), (2, 2), (4, 4), (0, 4)))
    w = verdict.witness
    assert {w.u, w.v} == {0, 3}
    assert w.point == point(2, 2)


@pytest.mark.parametrize(
    "cs, want",
    [
        (SQUARE, set()),
        ([(0, 0), (4, 0), (1, 1), (0, 4)], {2}),
        ([(0, 0), (4, 0), (2, 1), (4, 4), (0, 4), (2, 2)], {2, 5}),
    ],
)
def test_reflex_examples(cs, want):
    assert set(reflex_vertices(poly(*cs))) == want


def _reflex_oracle(P: Polygon) -> set[int]:
    """A vertex is reflex iff a point pulled from it towards the midpoint of its
    neighbours, by a tiny exact step, lies outside the polygon."""
    ring = coords(P)
    n = P.n
    out = set()
    for i in range(n):
        a, v, b = ring[i - 1], ring[i], ring[(i + 1) % n]
        # the midpoint of a-b, pulled very close to v, is inside iff v is convex
        m = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        eps = Fraction(1, 10**6)
        q = (v[0] + (m[0] - v[0]) * eps, v[1] + (m[1] - v[1]) * eps)
        if not point_in_closed(ring, q):
            out.add(i)
    return out


def test_reflex_matches_probe_oracle(corpus):
    for P in corpus:
        assert set(reflex_vertices(P)) == _reflex_oracle(P)


def test_collinear_triple_rejected():
    with pytest.raises(CollinearTriple):
        check_no_collinear_triples(poly((0, 0), (2, 0), (4, 0), (2, 3)))
    with pytest.raises(CollinearTriple):
        reflex_vertices(poly((0, 0), (2, 0), (4, 0), (2, 3)))


def test_rotation_equality_and_hash():
    P = poly(*SQUARE)
    for k in range(4):
        Q = P.rotated(k)
        assert Q == P and hash(Q) == hash(P)


def test_reversal_negates_area():
    P = poly((0, 0), (5, 0), (2, 1), (3, 4))
    assert signed_area2(P.vertices) > 0
    assert signed_area2(tuple(reversed(P.vertices))) == -signed_area2(P.vertices)


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_random_rings_simplicity_matches_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    cs = [(rng.randint(0, 6), rng.randint(0, 6)) for _ in range(n)]
    if len(set(cs)) < n:
        return
    ring = [(Fraction(x), Fraction(y)) for x, y in cs]
    try:
        poly(*cs)
        built = True
    except NotSimple:
        built = False
    area = sum(ring[i][0] * ring[(i + 1) % n][1] - ring[(i + 1) % n][0] * ring[i][1] for i in range(n))
    assert built == (oracle_simple(ring) and area != 0)


def test_json_round_trip(corpus):
    for P in corpus:
        assert parse_polygon(dump_polygon(P)) == P
        assert parse_polygon(dump_polygon(P)).vertices == P.vertices


def test_stored_orientation_positive(corpus):
    for P in corpus:
        assert signed_area2(P.vertices) > 0
        n = P.n
        turns = [orient(P[i - 1], P[i], P[i + 1]) for i in range(n)]
        assert turns.count(Turn.LEFT) >= 3
