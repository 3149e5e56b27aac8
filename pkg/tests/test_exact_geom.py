from __future__ import annotations

from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from deflate_kit.exact_geom import (
    Mode,
    Point,
    ScalarFormatError,
    Turn,
    format_scalar,
    orient,
    parse_scalar,
    point,
    proper_crossing,
    scalar,
    segments_intersect,
)

from conftest import param_intersection

coord = st.integers(-6, 6)
pts = st.builds(point, coord, coord)


@pytest.mark.parametrize(
    "p, q, r, want",
    [
        ((0, 0), (1, 0), (0, 1), Turn.LEFT),
        ((0, 0), (0, 1), (1, 0), Turn.RIGHT),
        ((0, 0), (1, 1), (2, 2), Turn.COLLINEAR),
    ],
)
def test_orient_examples(p, q, r, want):
    assert orient(point(*p), point(*q), point(*r)) is want


@pytest.mark.parametrize(
    "s1, s2, mode, want",
    [
        (((0, 0), (2, 2)), ((0, 2), (2, 0)), Mode.PROPER, True),
        (((0, 0), (1, 0)), ((1, 0), (2, 0)), Mode.PROPER, False),
        (((0, 0), (1, 0)), ((1, 0), (2, 0)), Mode.ANY, True),
        (((0, 0), (1, 0)), ((0, 1), (1, 1)), Mode.ANY, False),
        (((0, 0), (2, 0)), ((1, 0), (3, 0)), Mode.ANY, True),
        (((0, 0), (2, 0)), ((1, 0), (3, 0)), Mode.PROPER, False),
    ],
)
def test_segments_intersect_examples(s1, s2, mode, want):
    a = tuple(point(*c) for c in s1)
    b = tuple(point(*c) for c in s2)
    assert segments_intersect(a, b, mode) is want


@pytest.mark.parametrize("text, value", [("7", mpq(7)), ("-3/2", mpq(-3, 2)), ("+4/6", mpq(2, 3)), ("0", mpq(0))])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["1.5", "3/0", "1/-2", "", "a", "1e3", "2/ 3"])
def test_parse_scalar_rejects(text):
    with pytest.raises(ScalarFormatError):
        parse_scalar(text)


def test_scalar_refuses_float():
    with pytest.raises(TypeError):
        scalar(0.5)


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_scalar_text_round_trip(n, d):
    v = mpq(n, d)
    assert parse_scalar(format_scalar(v)) == v
    assert v.denominator > 0


@given(pts, pts, pts)
def test_orient_antisymmetric(p, q, r):
    t = orient(p, q, r)
    assert orient(q, p, r) == -t
    assert orient(p, r, q) == -t
    assert orient(r, q, p) == -t
    assert orient(q, r, p) == t


@given(pts, pts, pts, pts, st.integers(1, 9), st.integers(1, 9))
def test_orient_translation_scaling_invariant(p, q, r, shift, num, den):
    k = mpq(num, den)

    def move(x: Point) -> Point:
        return Point(x.x * k + shift.x, x.y * k + shift.y)

    assert orient(move(p), move(q), move(r)) == orient(p, q, r)


def _distinct_segment():
    return st.tuples(pts, pts).filter(lambda s: s[0] != s[1])


@given(_distinct_segment(), _distinct_segment())
@settings(max_examples=400)
def test_segments_intersect_matches_parametric_oracle(s1, s2):
    f = [tuple(Fraction(int(c.numerator), int(c.denominator)) for c in (p.x, p.y)) for p in (*s1, *s2)]
    hit = param_intersection(f[0], f[1], f[2], f[3])
    want_any = hit is not None
    want_proper = hit is not None and hit[0] == "point" and 0 < hit[1] < 1 and 0 < hit[2] < 1
    assert segments_intersect(s1, s2, Mode.ANY) is want_any
    assert segments_intersect(s1, s2, Mode.PROPER) is want_proper
    assert proper_crossing(*s1, *s2) is want_proper


@given(_distinct_segment(), _distinct_segment(), st.sampled_from(list(Mode)))
def test_segments_intersect_symmetric(s1, s2, mode):
    assert segments_intersect(s1, s2, mode) == segments_intersect(s2, s1, mode)
