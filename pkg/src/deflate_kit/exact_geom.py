"""Exact rational scalars, points and the orientation/intersection predicates.

Every coordinate in the package is a ``gmpy2.mpq``; nothing here ever touches
a float.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Union

from gmpy2 import mpq

Scalar = type(mpq())
ScalarLike = Union[int, str, "mpq"]

_SCALAR_RE = re.compile(r"^([+-]?)(\d+)(?:/(\d+))?$")


class ScalarFormatError(ValueError):
    pass


def scalar(value) -> Scalar:
    """Coerce ``value`` into an exact rational.

    Strings must follow the document grammar: optional sign, decimal integer,
    optionally ``/`` and a positive decimal integer.  Floats are refused.
    """
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, str):
        return parse_scalar(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def parse_scalar(text: str) -> Scalar:
    m = _SCALAR_RE.match(text)
    if m is None:
        raise ScalarFormatError(f"bad scalar {text!r}")
    sign, num, den = m.groups()
    d = int(den) if den is not None else 1
    if d == 0:
        raise ScalarFormatError(f"zero denominator in {text!r}")
    n = int(num)
    return mpq(-n if sign == "-" else n, d)


def format_scalar(value: Scalar) -> str:
    value = scalar(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, slots=True)
class Point:
    x: Scalar
    y: Scalar

    @classmethod
    def of(cls, x: ScalarLike, y: ScalarLike) -> "Point":
        return cls(scalar(x), scalar(y))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, k) -> "Point":
        return Point(self.x * k, self.y * k)

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def cross(self, other: "Point") -> Scalar:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "Point") -> Scalar:
        return self.x * other.x + self.y * other.y

    def norm2(self) -> Scalar:
        return self.x * self.x + self.y * self.y

    def norm_inf(self) -> Scalar:
        return max(abs(self.x), abs(self.y))

    def as_text(self) -> list[str]:
        return [format_scalar(self.x), format_scalar(self.y)]

    def __lt__(self, other: "Point") -> bool:
        return (self.x, self.y) < (other.x, other.y)

    def __repr__(self) -> str:
        return f"Point({format_scalar(self.x)}, {format_scalar(self.y)})"


def point(x: ScalarLike, y: ScalarLike) -> Point:
    return Point(scalar(x), scalar(y))


def points(coords: Iterable) -> list[Point]:
    return [point(x, y) for x, y in coords]


def midpoint(p: Point, q: Point) -> Point:
    half = mpq(1, 2)
    return Point((p.x + q.x) * half, (p.y + q.y) * half)


def lerp(p: Point, q: Point, t) -> Point:
    return Point(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t)


class Turn(enum.IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


def det(p: Point, q: Point, r: Point) -> Scalar:
    """Twice the signed area of (p, q, r)."""
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def orient(p: Point, q: Point, r: Point) -> Turn:
    d = det(p, q, r)
    if d > 0:
        return Turn.LEFT
    if d < 0:
        return Turn.RIGHT
    return Turn.COLLINEAR


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies on the closed segment ab."""
    if det(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def strictly_inside_segment(p: Point, a: Point, b: Point) -> bool:
    return p != a and p != b and on_segment(p, a, b)


class Mode(enum.Enum):
    PROPER = "proper"
    ANY = "any"


def segments_intersect(s1: tuple[Point, Point], s2: tuple[Point, Point], mode: Mode = Mode.ANY) -> bool:
    a, b = s1
    c, d = s2
    if a == b or c == d:
        raise ValueError("degenerate segment")
    d1 = det(a, b, c)
    d2 = det(a, b, d)
    d3 = det(c, d, a)
    d4 = det(c, d, b)
    proper = ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0))
    if mode is Mode.PROPER:
        return proper
    if proper:
        return True
    return on_segment(c, a, b) or on_segment(d, a, b) or on_segment(a, c, d) or on_segment(b, c, d)


def proper_crossing(a: Point, b: Point, c: Point, d: Point) -> bool:
    d1 = det(a, b, c)
    d2 = det(a, b, d)
    if (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0) or d1 == 0 or d2 == 0:
        return False
    d3 = det(c, d, a)
    d4 = det(c, d, b)
    return (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)


def open_segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Do the open segments ab and cd share a point?

    Either a transversal crossing or a collinear overlap of positive length.
    Touching at an endpoint of either segment does not count.
    """
    if det(a, b, c) == 0 and det(a, b, d) == 0:
        # collinear: compare projections on the dominant axis
        if a.x != b.x:
            lo1, hi1 = sorted((a.x, b.x))
            lo2, hi2 = sorted((c.x, d.x))
        else:
            lo1, hi1 = sorted((a.y, b.y))
            lo2, hi2 = sorted((c.y, d.y))
        return max(lo1, lo2) < min(hi1, hi2)
    return proper_crossing(a, b, c, d)


def line_intersection(a: Point, b: Point, c: Point, d: Point) -> Point | None:
    """Intersection of the lines ab and cd, or None when parallel."""
    r = b - a
    s = d - c
    denom = r.cross(s)
    if denom == 0:
        return None
    t = (c - a).cross(s) / denom
    return Point(a.x + r.x * t, a.y + r.y * t)


def segment_param(p: Point, a: Point, b: Point) -> Scalar:
    """Parameter of a point p known to lie on line ab (0 at a, 1 at b)."""
    r = b - a
    if r.x != 0:
        return (p.x - a.x) / r.x
    return (p.y - a.y) / r.y


def strictly_between_ccw(start: Point, v: Point, end: Point) -> bool:
    """Is direction v strictly inside the CCW sweep from start to end?

    The sweep may exceed pi.  A zero-length sweep (start parallel to end, same
    sense) is treated as empty.
    """
    c_se = start.cross(end)
    c_sv = start.cross(v)
    c_ve = v.cross(end)
    if c_se > 0 or (c_se == 0 and start.dot(end) < 0):
        if c_se == 0:
            return c_sv > 0
        return c_sv > 0 and c_ve > 0
    if c_se == 0:
        return False
    # reflex sweep: v strictly inside unless it is in the closed complementary cone
    in_complement = (c_sv <= 0 and c_ve <= 0) and not (c_sv == 0 and start.dot(v) < 0) \
        and not (c_ve == 0 and v.dot(end) < 0)
    return not in_complement
