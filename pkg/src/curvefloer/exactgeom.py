"""Exact rational plane geometry primitives.

All coordinates are ``fractions.Fraction``; every predicate in this module is
decided by exact sign computations.  No floating point is used anywhere.
Points are plain ``(Fraction, Fraction)`` tuples for speed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Tuple

Pt = Tuple[Fraction, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def pt(x, y) -> Pt:
    return (Fraction(x), Fraction(y))


def add(a: Pt, b: Pt) -> Pt:
    return (a[0] + b[0], a[1] + b[1])


def sub(a: Pt, b: Pt) -> Pt:
    return (a[0] - b[0], a[1] - b[1])


def neg(a: Pt) -> Pt:
    return (-a[0], -a[1])


def scale(a: Pt, s) -> Pt:
    s = Fraction(s)
    return (a[0] * s, a[1] * s)


def lerp(a: Pt, b: Pt, t) -> Pt:
    t = Fraction(t)
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def dot(a: Pt, b: Pt) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def cross(a: Pt, b: Pt) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def orient(a: Pt, b: Pt, c: Pt) -> int:
    """Sign of the signed area of triangle (a, b, c): +1 for counterclockwise."""
    return sign(cross(sub(b, a), sub(c, a)))


def collinear_dirs(d1: Pt, d2: Pt) -> bool:
    return cross(d1, d2) == 0


def antiparallel(d1: Pt, d2: Pt) -> bool:
    """True when d1 and d2 point in exactly opposite directions."""
    return cross(d1, d2) == 0 and dot(d1, d2) < 0


def norm_sq(a: Pt) -> Fraction:
    return a[0] * a[0] + a[1] * a[1]


def dist_sq(a: Pt, b: Pt) -> Fraction:
    return norm_sq(sub(a, b))


def perp_ccw(d: Pt) -> Pt:
    """Rotate d by +90 degrees (left normal of a direction)."""
    return (-d[1], d[0])


def angular_key(d: Pt):
    """Sort key ordering direction vectors counterclockwise starting at +x axis.

    Returns a tuple usable with ``functools.cmp_to_key``-free sorting: the
    half-plane index first (0 for angles in [0, pi), 1 for [pi, 2pi)), then
    comparison within a half-plane is by cross product, encoded via slope.
    """
    x, y = d
    if x == 0 and y == 0:
        raise ValueError("zero direction")
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    # within a half-plane the cotangent x/y decreases counterclockwise for
    # y != 0; handle the axis start of each half-plane explicitly
    if half == 0:
        if y == 0:
            return (0, 0, Fraction(0))
        return (0, 1, Fraction(-x, y))
    else:
        if y == 0:
            return (1, 0, Fraction(0))
        return (1, 1, Fraction(-x, y))


def ccw_between(d: Pt, a: Pt, b: Pt) -> bool:
    """True when direction d lies strictly inside the ccw sweep from a to b.

    The sweep angle from a to b is taken in (0, 2*pi).  Directions equal to a
    or b do not count as inside.
    """
    ab = cross(a, b)
    if ab > 0:
        # convex sweep
        return cross(a, d) > 0 and cross(d, b) > 0
    if ab < 0:
        # reflex sweep: inside iff not in the closed convex sweep from b to a
        return not (cross(b, d) >= 0 and cross(d, a) >= 0)
    # a, b collinear
    if dot(a, b) < 0:
        # sweep of exactly pi
        return cross(a, d) > 0
    # a, b equal directions: empty open sweep
    return False


def seg_contains(a: Pt, b: Pt, p: Pt, closed: bool = True) -> bool:
    """Exact test whether p lies on segment [a, b]."""
    if cross(sub(b, a), sub(p, a)) != 0:
        return False
    t = param_on_segment(a, b, p)
    if t is None:
        return False
    if closed:
        return 0 <= t <= 1
    return 0 < t < 1


def param_on_segment(a: Pt, b: Pt, p: Pt) -> Optional[Fraction]:
    """Parameter t with p = a + t*(b-a), assuming p is on the line through a, b."""
    d = sub(b, a)
    if d[0] != 0:
        return (p[0] - a[0]) / d[0]
    if d[1] != 0:
        return (p[1] - a[1]) / d[1]
    return None


def seg_intersect(a: Pt, b: Pt, c: Pt, d: Pt):
    """Intersection of segments [a,b] and [c,d].

    Returns one of:
      ("none",)
      ("proper", point, t, u)     transverse crossing interior to both
      ("touch", point, t, u)      single common point involving an endpoint
      ("overlap",)                collinear segments sharing more than a point
    t and u are exact parameters along [a,b] and [c,d].
    """
    r = sub(b, a)
    s = sub(d, c)
    denom = cross(r, s)
    qp = sub(c, a)
    if denom == 0:
        if cross(qp, r) != 0:
            return ("none",)
        # collinear: project onto r
        rr = dot(r, r)
        t0 = dot(qp, r) / rr
        t1 = t0 + dot(s, r) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return ("none",)
        if hi == 0:
            u = ZERO if t0 == 0 else ONE
            return ("touch", a, ZERO, u)
        if lo == 1:
            u = ZERO if t0 == 1 else ONE
            return ("touch", b, ONE, u)
        return ("overlap",)
    t = cross(qp, s) / denom
    u = cross(qp, r) / denom
    if t < 0 or t > 1 or u < 0 or u > 1:
        return ("none",)
    p = lerp(a, b, t)
    if 0 < t < 1 and 0 < u < 1:
        return ("proper", p, t, u)
    return ("touch", p, t, u)


def line_intersect(p1: Pt, d1: Pt, p2: Pt, d2: Pt) -> Optional[Pt]:
    """Intersection point of two lines given by point+direction; None if parallel."""
    denom = cross(d1, d2)
    if denom == 0:
        return None
    t = cross(sub(p2, p1), d2) / denom
    return add(p1, scale(d1, t))


def polygon_area2(points: Iterable[Pt]) -> Fraction:
    """Twice the signed area of a polygon (positive for counterclockwise)."""
    pts = list(points)
    total = Fraction(0)
    n = len(pts)
    for i in range(n):
        total += cross(pts[i], pts[(i + 1) % n])
    return total


def point_in_convex(polygon: list, p: Pt) -> int:
    """Location of p in a ccw convex polygon: 1 inside, 0 on boundary, -1 outside."""
    n = len(polygon)
    on_edge = False
    for i in range(n):
        o = orient(polygon[i], polygon[(i + 1) % n], p)
        if o < 0:
            return -1
        if o == 0:
            on_edge = True
    return 0 if on_edge else 1


def fraction_str(x: Fraction) -> str:
    """Serialize a rational as a decimal-free string "p/q" (or "p" for integers)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        if "." in s:
            raise ValueError(f"decimal notation not allowed for exact rationals: {s!r}")
        return Fraction(s)
    raise ValueError(f"cannot parse rational from {s!r}")
