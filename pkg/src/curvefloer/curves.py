"""Oriented immersed closed polyline curves on a flat surface.

A curve is a cyclic list of exact rational points.  Interior points are
polyline corners; a passage through the glued boundary is recorded as a
consecutive pair (exit point on side s, entry point = its translate on the
partner side).  Consecutive points are joined by straight segments ("legs")
inside the polygon; the exit/entry pair itself contributes no leg.

Every predicate (transversality, signs, ordering) is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from .exactgeom import (
    Pt,
    antiparallel,
    ccw_between,
    cross,
    dist_sq,
    seg_contains,
    seg_intersect,
    sign,
    sub,
)
from .surface import FlatSurface, SurfaceError
from .words import Word, cyclic_reduce, invert


class CurveError(ValueError):
    pass


class TransversalityError(CurveError):
    pass


class TriplePointError(TransversalityError):
    pass


@dataclass(frozen=True, eq=False)
class Leg:
    index: int
    start: Pt
    end: Pt
    start_point_index: int
    end_point_index: int

    @property
    def direction(self) -> Pt:
        return sub(self.end, self.start)


@dataclass(frozen=True, order=True)
class CurvePos:
    """Position along a curve in geometric traversal order."""
    leg: int
    param: Fraction


@dataclass(frozen=True, eq=False)
class CrossingRecord:
    point: Pt
    pos_a: CurvePos
    pos_b: CurvePos
    sign: int  # sign of det(dir_a, dir_b) in geometric orientations


@dataclass(frozen=True, eq=False)
class CurveImmersion:
    surface: FlatSurface
    points: Tuple[Pt, ...]
    marked_index: int = 0
    reversed_flag: bool = False

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(tuple(Fraction(c) for c in p) for p in self.points))
        self._validate()

    # -- structure ---------------------------------------------------------

    @cached_property
    def _structure(self):
        """(legs, exit_indices, boundary_sides) computed once at validation."""
        s = self.surface
        pts = self.points
        n = len(pts)
        if n < 2:
            raise CurveError("a curve needs at least two points")
        if len(set(pts)) != n:
            raise CurveError("repeated polyline points")
        locs = []
        sides: List[Optional[int]] = []
        for p in pts:
            loc = s.locate(p)
            locs.append(loc)
            sides.append(s.side_containing(p) if loc == 0 else None)
        # an exit is a boundary point whose successor is its glued translate;
        # distinctness of points makes this classification unambiguous
        exit_indices = set()
        for i in range(n):
            j = (i + 1) % n
            if locs[i] == 0 and locs[j] == 0 and s.opposite_point(sides[i], pts[i]) == pts[j]:
                exit_indices.add(i)
        entry_indices = {(i + 1) % n for i in exit_indices}
        for i in range(n):
            if locs[i] == 0 and i not in exit_indices and i not in entry_indices:
                raise CurveError(f"boundary point {i} has no matching partner")
            if i in exit_indices and i in entry_indices:
                raise CurveError(f"boundary point {i} is glued on both sides")
        legs: List[Leg] = []
        for i in range(n):
            if i in exit_indices:
                continue
            j = (i + 1) % n
            a, b = pts[i], pts[j]
            for v in s.vertices:
                if seg_contains(a, b, v):
                    raise CurveError("a segment passes through the cone point")
            legs.append(Leg(len(legs), a, b, i, j))
        if not legs:
            raise CurveError("curve has no segments")
        # immersion: no backtracking at any corner (interior or glued)
        m = len(legs)
        for k in range(m):
            d1 = legs[k].direction
            d2 = legs[(k + 1) % m].direction
            if antiparallel(d1, d2):
                raise CurveError("backtracking corner (antiparallel directions)")
        return legs, exit_indices, sides

    @property
    def legs(self) -> List[Leg]:
        return self._structure[0]

    @property
    def exit_indices(self):
        return self._structure[1]

    @property
    def point_sides(self):
        return self._structure[2]

    def _validate(self):
        legs, exits, sides = self._structure
        mi = self.marked_index
        if not (0 <= mi < len(self.points)):
            raise CurveError("marked point index out of range")
        if sides[mi] is not None:
            raise CurveError("marked point must be an interior polyline point")
        # transverse self-intersections (raises on degeneracies)
        self_intersections(self)

    # -- derived data --------------------------------------------------------

    def reverse(self) -> "CurveImmersion":
        return replace(self, reversed_flag=not self.reversed_flag)

    def materialize_orientation(self) -> "CurveImmersion":
        """A curve traversing the same points in the flagged direction, unflagged."""
        if not self.reversed_flag:
            return self
        n = len(self.points)
        pts = tuple(reversed(self.points))
        return CurveImmersion(self.surface, pts, marked_index=n - 1 - self.marked_index)

    def leg_of_marked_point(self) -> int:
        """Index of the leg starting at the marked point (geometric order)."""
        for leg in self.legs:
            if leg.start_point_index == self.marked_index:
                return leg.index
        raise CurveError("marked point is not a leg start")  # pragma: no cover

    def exit_events(self) -> List[Tuple[CurvePos, int]]:
        """Side-pair crossings in geometric order: (position, exit side)."""
        events = []
        sides = self.point_sides
        for leg in self.legs:
            j = leg.end_point_index
            if sides[j] is not None:
                events.append((CurvePos(leg.index, Fraction(1)), sides[j]))
        return events


def extract_word(curve: CurveImmersion) -> Word:
    """Cyclic word of signed side-pair crossings, respecting orientation flag."""
    s = curve.surface
    letters = tuple(s.crossing_letter(side) for _, side in curve.exit_events())
    if curve.reversed_flag:
        letters = invert(letters)
    return letters


def homology_class(curve: CurveImmersion) -> Tuple[int, ...]:
    g = curve.surface.genus
    counts = [0] * (2 * g)
    for letter in extract_word(curve):
        counts[abs(letter) - 1] += 1 if letter > 0 else -1
    return tuple(counts)


def _reference_direction(dirs: Sequence[Pt]) -> Pt:
    candidates = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (3, 1),
                  (1, 3), (3, 2), (2, 3), (4, 1), (1, 4), (5, 2), (2, 5)]
    for c in candidates:
        ref = (Fraction(c[0]), Fraction(c[1]))
        if all(cross(ref, d) != 0 for d in dirs):
            return ref
    raise CurveError("could not choose a reference direction")  # pragma: no cover


def turning_number(dirs: Sequence[Pt]) -> int:
    """Exact turning number of a cyclic direction sequence with turns in (-pi, pi).

    Counted as signed crossings of a reference ray by the short-arc direction
    path; side gluings are translations so directions compare globally.
    """
    ref = _reference_direction(dirs)
    total = 0
    m = len(dirs)
    for k in range(m):
        d1, d2 = dirs[k], dirs[(k + 1) % m]
        turn = sign(cross(d1, d2))
        if turn > 0:
            if ccw_between(ref, d1, d2):
                total += 1
        elif turn < 0:
            if ccw_between(ref, d2, d1):
                total -= 1
        # parallel same-direction: no sweep
    return total


def winding_number(curve: CurveImmersion) -> int:
    """Turning number of the curve in the flat coordinates (the horizontal
    field is globally parallel away from the cone point)."""
    dirs = [leg.direction for leg in curve.legs]
    w = turning_number(dirs)
    return -w if curve.reversed_flag else w


def _gather_crossings(legs_a, legs_b, same_curve: bool, all_points) -> List[CrossingRecord]:
    records: List[CrossingRecord] = []
    la, lb = len(legs_a), len(legs_b)
    for i in range(la):
        for j in range(lb):
            if same_curve and j <= i:
                continue
            A = legs_a[i]
            B = legs_b[j]
            shared = same_curve and (
                A.end_point_index == B.start_point_index
                or B.end_point_index == A.start_point_index)
            res = seg_intersect(A.start, A.end, B.start, B.end)
            kind = res[0]
            if kind == "none":
                continue
            if kind == "overlap":
                raise TransversalityError(
                    f"overlapping segments (legs {i} and {j})")
            if kind == "touch":
                _, p, t, u = res
                if shared and (p == A.end and p == B.start or p == B.end and p == A.start):
                    continue
                raise TransversalityError(
                    f"non-transverse contact at {p} (legs {i} and {j})")
            _, p, t, u = res
            if p in all_points:
                raise TransversalityError(
                    f"crossing at a polyline vertex {p} (legs {i} and {j})")
            eps = sign(cross(A.direction, B.direction))
            records.append(CrossingRecord(p, CurvePos(i, t), CurvePos(j, u), eps))
    by_point = {}
    for r in records:
        if r.point in by_point:
            raise TriplePointError(f"three segments through {r.point}")
        by_point[r.point] = r
    records.sort(key=lambda r: r.pos_a)
    return records


def self_intersections(curve: CurveImmersion) -> List[CrossingRecord]:
    """Transverse self double points; pos_a is the earlier branch."""
    legs = curve.legs
    pts = set(curve.points)
    return _gather_crossings(legs, legs, True, pts)


def intersections(a: CurveImmersion, b: CurveImmersion) -> List[CrossingRecord]:
    """Transverse crossings of two distinct curves, ordered along a.

    Signs are taken in the geometric orientations of (a, b); callers flip the
    sign when an orientation flag is set.
    """
    if a is b:
        raise CurveError("use self_intersections for a single curve")
    if a.surface is not b.surface and a.surface != b.surface:
        raise CurveError("curves live on different surfaces")
    pts = set(a.points) | set(b.points)
    return _gather_crossings(a.legs, b.legs, False, pts)


def algebraic_intersection(a: CurveImmersion, b: CurveImmersion) -> int:
    """Signed count of crossings, respecting orientation flags."""
    total = sum(r.sign for r in intersections(a, b))
    if a.reversed_flag:
        total = -total
    if b.reversed_flag:
        total = -total
    return total
