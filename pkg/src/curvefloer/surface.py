"""Flat model of a closed oriented surface of genus g >= 2.

The surface is a centrally symmetric convex 4g-gon with rational vertices;
side j is glued to side j + 2g by a translation.  All 4g polygon vertices are
identified to a single cone point of angle (4g - 2)*pi, which also serves as
the puncture z and as the singularity of the horizontal direction field.

Rational vertex profile: regular polygons have irrational vertices, so we
place vertex k (0 <= k < 2g) on the unit circle at the rational point
((1 - t^2)/(1 + t^2), 2t/(1 + t^2)) with t = k/(2g - k), and take the
remaining 2g vertices as their antipodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .exactgeom import (
    Pt,
    add,
    cross,
    neg,
    orient,
    point_in_convex,
    seg_contains,
    sub,
)


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class FlatSurface:
    genus: int
    vertices: Tuple[Pt, ...]  # 4g points, counterclockwise, centrally symmetric

    def __post_init__(self):
        g = self.genus
        if g < 2:
            raise SurfaceError("genus must be at least 2")
        vs = self.vertices
        if len(vs) != 4 * g:
            raise SurfaceError(f"expected {4 * g} vertices, got {len(vs)}")
        n = len(vs)
        for k in range(n):
            if vs[(k + 2 * g) % n] != neg(vs[k]):
                raise SurfaceError("polygon is not centrally symmetric")
        for k in range(n):
            a, b, c = vs[k], vs[(k + 1) % n], vs[(k + 2) % n]
            if orient(a, b, c) <= 0:
                raise SurfaceError("polygon is not strictly convex counterclockwise")

    @property
    def num_sides(self) -> int:
        return 4 * self.genus

    def side(self, j: int) -> Tuple[Pt, Pt]:
        n = self.num_sides
        return self.vertices[j % n], self.vertices[(j + 1) % n]

    def paired_side(self, j: int) -> int:
        return (j + 2 * self.genus) % self.num_sides

    def pair_index(self, j: int) -> int:
        """Index (0 .. 2g-1) of the glued side pair containing side j."""
        return j % (2 * self.genus)

    def side_translation(self, j: int) -> Pt:
        """Translation carrying side j onto its partner (reversing endpoints)."""
        a, b = self.side(j)
        return neg(add(a, b))

    def opposite_point(self, j: int, p: Pt) -> Pt:
        """Image of a point on side j under the gluing translation."""
        return add(p, self.side_translation(j))

    def side_containing(self, p: Pt) -> Optional[int]:
        """Index of the unique side whose interior contains p, or None."""
        for j in range(self.num_sides):
            a, b = self.side(j)
            if p == a or p == b:
                raise SurfaceError("point lies at a polygon vertex")
            if seg_contains(a, b, p):
                return j
        return None

    def locate(self, p: Pt) -> int:
        """1 for interior, 0 for boundary (side interior); raises on vertex/outside."""
        loc = point_in_convex(list(self.vertices), p)
        if loc < 0:
            raise SurfaceError(f"point {p} lies outside the polygon")
        if loc == 0 and self.side_containing(p) is None:
            raise SurfaceError("point lies at a polygon vertex")
        return loc

    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus

    def crossing_letter(self, exit_side: int) -> int:
        """Signed generator letter for exiting the polygon through exit_side.

        Letters are +-(pair + 1).  The sign convention: the glued edge of pair
        j is oriented along side j, and a crossing counts positively when the
        curve passes from the right of that edge to its left.  Exiting through
        side j (j < 2g) is a negative crossing; through side j + 2g, positive.
        """
        pair = self.pair_index(exit_side)
        return (pair + 1) if exit_side >= 2 * self.genus else -(pair + 1)

    def relator(self) -> Tuple[int, ...]:
        """Crossing word of a small counterclockwise loop around the cone point.

        This is the defining relator of the surface group in the side-crossing
        generators: pi_1 is free on the 2g crossing letters away from the cone
        point, and filling the cone point imposes exactly this word.
        """
        n = self.num_sides
        g = self.genus
        letters = []
        k = 0
        for _ in range(n):
            exit_side = (k - 1) % n
            letters.append(self.crossing_letter(exit_side))
            k = (k + 2 * g - 1) % n
        if k != 0:
            raise SurfaceError("link trace failed to close")
        return tuple(letters)


def _circle_point(t: Fraction) -> Pt:
    denom = 1 + t * t
    return ((1 - t * t) / denom, 2 * t / denom)


def build_standard_surface(genus: int) -> FlatSurface:
    """The canonical rational centrally symmetric 4g-gon for a given genus."""
    if genus < 2:
        raise SurfaceError("genus must be at least 2")
    g = genus
    upper = [_circle_point(Fraction(k, 2 * g - k)) for k in range(2 * g)]
    vertices = tuple(upper + [neg(v) for v in upper])
    return FlatSurface(genus=genus, vertices=vertices)
