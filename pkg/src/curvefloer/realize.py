"""Deterministic geometric realization of crossing words, and special loops."""

from __future__ import annotations

import hashlib
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .curves import CurveError, CurveImmersion, extract_word
from .exactgeom import Pt, lerp
from .surface import FlatSurface
from .words import Word, cyclic_reduce, cyclic_words_equal

MAX_ATTEMPTS = 64


class RealizationError(CurveError):
    pass


def _mix(*vals: int) -> int:
    data = ("|".join(str(v) for v in vals)).encode()
    return int.from_bytes(hashlib.sha256(data).digest()[:8], "big")


def _param(seed: int, i: int, attempt: int) -> Fraction:
    h = _mix(seed, i, attempt)
    return Fraction(3 + h % 1018, 1024)


def exit_side_for_letter(surface: FlatSurface, letter: int) -> int:
    """Side to exit through so the crossing reads as the given letter."""
    pair = abs(letter) - 1
    if not 0 <= pair < 2 * surface.genus:
        raise RealizationError(f"letter {letter} out of range for genus {surface.genus}")
    return pair + 2 * surface.genus if letter > 0 else pair


def realize_word(surface: FlatSurface, word: Sequence[int], seed: int = 0) -> CurveImmersion:
    """Geometric representative of a nonempty cyclically reduced crossing word.

    One boundary crossing per letter, placed at side parameters drawn
    deterministically from the seed; consecutive crossings are joined by
    chords.  Retries with perturbed parameters until the polyline is a valid
    immersion with only transverse double points.
    """
    w = tuple(word)
    if not w:
        raise RealizationError("empty word has no realization")
    if cyclic_reduce(w) != w:
        raise RealizationError("word must be cyclically reduced")
    last_err: Optional[Exception] = None
    for attempt in range(MAX_ATTEMPTS):
        pts: List[Pt] = []
        for i, letter in enumerate(w):
            side = exit_side_for_letter(surface, letter)
            a, b = surface.side(side)
            e = lerp(a, b, _param(seed, i, attempt))
            pts.append(e)
            pts.append(surface.opposite_point(side, e))
        # interior marked point on the first chord; an asymmetric parameter
        # avoids exact coincidences forced by the central symmetry
        first_entry = pts[1]
        next_exit = pts[2] if len(pts) > 2 else pts[0]
        mid = lerp(first_entry, next_exit, Fraction(13, 32))
        points = [pts[0], pts[1], mid] + pts[2:]
        try:
            curve = CurveImmersion(surface, tuple(points), marked_index=2)
        except CurveError as exc:
            last_err = exc
            continue
        if not cyclic_words_equal(extract_word(curve), w):
            raise RealizationError("realized word mismatch")  # pragma: no cover
        return curve
    raise RealizationError(f"could not realize word {w}: {last_err}")


def chord_curve(surface: FlatSurface, pair: int, t: Fraction,
                positive: bool = True) -> CurveImmersion:
    """Embedded curve crossing one side pair once at an explicit parameter."""
    letter = (pair + 1) if positive else -(pair + 1)
    side = exit_side_for_letter(surface, letter)
    a, b = surface.side(side)
    e = lerp(a, b, Fraction(t))
    e2 = surface.opposite_point(side, e)
    mid = lerp(e2, e, Fraction(1, 2))
    return CurveImmersion(surface, (e, e2, mid), marked_index=2)


def cone_loop(surface: FlatSurface, delta: Fraction,
              out_overrides: Optional[Dict[int, Fraction]] = None) -> CurveImmersion:
    """Small embedded loop around the cone point, cutting every polygon corner.

    The loop crosses each side pair once near the glued vertex; its crossing
    word is the surface relator up to rotation.  out_overrides adjusts the
    chord endpoint on the outgoing side of selected corners (keyed by the
    corner index in 0..4g-1), which lets callers create transverse crossings
    between two such loops.
    """
    delta = Fraction(delta)
    n = surface.num_sides
    g = surface.genus
    overrides = out_overrides or {}
    vs = surface.vertices

    def out_delta(k: int) -> Fraction:
        return Fraction(overrides.get(k, delta))

    order: List[int] = []
    k = 0
    for _ in range(n):
        order.append(k)
        k = (k + 2 * g + 1) % n
    if k != 0:
        raise RealizationError("corner walk failed to close")  # pragma: no cover

    pts: List[Pt] = []
    for idx, k in enumerate(order):
        prev = order[idx - 1]
        d_in = out_delta(prev)
        d_out = out_delta(k)
        vk = vs[k]
        p_in = lerp(vk, vs[(k - 1) % n], d_in)
        p_out = lerp(vk, vs[(k + 1) % n], d_out)
        pts.append(p_in)
        pts.append(p_out)
    # the corner walk above runs clockwise around the cone point; reverse it
    # so the loop is counterclockwise and its word is the relator itself
    rev = list(reversed(pts))
    points = [rev[0], lerp(rev[0], rev[1], Fraction(13, 32))] + rev[1:]
    return CurveImmersion(surface, tuple(points), marked_index=1)
