"""Curve surgeries: push-offs, crossing resolution, neighborhood boundaries.

All constructions are exact.  Offsets translate each leg by a small rational
multiple of its primitive left normal; joins are computed by exact line
intersections (unfolding across side gluings where needed).  Every construction
validates its output and retries with a smaller offset when a degeneracy or an
unexpected crossing pattern shows up, so the published results always satisfy
the advertised contracts.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .curves import (
    CurveError,
    CurveImmersion,
    algebraic_intersection,
    extract_word,
    homology_class,
    intersections,
    self_intersections,
    winding_number,
)
from .exactgeom import Pt, add, cross, dot, lerp, line_intersect, neg, perp_ccw, scale, sub
from .surface import FlatSurface

F = Fraction

MAX_SHRINK = 10


class SurgeryError(CurveError):
    pass


def _primitive(d: Pt) -> Tuple[int, int]:
    x, y = F(d[0]), F(d[1])
    den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    xi, yi = int(x * den), int(y * den)
    g = gcd(abs(xi), abs(yi))
    return (xi // g, yi // g)


def _left_normal(d: Pt) -> Pt:
    """Rational left normal with bounded length (between 1 and sqrt(2))."""
    px, py = _primitive(d)
    m = max(abs(px), abs(py))
    return (F(-py, m), F(px, m))


class _OffsetCycle:
    """Offset polyline of a curve with bookkeeping per original leg.

    points: cyclic list for the offset CurveImmersion; leg_corner[i] is the
    index (into points) of the join corner at the start of original leg i,
    and leg_offset[i] the translation applied to leg i.
    """

    def __init__(self, points: List[Pt], leg_corner: List[int], leg_offset: List[Pt],
                 marked_index: int):
        self.points = points
        self.leg_corner = leg_corner
        self.leg_offset = leg_offset
        self.marked_index = marked_index


def _offset_cycle(curve: CurveImmersion, side: str, eta: F) -> _OffsetCycle:
    """Translate every leg by eta times its primitive left (or right) normal
    and rejoin with exact miter corners, refolding across side gluings."""
    s = curve.surface
    legs = curve.legs
    m = len(legs)
    sign = 1 if side == "left" else -1
    offs = [scale(_left_normal(leg.direction), sign * eta) for leg in legs]
    sides = curve.point_sides
    pts_out: List[Optional[List[Pt]]] = [None] * m  # points inserted at the start of leg i

    def join_chain(p: Pt, o_prev: Pt, d_prev: Pt, o_cur: Pt, d_cur: Pt) -> List[Pt]:
        """Offset corner at p: one miter point when it stays near, else a bevel."""
        if cross(d_prev, d_cur) == 0:
            if o_prev != o_cur:
                raise SurgeryError("collinear legs with unequal offsets")
            return [add(p, o_cur)]
        mpt = line_intersect(add(p, o_prev), d_prev, add(p, o_cur), d_cur)
        if mpt is not None:
            from .exactgeom import dist_sq, norm_sq
            bound = 64 * max(norm_sq(o_prev), norm_sq(o_cur))
            if dist_sq(mpt, p) <= bound:
                return [mpt]
        return [add(p, o_prev), add(p, o_cur)]

    for i in range(m):
        prev = legs[(i - 1) % m]
        cur = legs[i]
        o_prev = offs[(i - 1) % m]
        o_cur = offs[i]
        joint_idx = cur.start_point_index
        boundary_side = sides[joint_idx]
        if boundary_side is None:
            pts_out[i] = join_chain(cur.start, o_prev, prev.direction, o_cur, cur.direction)
        else:
            # glued corner: prev leg ends at the exit point, cur starts at the
            # entry; unfold cur back across the gluing to compute the join
            entry_side = boundary_side
            exit_idx = (joint_idx - 1) % len(curve.points)
            exit_side = sides[exit_idx]
            if exit_side is None or s.paired_side(exit_side) != entry_side:
                raise SurgeryError("inconsistent gluing at offset join")  # pragma: no cover
            tr = s.side_translation(exit_side)  # exit point + tr = entry point
            p_exit = prev.end
            chain = join_chain(p_exit, o_prev, prev.direction, o_cur, cur.direction)
            a, b = s.side(exit_side)
            side_dir = sub(b, a)
            inside_sign = 1 if cross(side_dir, sub((F(0), F(0)), a)) > 0 else -1

            def side_state(x: Pt) -> int:
                v = cross(side_dir, sub(x, a))
                if v == 0:
                    return 0
                return 1 if (1 if v > 0 else -1) == inside_sign else -1

            states = [side_state(x) for x in chain]
            # locate the unique inside->outside transition along
            # ray_in -> chain -> ray_out (ray_in is inside, ray_out outside
            # after refolding)
            k = next((j for j, st in enumerate(states) if st <= 0), None)
            if k is None:
                # crossing on the outgoing ray
                w = line_intersect(chain[-1], cur.direction, a, side_dir)
                if w is None:
                    raise SurgeryError("offset leg parallel to side")
                pts_out[i] = chain + [w, add(w, tr)]
            elif states[k] == 0:
                if any(st > 0 for st in states[k + 1:]):
                    raise SurgeryError("offset join wobbles across the side")
                w = chain[k]
                pts_out[i] = chain[:k] + [w, add(w, tr)] + [add(x, tr) for x in chain[k + 1:]]
            else:
                if any(st >= 0 for st in states[k:]):
                    raise SurgeryError("offset join wobbles across the side")
                if k == 0:
                    w = line_intersect(add(p_exit, o_prev), prev.direction, a, side_dir)
                else:
                    w = line_intersect(chain[k - 1], sub(chain[k], chain[k - 1]), a, side_dir)
                if w is None:
                    raise SurgeryError("offset leg parallel to side")
                pts_out[i] = chain[:k] + [w, add(w, tr)] + [add(x, tr) for x in chain[k:]]
    points: List[Pt] = []
    leg_corner = [0] * m
    for i in range(m):
        chunk = pts_out[i]
        leg_corner[i] = len(points) + len(chunk) - 1
        points.extend(chunk)
    # marked index: offsets preserve the marked corner, which starts some leg
    marked_leg = curve.leg_of_marked_point()
    marked_index = leg_corner[marked_leg]
    return _OffsetCycle(points, leg_corner, offs, marked_index)


def _clip_duplicate(points: List[Pt]) -> List[Pt]:
    out: List[Pt] = []
    for p in points:
        if out and out[-1] == p:
            continue
        out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def _etas() -> List[F]:
    base = F(1, 64)
    return [base / (4 ** k) for k in range(MAX_SHRINK)]


def push_off(curve: CurveImmersion, side: str = "left", crossings: int = 0) -> CurveImmersion:
    """Parallel copy of an embedded curve.

    crossings=0: disjoint copy.  crossings=2: the copy crosses the curve twice
    on the marked leg, with the degree-0 intersection point first along the
    curve orientation (the standard two-point model of a transverse push-off).
    The copy's marked point sits on the arc parallel to the original's.
    """
    base = curve.materialize_orientation()
    if self_intersections(base):
        raise SurgeryError("push_off requires an embedded curve")
    if crossings not in (0, 2):
        raise SurgeryError("crossings must be 0 or 2")
    last = None
    for eta in _etas():
        try:
            cand = _push_off_once(base, side, crossings, eta)
        except (CurveError, SurgeryError) as exc:
            last = exc
            continue
        if cand is not None:
            return cand
    raise SurgeryError(f"push_off failed: {last}")


def _push_off_once(base: CurveImmersion, side: str, crossings: int, eta: F):
    cyc = _offset_cycle(base, side, eta)
    points = cyc.points
    marked_index = cyc.marked_index
    if crossings == 2:
        leg = base.legs[base.leg_of_marked_point()]
        o = scale(_left_normal(leg.direction), (1 if side == "left" else -1) * eta)
        p1 = add(lerp(leg.start, leg.end, F(1, 5)), o)
        p2 = sub(lerp(leg.start, leg.end, F(2, 5)), o)
        p3 = sub(lerp(leg.start, leg.end, F(3, 5)), o)
        p4 = add(lerp(leg.start, leg.end, F(4, 5)), o)
        corner = cyc.leg_corner[leg.index]
        insert_at = corner + 1
        points = points[:insert_at] + [p1, p2, p3, p4] + points[insert_at:]
        if marked_index >= insert_at:
            marked_index += 4
    points = _clip_duplicate(points)
    cand = CurveImmersion(base.surface, tuple(points), marked_index=marked_index)
    xs = intersections(base, cand)
    if len(xs) != crossings:
        return None
    if crossings == 2:
        if xs[0].sign != -1 or xs[1].sign != 1:
            return None
    if self_intersections(cand):
        return None
    from .words import cyclic_words_equal
    if not cyclic_words_equal(extract_word(cand), extract_word(base)):
        return None
    if winding_number(cand) != winding_number(base):
        return None
    return cand


def smooth_crossing(a: CurveImmersion, b: CurveImmersion, crossing: int) -> CurveImmersion:
    """Oriented resolution of a transverse crossing of a and b.

    The result is a single immersed curve C1-close to the union of the two
    curves away from the crossing, transverse to both, and its homology class
    is the sum of the two classes.
    """
    ga = a.materialize_orientation()
    gb = b.materialize_orientation()
    recs = intersections(ga, gb)
    if not 0 <= crossing < len(recs):
        raise SurgeryError("crossing index out of range")
    rec = recs[crossing]
    last = None
    for eta in _etas():
        for sa in ("left", "right"):
            for sb in ("left", "right"):
                try:
                    cand = _smooth_once(ga, gb, rec, sa, sb, eta)
                except (CurveError, SurgeryError) as exc:
                    last = exc
                    continue
                if cand is not None:
                    return cand
    raise SurgeryError(f"smooth_crossing failed: {last}")


def _open_offset_path(cyc: _OffsetCycle, base: CurveImmersion, leg_index: int,
                      t_cut: F, lam: F, off: Pt):
    """Offset path cut on leg ``leg_index`` at parameter t_cut: returns
    (start_point, [points after cut ... around ... points before cut], end_point)
    where start is at parameter t_cut + lam and end at t_cut - lam."""
    leg = base.legs[leg_index]
    p_after = add(lerp(leg.start, leg.end, t_cut + lam), off)
    p_before = add(lerp(leg.start, leg.end, t_cut - lam), off)
    pts = cyc.points
    n = len(pts)
    corner = cyc.leg_corner[leg_index]
    # points strictly after the corner belong to later legs; the offset path
    # from p_after runs to the next corner and onward around to p_before
    nxt = (corner + 1) % n
    ordered = [pts[(nxt + k) % n] for k in range(n)]
    return [p_after] + ordered + [p_before]


def _smooth_once(ga, gb, rec, sa, sb, eta):
    lam = 16 * eta
    cyc_a = _offset_cycle(ga, sa, eta)
    cyc_b = _offset_cycle(gb, sb, eta)
    leg_a = ga.legs[rec.pos_a.leg]
    leg_b = gb.legs[rec.pos_b.leg]
    if not (lam < rec.pos_a.param < 1 - lam and lam < rec.pos_b.param < 1 - lam):
        return None
    o_a = scale(_left_normal(leg_a.direction), (1 if sa == "left" else -1) * eta)
    o_b = scale(_left_normal(leg_b.direction), (1 if sb == "left" else -1) * eta)
    path_a = _open_offset_path(cyc_a, ga, rec.pos_a.leg, rec.pos_a.param, lam, o_a)
    path_b = _open_offset_path(cyc_b, gb, rec.pos_b.leg, rec.pos_b.param, lam, o_b)
    # resolution: a-path (from after c around to before c), then jump to the
    # b-path (after c), around to before c, and close
    points = _clip_duplicate(path_a + path_b)
    mk = cyc_a.points[cyc_a.marked_index]
    marked = points.index(mk) if mk in points else _safe_marked(ga.surface, points)
    try:
        cand = CurveImmersion(ga.surface, tuple(points), marked_index=marked)
    except CurveError:
        return None
    na = len(intersections(cand, ga))
    nb = len(intersections(cand, gb))
    expect = len(intersections(ga, gb))
    if na != expect or nb != expect:
        return None
    ha = homology_class(ga)
    hb = homology_class(gb)
    if homology_class(cand) != tuple(x + y for x, y in zip(ha, hb)):
        return None
    return cand


def wedge_neighborhood_boundary(a: CurveImmersion, b: CurveImmersion) -> CurveImmersion:
    """Boundary of a regular neighborhood of two embedded curves crossing once.

    The result is an embedded separating curve (it bounds the genus-one
    neighborhood), disjoint from both input curves, oriented so its winding
    number equals the Euler characteristic of the neighborhood (-1).
    """
    ga = a.materialize_orientation()
    gb = b.materialize_orientation()
    recs = intersections(ga, gb)
    if len(recs) != 1:
        raise SurgeryError("wedge boundary needs exactly one crossing")
    if self_intersections(ga) or self_intersections(gb):
        raise SurgeryError("wedge boundary needs embedded curves")
    rec = recs[0]
    last = None
    for eta in _etas():
        try:
            cand = _wedge_once(ga, gb, rec, eta)
        except (CurveError, SurgeryError) as exc:
            last = exc
            continue
        if cand is not None:
            return cand
    raise SurgeryError(f"wedge boundary failed: {last}")


def _cut_points_on_leg(cyc: _OffsetCycle, base: CurveImmersion, leg_index: int,
                       cuts: List[Pt]) -> List[Pt]:
    """Order cut points along the offset of one leg."""
    leg = base.legs[leg_index]
    d = leg.direction
    return sorted(cuts, key=lambda p: dot(p, d))


def _long_path(cyc: _OffsetCycle, base: CurveImmersion, leg_index: int,
               start_cut: Pt, end_cut: Pt) -> List[Pt]:
    """Offset path from start_cut, forward around the curve, to end_cut, where
    both cuts lie on the offset line of leg ``leg_index``."""
    pts = cyc.points
    n = len(pts)
    corner = cyc.leg_corner[leg_index]
    nxt = (corner + 1) % n
    ordered = [pts[(nxt + k) % n] for k in range(n)]
    return [start_cut] + ordered + [end_cut]


def _wedge_once(ga, gb, rec, eta):
    la = ga.legs[rec.pos_a.leg]
    lb = gb.legs[rec.pos_b.leg]
    cycles = {}
    offs = {}
    for name, cur, leg in (("aL", ga, la), ("aR", ga, la), ("bL", gb, lb), ("bR", gb, lb)):
        side = "left" if name.endswith("L") else "right"
        cycles[name] = _offset_cycle(cur, side, eta)
        offs[name] = scale(_left_normal(leg.direction), (1 if side == "left" else -1) * eta)
    # corner points: pairwise intersections of the four offset lines near c
    corners = {}
    for an in ("aL", "aR"):
        for bn in ("bL", "bR"):
            p = line_intersect(add(la.start, offs[an]), la.direction,
                               add(lb.start, offs[bn]), lb.direction)
            if p is None:
                return None
            corners[(an, bn)] = p
    # each offset line is cut at its two corners; assemble taking long paths
    order: List[Tuple[str, Pt, Pt]] = []
    start_name = "aL"
    start_cuts = _cut_points_on_leg(cycles["aL"], ga, la.index,
                                    [corners[("aL", "bL")], corners[("aL", "bR")]])
    # traverse forward: leave from the later cut, return to the earlier one
    cur_name = start_name
    enter = start_cuts[1]
    visited = []
    pieces: List[List[Pt]] = []
    for _ in range(4):
        base = ga if cur_name.startswith("a") else gb
        leg = la if cur_name.startswith("a") else lb
        cuts = [corners[k] for k in corners if (cur_name in k)]
        cuts = _cut_points_on_leg(cycles[cur_name], base, leg.index, cuts)
        if enter not in cuts:
            return None
        exit_cut = cuts[0] if enter == cuts[1] else cuts[1]
        # long path traversed in the curve direction from the later cut wraps
        # forward; from the earlier cut we'd need the reverse orientation, so
        # reverse the stored cycle in that case
        if enter == cuts[1]:
            pieces.append(_long_path(cycles[cur_name], base, leg.index, enter, exit_cut))
        else:
            fwd = _long_path(cycles[cur_name], base, leg.index, exit_cut, enter)
            pieces.append(list(reversed(fwd)))
        visited.append(cur_name)
        # the exit corner joins this offset line with one of the other curve's
        key = [k for k in corners if corners[k] == exit_cut and cur_name in k]
        if len(key) != 1:
            return None
        other = [n for n in key[0] if n != cur_name][0]
        cur_name = other
        enter = exit_cut
    if set(visited) != {"aL", "aR", "bL", "bR"}:
        return None
    points = _clip_duplicate([p for piece in pieces for p in piece])
    try:
        cand = CurveImmersion(ga.surface, tuple(points),
                              marked_index=_safe_marked(ga.surface, points))
    except CurveError:
        return None
    if self_intersections(cand):
        return None
    if intersections(cand, ga) or intersections(cand, gb):
        return None
    if any(v != 0 for v in homology_class(cand)):
        return None
    w = winding_number(cand)
    if w == 1:
        cand = cand.reverse().materialize_orientation()
        w = winding_number(cand)
    if w != -1:
        return None
    return cand


def _safe_marked(surface: FlatSurface, points: List[Pt]) -> int:
    """Index of an interior point usable as the marked point."""
    for i, p in enumerate(points):
        if surface.locate(p) == 1:
            return i
    raise SurgeryError("no interior point available for marking")


def pants_boundary(a: CurveImmersion, b: CurveImmersion,
                   foot_a: Tuple[int, F], foot_b: Tuple[int, F]) -> CurveImmersion:
    """Third boundary component of a neighborhood of two disjoint embedded
    curves joined by a straight band.

    foot_a = (leg index on a, parameter), similarly foot_b; the straight
    segment between the feet must cross neither curve elsewhere.  The result
    is embedded and disjoint from both curves; the returned orientation
    satisfies [result] = [b] - [a], the form entering the pants relation
    for consecutive handle curves.
    """
    ga = a.materialize_orientation()
    gb = b.materialize_orientation()
    if intersections(ga, gb):
        raise SurgeryError("pants boundary needs disjoint curves")
    last = None
    for eta in _etas():
        for sa in ("left", "right"):
            for sb in ("left", "right"):
                try:
                    cand = _pants_once(ga, gb, foot_a, foot_b, sa, sb, eta)
                except (CurveError, SurgeryError) as exc:
                    last = exc
                    continue
                if cand is not None:
                    return cand
    raise SurgeryError(f"pants boundary failed: {last}")


def _pants_once(ga, gb, foot_a, foot_b, sa, sb, eta):
    leg_a = ga.legs[foot_a[0]]
    leg_b = gb.legs[foot_b[0]]
    p = lerp(leg_a.start, leg_a.end, foot_a[1])
    q = lerp(leg_b.start, leg_b.end, foot_b[1])
    band_dir = sub(q, p)
    if band_dir == (0, 0):
        return None
    mu = eta
    band_n = scale(_left_normal(band_dir), mu)
    cyc_a = _offset_cycle(ga, sa, eta)
    cyc_b = _offset_cycle(gb, sb, eta)
    o_a = scale(_left_normal(leg_a.direction), (1 if sa == "left" else -1) * eta)
    o_b = scale(_left_normal(leg_b.direction), (1 if sb == "left" else -1) * eta)
    # band edges hit the offset lines of the foot legs
    xs = {}
    for s, bn in (("+", band_n), ("-", neg(band_n))):
        x1 = line_intersect(add(leg_a.start, o_a), leg_a.direction, add(p, bn), band_dir)
        x2 = line_intersect(add(leg_b.start, o_b), leg_b.direction, add(p, bn), band_dir)
        if x1 is None or x2 is None:
            return None
        xs[("a", s)] = x1
        xs[("b", s)] = x2
    cuts_a = _cut_points_on_leg(cyc_a, ga, leg_a.index, [xs[("a", "+")], xs[("a", "-")]])
    cuts_b = _cut_points_on_leg(cyc_b, gb, leg_b.index, [xs[("b", "+")], xs[("b", "-")]])
    # pants: long a-path from later cut to earlier cut, band edge to b, long
    # b-path reversed, band edge back
    path_a = _long_path(cyc_a, ga, leg_a.index, cuts_a[1], cuts_a[0])
    enter_sign = "+" if cuts_a[0] == xs[("a", "+")] else "-"
    other_sign = "-" if enter_sign == "+" else "+"
    b_first = xs[("b", enter_sign)]
    b_second = xs[("b", other_sign)]
    fwd_b = _long_path(cyc_b, gb, leg_b.index,
                       cuts_b[1], cuts_b[0])
    if b_first == cuts_b[1]:
        path_b = fwd_b
    else:
        path_b = list(reversed(fwd_b))
    if path_b[0] != b_first or path_b[-1] != b_second:
        return None
    points = _clip_duplicate(path_a + path_b)
    try:
        cand = CurveImmersion(ga.surface, tuple(points),
                              marked_index=_safe_marked(ga.surface, points))
    except CurveError:
        return None
    if self_intersections(cand):
        return None
    if intersections(cand, ga) or intersections(cand, gb):
        return None
    ha, hb = homology_class(ga), homology_class(gb)
    hc = homology_class(cand)
    want = tuple(y - x for x, y in zip(ha, hb))
    if hc == want:
        return cand
    if hc == tuple(-v for v in want):
        return cand.reverse().materialize_orientation()
    return None
