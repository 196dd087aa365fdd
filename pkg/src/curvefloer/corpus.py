"""Bundled genus-2 curve family used by the relation suites and the battery.

All curves are exact and validated on construction: the four gluing chords,
the disjoint partner of each chord, the pants curve bounding with a chord and
its partner, the genus-one bounding curve, wrapping curves, and the cylinder
pair.  Parameters are fixed so the advertised crossing patterns hold exactly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from .curves import CurveImmersion, intersections, self_intersections
from .exactgeom import lerp
from .realize import chord_curve
from .surface import FlatSurface, build_standard_surface
from .surgery import pants_boundary, push_off, wedge_neighborhood_boundary

F = Fraction

CHORD_PARAMS = [F(1, 3), F(1, 2), F(2, 5), F(3, 7)]


@lru_cache(maxsize=None)
def surface2() -> FlatSurface:
    return build_standard_surface(2)


def handle_chord(pair: int) -> CurveImmersion:
    """The four standard embedded curves, one per glued side pair."""
    return chord_curve(surface2(), pair, CHORD_PARAMS[pair])


def partner_curve(pair: int) -> CurveImmersion:
    """Embedded two-crossing curve disjoint from handle_chord(pair).

    It crosses the side pairs pair+1 and pair+2, with both of its chords kept
    inside the two boundary arcs cut out by the chord of ``pair``.
    """
    s = surface2()
    g = s.genus
    n = 4 * g
    # entering through side pair+1 and exiting through side pair+2 keeps both
    # chords inside the two boundary arcs cut out by sides pair and pair+2g
    exit1 = (pair + 2 * g + 1) % n
    exit2 = (pair + 2) % n
    a1, b1 = s.side(exit1)
    e1 = lerp(a1, b1, F(2, 5))
    e1p = s.opposite_point(exit1, e1)
    a2, b2 = s.side(exit2)
    e2 = lerp(a2, b2, F(3, 7))
    e2p = s.opposite_point(exit2, e2)
    mid = lerp(e1p, e2, F(1, 2))
    cur = CurveImmersion(s, (e1, e1p, mid, e2, e2p), marked_index=2)
    if intersections(cur, handle_chord(pair)):
        raise AssertionError("partner curve construction failed")  # pragma: no cover
    return cur


@lru_cache(maxsize=None)
def standard_family() -> Dict[str, CurveImmersion]:
    s = surface2()
    alpha1 = handle_chord(0)
    beta1 = handle_chord(2)
    alpha2 = handle_chord(1)
    beta2 = handle_chord(3)
    partner = partner_curve(0)
    pants = pants_boundary(alpha1, partner,
                           (alpha1.leg_of_marked_point(), F(1, 2)),
                           (partner.leg_of_marked_point(), F(1, 4)))
    t_rep = wedge_neighborhood_boundary(alpha1, beta1)
    return {
        "alpha1": alpha1,
        "beta1": beta1,
        "alpha2": alpha2,
        "beta2": beta2,
        "partner1": partner,
        "pants1": pants,
        "t_rep": t_rep,
    }


def cylinder_pair() -> Tuple[CurveImmersion, CurveImmersion]:
    s = surface2()
    return chord_curve(s, 0, F(1, 3)), chord_curve(s, 0, F(2, 3))


def delta_q_curve(q: int) -> CurveImmersion:
    """Embedded curve crossing pair 0 once and pair 2 q times (class of
    alpha1 plus q beta1)."""
    s = surface2()
    g = s.genus
    if q < 1:
        raise ValueError("q must be positive")
    # exit pair 0 through side 4, pair 2 through side 6, nested parameters;
    # the pair-0 parameter avoids the one used by the standard chords
    a4, b4 = s.side(4)
    e0 = lerp(a4, b4, F(2, 7))
    e0p = s.opposite_point(4, e0)
    pts = [e0, e0p]
    params = [F(2 * (q - k) + 1, 2 * q + 4) for k in range(q)]
    a6, b6 = s.side(6)
    for k in range(q):
        t = lerp(a6, b6, params[k])
        tp = s.opposite_point(6, t)
        if k == 0:
            mid_pt = lerp(e0p, t, F(1, 2))
            pts.append(mid_pt)
        pts.append(t)
        pts.append(tp)
    cur = CurveImmersion(s, tuple(pts), marked_index=2)
    if self_intersections(cur):
        raise AssertionError("delta_q curve should be embedded")  # pragma: no cover
    return cur


def disjoint_pairs() -> List[Tuple[CurveImmersion, CurveImmersion]]:
    """Five disjoint non-isotopic pairs (verified exactly on construction)."""
    fam = standard_family()
    pairs = [(handle_chord(p), partner_curve(p)) for p in range(4)]
    pairs.append((fam["alpha1"], fam["t_rep"]))
    for a, b in pairs:
        if intersections(a, b):
            raise AssertionError("corpus disjoint pair crosses")  # pragma: no cover
    return pairs


def embedded_family() -> List[CurveImmersion]:
    """Five distinct embedded curves for push-off batteries."""
    fam = standard_family()
    return [fam["alpha1"], fam["beta1"], fam["alpha2"], fam["beta2"], fam["pants1"]]


def lickorish_twist_curves() -> List[CurveImmersion]:
    """The stored twist generators (3g - 1 = 5 curves for genus two)."""
    fam = standard_family()
    return [fam["alpha1"], fam["beta1"], fam["alpha2"], fam["beta2"], fam["pants1"]]
