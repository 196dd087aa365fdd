from fractions import Fraction as F

import pytest

from curvefloer.curves import (
    extract_word,
    homology_class,
    intersections,
    self_intersections,
    winding_number,
)
from curvefloer.realize import chord_curve, realize_word
from curvefloer.surface import build_standard_surface
from curvefloer.surgery import (
    SurgeryError,
    pants_boundary,
    push_off,
    smooth_crossing,
    wedge_neighborhood_boundary,
)
from curvefloer.words import is_null_homotopic

S2 = build_standard_surface(2)


def alpha1():
    return chord_curve(S2, 0, F(1, 3))


def beta1():
    return chord_curve(S2, 2, F(2, 5))


def test_push_off_disjoint():
    g = alpha1()
    g2 = push_off(g)
    assert intersections(g, g2) == []
    assert extract_word(g2) == extract_word(g)
    assert homology_class(g2) == homology_class(g)


def test_push_off_two_crossings_degree_order():
    g = alpha1()
    g2 = push_off(g, crossings=2)
    xs = intersections(g, g2)
    assert len(xs) == 2
    # degree 0 (negative sign) before degree 1 along the curve orientation
    assert xs[0].sign == -1
    assert xs[1].sign == 1


def test_push_off_requires_embedded():
    w = realize_word(S2, (1, 1), seed=3)
    assert self_intersections(w)
    with pytest.raises(SurgeryError):
        push_off(w)


def test_push_off_of_longer_word():
    g = realize_word(S2, (1, 3), seed=2)
    g2 = push_off(g, crossings=2)
    xs = intersections(g, g2)
    assert len(xs) == 2
    assert {r.sign for r in xs} == {1, -1}


def test_smooth_crossing_homology_additive():
    a, b = alpha1(), beta1()
    res = smooth_crossing(a, b, 0)
    assert homology_class(res) == tuple(
        x + y for x, y in zip(homology_class(a), homology_class(b)))
    assert len(intersections(res, a)) == 1
    assert len(intersections(res, b)) == 1
    # resolution of essential curves is unobstructed: not null homotopic
    assert not is_null_homotopic(extract_word(res), S2.relator())


def test_wedge_boundary_properties():
    t_rep = wedge_neighborhood_boundary(alpha1(), beta1())
    assert homology_class(t_rep) == (0, 0, 0, 0)
    assert intersections(t_rep, alpha1()) == []
    assert intersections(t_rep, beta1()) == []
    assert self_intersections(t_rep) == []
    assert winding_number(t_rep) == -1
    # separating but not null homotopic
    assert not is_null_homotopic(extract_word(t_rep), S2.relator())


def disjoint_pair():
    # alpha1 and an embedded curve in the class of pair1 - pair2, whose chords
    # stay clear of the pair-0 chord for every parameter choice
    a = chord_curve(S2, 0, F(1, 3))
    from curvefloer.curves import CurveImmersion
    from curvefloer.exactgeom import lerp
    s = S2
    a5, b5 = s.side(5)
    e1 = lerp(a5, b5, F(2, 5))  # exit through side 5: letter +2
    e1p = s.opposite_point(5, e1)
    a2, b2 = s.side(2)
    e2 = lerp(a2, b2, F(3, 7))  # exit through side 2: letter -3
    e2p = s.opposite_point(2, e2)
    mid = lerp(e1p, e2, F(1, 2))
    c = CurveImmersion(s, (e1, e1p, mid, e2, e2p), marked_index=2)
    return a, c


def test_disjoint_pair_is_disjoint():
    a, c = disjoint_pair()
    assert intersections(a, c) == []
    assert homology_class(c) != homology_class(a)


def test_pants_boundary_properties():
    a, c = disjoint_pair()
    # band foot on the marked legs of each curve
    leg_a = a.leg_of_marked_point()
    leg_c = c.leg_of_marked_point()
    pants = pants_boundary(a, c, (leg_a, F(1, 2)), (leg_c, F(1, 4)))
    assert intersections(pants, a) == []
    assert intersections(pants, c) == []
    assert self_intersections(pants) == []
    ha, hc, hp = homology_class(a), homology_class(c), homology_class(pants)
    assert hp == tuple(y - x for x, y in zip(ha, hc))
    # the reversed orientation closes the pants relation: winding -1 matches
    # the euler characteristic of the pair of pants
    assert winding_number(pants.reverse()) == -1
