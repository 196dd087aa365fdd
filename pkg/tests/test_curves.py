from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvefloer.curves import (
    CurveError,
    CurveImmersion,
    TransversalityError,
    algebraic_intersection,
    extract_word,
    homology_class,
    intersections,
    self_intersections,
    winding_number,
)
from curvefloer.exactgeom import lerp, pt
from curvefloer.realize import RealizationError, chord_curve, cone_loop, realize_word
from curvefloer.surface import build_standard_surface
from curvefloer.words import cyclic_reduce, cyclic_words_equal, is_null_homotopic

S2 = build_standard_surface(2)
S3 = build_standard_surface(3)


def interior_triangle(surface, scale=F(1, 4)):
    pts = (pt(scale, 0), pt(0, scale), pt(-scale, -scale))
    return CurveImmersion(surface, pts, marked_index=0)


def test_interior_loop_basics():
    c = interior_triangle(S2)
    assert extract_word(c) == ()
    assert homology_class(c) == (0, 0, 0, 0)
    assert self_intersections(c) == []
    assert winding_number(c) == 1
    assert winding_number(c.reverse()) == -1


def test_figure_eight_one_self_crossing():
    # bowtie polyline: two triangles sharing a central crossing
    pts = (pt(F(-1, 4), F(-1, 8)), pt(F(1, 4), F(1, 8)), pt(F(1, 4), F(-1, 8)),
           pt(F(-1, 4), F(1, 8)))
    c = CurveImmersion(S2, pts, marked_index=0)
    assert len(self_intersections(c)) == 1
    assert winding_number(c) == 0


def test_chord_curve_word_and_homology():
    a1 = chord_curve(S2, 0, F(1, 3))
    assert extract_word(a1) == (1,)
    assert homology_class(a1) == (1, 0, 0, 0)
    assert winding_number(a1) == 0
    assert homology_class(a1.reverse()) == (-1, 0, 0, 0)
    rev_word = extract_word(a1.reverse())
    assert rev_word == (-1,)


def test_chord_curves_cross_once():
    a1 = chord_curve(S2, 0, F(1, 3))
    b1 = chord_curve(S2, 2, F(2, 5))
    xs = intersections(a1, b1)
    assert len(xs) == 1
    assert xs[0].sign in (1, -1)
    assert algebraic_intersection(a1, b1) == -algebraic_intersection(a1.reverse(), b1)


def test_marked_point_must_be_interior():
    a, b = S2.side(0)
    e = lerp(a, b, F(1, 3))
    e2 = S2.opposite_point(0, e)
    mid = lerp(e2, e, F(1, 2))
    with pytest.raises(CurveError):
        CurveImmersion(S2, (e, e2, mid), marked_index=0)


def test_backtracking_rejected():
    pts = (pt(0, 0), pt(F(1, 4), 0), pt(F(1, 8), 0))
    with pytest.raises(CurveError):
        CurveImmersion(S2, pts, marked_index=0)


def test_tangency_rejected():
    # second loop touches the first at a vertex of the first
    pts = (pt(0, 0), pt(F(1, 4), F(1, 4)), pt(F(1, 2), 0), pt(F(1, 4), F(-1, 4)))
    c1 = CurveImmersion(S2, pts, marked_index=0)
    pts2 = (pt(F(1, 4), F(1, 4)), pt(F(1, 2), F(1, 2)), pt(F(5, 8), F(1, 4)))
    c2 = CurveImmersion(S2, pts2, marked_index=0)
    with pytest.raises(TransversalityError):
        intersections(c1, c2)


def test_realize_word_roundtrip():
    for word in [(1,), (2,), (1, 3), (1, -2), (2, 4, -1)]:
        c = realize_word(S2, word, seed=5)
        assert cyclic_words_equal(extract_word(c), word)


def test_realize_rejects_unreduced():
    with pytest.raises(RealizationError):
        realize_word(S2, (1, -1), seed=0)
    with pytest.raises(RealizationError):
        realize_word(S2, (), seed=0)


def test_realizations_same_invariants_across_seeds():
    for word in [(1,), (1, 3), (2, -4, 1)]:
        c1 = realize_word(S2, word, seed=1)
        c2 = realize_word(S2, word, seed=2)
        assert homology_class(c1) == homology_class(c2)
        g = S2.genus
        assert (winding_number(c1) - winding_number(c2)) % (2 * g - 2) == 0


def test_cone_loop_word_is_relator():
    for surface in (S2, S3):
        loop = cone_loop(surface, F(1, 10))
        assert cyclic_words_equal(extract_word(loop), surface.relator())
        assert is_null_homotopic(extract_word(loop), surface.relator())
        assert self_intersections(loop) == []


def test_cone_loop_winding_vs_interior_loop():
    # isotoping a contractible loop across the cone point shifts the winding
    # by the euler characteristic
    for surface in (S2, S3):
        loop = cone_loop(surface, F(1, 10))
        small = interior_triangle(surface, F(1, 5))
        w1, w2 = winding_number(loop), winding_number(small)
        chi = surface.euler_characteristic()
        assert w1 != w2
        assert (w1 - w2) % chi == 0


def test_cone_loop_override_pair_crossings():
    g = 2
    last_corner = 2 * g - 1
    c1 = cone_loop(S2, F(1, 10), out_overrides={last_corner: F(1, 40)})
    c2 = cone_loop(S2, F(1, 20))
    xs = intersections(c1, c2)
    assert len(xs) == 2
    assert xs[0].sign * xs[1].sign == -1


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([1, 2, 3, 4, -1, -2, -3, -4]), min_size=1, max_size=4),
       st.integers(min_value=0, max_value=3))
def test_realize_extract_roundtrip_property(letters, seed):
    word = cyclic_reduce(letters)
    if not word:
        return
    c = realize_word(S2, word, seed=seed)
    assert cyclic_words_equal(extract_word(c), word)
