from fractions import Fraction as F

import pytest

from curvefloer.arrangement import build_configuration
from curvefloer.chains import InadmissibleError
from curvefloer.domains import enumerate_monogons, enumerate_polygons
from curvefloer.floer import (
    build_floer_complex,
    cohomology,
    domain_sign,
    enumerate_bigons,
    euler_characteristic_cf,
    grade_generators,
    hf_summary,
    total_hf_rank,
)
from curvefloer.realize import chord_curve, realize_word
from curvefloer.surface import build_standard_surface
from curvefloer.surgery import push_off
from curvefloer.curves import CurveImmersion
from curvefloer.exactgeom import pt

S2 = build_standard_surface(2)


def test_pushoff_pair_two_bigons_cancel():
    g = chord_curve(S2, 0, F(1, 3))
    g2 = push_off(g, crossings=2)
    cfg = build_configuration(S2, [g, g2])
    gens = grade_generators(cfg, 0, 1)
    assert sorted(x.degree for x in gens) == [0, 1]
    p = [x for x in gens if x.degree == 0][0]
    q = [x for x in gens if x.degree == 1][0]
    doms = enumerate_bigons(cfg, p.vertex, q.vertex, 0, 1)
    assert len(doms) == 2
    assert all(d.count == 1 for d in doms)
    signs = sorted(domain_sign(cfg, d, [False, False]) for d in doms)
    assert signs == [-1, 1]
    # no bigons the wrong way
    assert enumerate_bigons(cfg, q.vertex, p.vertex, 0, 1) == []


def test_pushoff_pair_hf_rank_two():
    g = chord_curve(S2, 0, F(1, 3))
    g2 = push_off(g, crossings=2)
    cfg = build_configuration(S2, [g, g2])
    fc = build_floer_complex(cfg, 0, 1)
    h = cohomology(fc)
    assert h[0] == (1, [])
    assert h[1] == (1, [])


def test_alpha_beta_hf_rank_one():
    cfg = build_configuration(S2, [chord_curve(S2, 0, F(1, 3)),
                                   chord_curve(S2, 2, F(2, 5))])
    fc = build_floer_complex(cfg, 0, 1)
    assert len(fc.generators) == 1
    assert total_hf_rank(fc) == 1
    assert abs(euler_characteristic_cf(fc)) == 1


def test_disjoint_pair_zero_complex():
    import tests.test_surgery as ts
    a, c = ts.disjoint_pair()
    cfg = build_configuration(S2, [a, c])
    fc = build_floer_complex(cfg, 0, 1)
    assert fc.generators == []
    assert total_hf_rank(fc) == 0


def test_inadmissible_pair_guard():
    cfg = build_configuration(S2, [chord_curve(S2, 0, F(1, 3)),
                                   chord_curve(S2, 0, F(2, 3))])
    with pytest.raises(InadmissibleError):
        build_floer_complex(cfg, 0, 1)


def test_reversing_flag_flips_degrees():
    cfg = build_configuration(S2, [chord_curve(S2, 0, F(1, 3)),
                                   chord_curve(S2, 2, F(2, 5))])
    g_plain = grade_generators(cfg, 0, 1)
    g_flip = grade_generators(cfg, 0, 1, flag_b=True)
    assert [x.degree for x in g_plain] == [1 - x.degree for x in g_flip]


def test_hf_invariance_across_seeds():
    test_curve = chord_curve(S2, 2, F(2, 5))
    for word in [(1,), (1, 3), (2, -4)]:
        summaries = []
        for seed in (1, 5):
            cur = realize_word(S2, word, seed=seed)
            cfg = build_configuration(S2, [cur, test_curve])
            fc = build_floer_complex(cfg, 0, 1)
            summaries.append(hf_summary(fc))
        assert summaries[0] == summaries[1]


def test_fishtail_monogon_found():
    # a chord with a small attached loop: one self-crossing bounding a teardrop
    s = S2
    from curvefloer.exactgeom import lerp
    a4, b4 = s.side(4)
    e = lerp(a4, b4, F(1, 3))
    e2 = s.opposite_point(4, e)
    # path from entry e2 to exit e with a loop: segment p3->p4 crosses p1->p2
    # once at (1/12, 0), enclosing a teardrop triangle
    p1 = pt(F(1, 4), 0)
    p2 = pt(F(-1, 4), 0)
    p3 = pt(F(-1, 4), F(1, 4))
    p4 = pt(F(1, 4), F(-1, 8))
    c = CurveImmersion(s, (e, e2, p1, p2, p3, p4), marked_index=2)
    from curvefloer.curves import self_intersections
    assert len(self_intersections(c)) == 1
    cfg = build_configuration(S2, [c])
    doms = enumerate_monogons(cfg, 0)
    assert len(doms) >= 1
    assert all(d.count >= 1 for d in doms)
    # the teardrop has euler measure 3/4
    for d in doms:
        assert d.euler4(cfg) == 3


def test_embedded_curve_no_monogon_candidates():
    cfg = build_configuration(S2, [chord_curve(S2, 0, F(1, 3))])
    assert cfg.vertices == []
