import itertools
from fractions import Fraction as F

import pytest

from curvefloer.ainfinity import (
    a_infinity_sum,
    check_a_infinity,
    combinatorial_index,
    higher_product,
    maslov_index,
)
from curvefloer.arrangement import build_configuration
from curvefloer.chains import constraint_matrix, is_admissible
from curvefloer.curves import CurveImmersion
from curvefloer.domains import audit_polygon_chain, enumerate_polygons
from curvefloer.exactgeom import lerp, pt
from curvefloer.intlinalg import mat_vec
from curvefloer.realize import chord_curve, cone_loop, realize_word
from curvefloer.surface import build_standard_surface
from curvefloer.system import CurveSystem, ObjectRef

S2 = build_standard_surface(2)


def small_triangle_system():
    """Three embedded interior-ish curves bounding a small triangle.

    Using three chords of distinct side pairs: every pair crosses once, and
    suitable parameters make the three crossings bound a triangle."""
    c0 = chord_curve(S2, 0, F(1, 3))
    c1 = chord_curve(S2, 1, F(1, 2))
    c2 = chord_curve(S2, 2, F(2, 5))
    return CurveSystem(S2, [c0, c1, c2])


def test_m2_on_triangle_configuration():
    system = small_triangle_system()
    objs = [ObjectRef(0), ObjectRef(1), ObjectRef(2)]
    p01 = system.generators(0, 1)[0]
    p12 = system.generators(1, 2)[0]
    vals = higher_product(system, objs, [p01, p12])
    # also try reversed orientations until the product is visibly nonzero in
    # some flag pattern; the triangle domain exists geometrically for a
    # definite set of corner quadrants, so at least one tuple order works
    total_nonzero = bool(vals)
    for flags in itertools.product([False, True], repeat=3):
        o = [ObjectRef(i, f) for i, f in zip(range(3), flags)]
        if higher_product(system, o, [p01, p12]):
            total_nonzero = True
    for perm in itertools.permutations(range(3)):
        o = [ObjectRef(i) for i in perm]
        ins = [system.generators(perm[0], perm[1])[0], system.generators(perm[1], perm[2])[0]]
        try:
            if higher_product(system, o, ins):
                total_nonzero = True
        except Exception:
            pass
    assert total_nonzero


def test_m2_chain_map_identity():
    system = small_triangle_system()
    objs = [ObjectRef(0), ObjectRef(1), ObjectRef(2)]
    report = check_a_infinity(system, objs)
    assert report.ok
    assert report.checked == 1


def test_k3_relation_on_four_chords():
    curves = [chord_curve(S2, 0, F(1, 3)), chord_curve(S2, 1, F(1, 2)),
              chord_curve(S2, 2, F(2, 5)), chord_curve(S2, 3, F(3, 7))]
    system = CurveSystem(S2, curves)
    assert system.admissible([0, 1, 2, 3])
    objs = [ObjectRef(i) for i in range(4)]
    report = check_a_infinity(system, objs)
    assert report.ok
    assert report.checked == 1
    assert report.nonvacuous >= 0


def test_k3_relation_with_orientation_flags():
    curves = [chord_curve(S2, 0, F(1, 3)), chord_curve(S2, 1, F(1, 2)),
              chord_curve(S2, 2, F(2, 5)), chord_curve(S2, 3, F(3, 7))]
    system = CurveSystem(S2, curves)
    for flags in [(False, True, False, False), (True, False, True, False)]:
        objs = [ObjectRef(i, f) for i, f in zip(range(4), flags)]
        report = check_a_infinity(system, objs)
        assert report.ok


def test_counted_polygon_indices():
    system = small_triangle_system()
    cfg, mapping = system.config_for([0, 1, 2])
    found = []
    for perm in itertools.permutations(range(3)):
        order = [mapping[i] for i in perm]
        ins = []
        ok = True
        for i in range(2):
            a, b = perm[i], perm[i + 1]
            gens = system.generators(a, b)
            if not gens:
                ok = False
                break
            ins.append(system.vertex_of_gen(cfg, mapping, gens[0]))
        if not ok:
            continue
        outs = system.generators(perm[0], perm[2])
        for og in outs:
            ov = system.vertex_of_gen(cfg, mapping, og)
            for dom in enumerate_polygons(cfg, order, ins, ov):
                found.append((cfg, dom))
    assert found  # the triangle is counted in at least one cyclic reading
    for cfg_, dom in found:
        assert combinatorial_index(cfg_, dom) == 0  # triangles are rigid
        assert dom.euler4(cfg_) == 1  # e = 1/4


def cone_loop_pair(surface):
    g = surface.genus
    c2 = cone_loop(surface, F(1, 20))
    c1 = cone_loop(surface, F(1, 10), out_overrides={2 * g - 1: F(1, 40)})
    return c1, c2


@pytest.mark.parametrize("genus", [2, 3])
def test_small_bigon_around_cone_point_maslov(genus):
    surface = build_standard_surface(genus)
    c1, c2 = cone_loop_pair(surface)
    cfg = build_configuration(surface, [c1, c2])
    assert len(cfg.vertices) == 2
    # find the lens domain containing the cone point by brute force over
    # small chains satisfying the bigon constraint system
    rows = constraint_matrix(cfg)
    n = len(cfg.regions)
    doms = []
    for p, q in itertools.permutations(range(2), 2):
        from curvefloer.domains import tuple_sign
        rhs = [0, 0, 3]
        rhs[p] = -tuple_sign(cfg, p, 0, 1)
        rhs[q] = tuple_sign(cfg, q, 0, 1)
        rhs_full = [0] * len(cfg.vertices) + [3]
        rhs_full[p] += -tuple_sign(cfg, p, 0, 1)
        rhs_full[q] += tuple_sign(cfg, q, 0, 1)
        rhs_full[-1] = 4 - 2
        for combo in itertools.product((0, 1), repeat=n):
            if mat_vec(rows, list(combo)) != rhs_full:
                continue
            dom = audit_polygon_chain(cfg, [0, 1], [p], q, combo)
            if dom is not None:
                doms.append(dom)
    assert doms
    with_cone = [d for d in doms if d.chain[cfg.cone_region] == 1]
    assert with_cone
    for dom in with_cone:
        m_x, n_z, mu = maslov_index(cfg, dom)
        assert n_z == 1
        assert m_x == 4 * genus - 3
        assert mu == 1
    without = [d for d in doms if d.chain[cfg.cone_region] == 0]
    for dom in without:
        m_x, n_z, mu = maslov_index(cfg, dom)
        assert (m_x, n_z, mu) == (1, 0, 1)


def test_maslov_equals_one_on_counted_bigons():
    from curvefloer.surgery import push_off
    g = chord_curve(S2, 0, F(1, 3))
    g2 = push_off(g, crossings=2)
    cfg = build_configuration(S2, [g, g2])
    from curvefloer.floer import enumerate_bigons, grade_generators
    gens = grade_generators(cfg, 0, 1)
    p = [x for x in gens if x.degree == 0][0]
    q = [x for x in gens if x.degree == 1][0]
    for dom in enumerate_bigons(cfg, p.vertex, q.vertex, 0, 1):
        m_x, n_z, mu = maslov_index(cfg, dom)
        assert mu == 1
