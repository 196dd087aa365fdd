from fractions import Fraction as F

import pytest

from curvefloer.corpus import (
    cylinder_pair,
    delta_q_curve,
    disjoint_pairs,
    embedded_family,
    handle_chord,
    lickorish_twist_curves,
    partner_curve,
    standard_family,
    surface2,
)
from curvefloer.curves import homology_class, intersections, winding_number
from curvefloer.invariants import (
    KClass,
    check_pants_relation,
    check_zero_obstruction,
    phi,
    phi_curve,
)
from curvefloer.mcg import (
    MappingClassWord,
    apply_mapping_class,
    apply_twist,
    faithfulness_battery,
    geometric_intersection_number,
    hf_of_pair,
    parse_mcg_word,
    twist_word,
)
from curvefloer.surgery import push_off
from curvefloer.system import CurveSystem, ObjectRef
from curvefloer.words import cyclic_words_equal

S2 = surface2()


def test_corpus_family_valid():
    fam = standard_family()
    assert len(disjoint_pairs()) == 5
    assert len(embedded_family()) == 5
    assert homology_class(fam["t_rep"]) == (0, 0, 0, 0)
    assert winding_number(fam["t_rep"]) == -1


def test_phi_of_curve_and_reverse():
    a = handle_chord(0)
    k = phi_curve(a)
    assert k.homology == (1, 0, 0, 0)
    assert (k + phi_curve(a.reverse())).is_zero


def test_phi_additive_over_lists():
    a, b = handle_chord(0), handle_chord(2)
    total = phi([a, b])
    assert total == phi_curve(a) + phi_curve(b)


def test_separating_curve_kclass():
    fam = standard_family()
    k = phi_curve(fam["t_rep"])
    assert k.homology == (0, 0, 0, 0)
    assert k.winding == (-1) % 2 == 1  # odd residue mod |chi| = 2


def test_pants_relation_family():
    fam = standard_family()
    alpha1, partner, pants, t_rep = (fam["alpha1"], fam["partner1"],
                                     fam["pants1"], fam["t_rep"])
    t_class = phi_curve(t_rep)
    # boundary-oriented triple: reversed alpha1, partner as oriented, and the
    # pants curve with the orientation closing the relation
    report = check_pants_relation(alpha1.reverse(), partner, pants.reverse(), t_class)
    assert report.ok, (report.lhs, report.rhs)
    # the identity in the handle-family form: phi(a1) - phi(a2) + phi(g1) = T
    lhs = phi_curve(partner) - phi_curve(alpha1) + phi_curve(pants.reverse())
    assert lhs == t_class


def test_chi_times_t_vanishes():
    fam = standard_family()
    t_class = phi_curve(fam["t_rep"])
    chi = S2.euler_characteristic()
    assert t_class.scale(chi).is_zero
    assert not t_class.is_zero


def test_zero_obstruction_reports():
    a = handle_chord(0)
    rep = check_zero_obstruction([a, a.reverse()])
    assert rep.verdict == "inconclusive"
    rep2 = check_zero_obstruction([a])
    assert rep2.verdict == "cannot be zero object"


def test_surjectivity_witnesses():
    # a homology basis and curves hitting each winding residue mod 2
    fam = standard_family()
    basis = [handle_chord(p) for p in range(4)]
    import sympy
    mat = sympy.Matrix([list(homology_class(c)) for c in basis])
    assert abs(mat.det()) == 1
    residues = {winding_number(c) % 2 for c in [fam["t_rep"], fam["alpha1"]]}
    assert residues == {0, 1}


def test_parse_mcg_word():
    w = parse_mcg_word("t1^2 t5^-1", 5)
    assert w.letters == ((0, 2), (4, -1))
    assert parse_mcg_word("id", 5).letters == ()
    with pytest.raises(Exception):
        parse_mcg_word("t9", 5)


def test_twist_disjoint_curve_unchanged():
    fam = standard_family()
    # partner1 is disjoint from alpha1: twisting about alpha1 changes nothing
    w = twist_word(fam["partner1"], fam["alpha1"], 1)
    from curvefloer.curves import extract_word
    assert cyclic_words_equal(w, extract_word(fam["partner1"]))


def test_twist_homology_transvection():
    fam = standard_family()
    res = apply_twist(fam["alpha1"], fam["beta1"], 1, seed=3)
    alg = sum(r.sign for r in intersections(fam["alpha1"], fam["beta1"]))
    expect = tuple(a + alg * t for a, t in zip(homology_class(fam["alpha1"]),
                                               homology_class(fam["beta1"])))
    assert homology_class(res) == expect


def test_twist_inverse_cancels():
    fam = standard_family()
    once = apply_twist(fam["alpha1"], fam["beta1"], 1, seed=3)
    back = apply_twist(once, fam["beta1"], -1, seed=5)
    from curvefloer.curves import extract_word
    from curvefloer.words import dehn_reduce
    rel = S2.relator()
    assert cyclic_words_equal(dehn_reduce(extract_word(back), rel),
                              dehn_reduce(extract_word(fam["alpha1"]), rel))


def test_hf_of_disjoint_pairs():
    for a, b in disjoint_pairs():
        h = hf_of_pair(a, b)
        assert h[0]["rank"] + h[1]["rank"] == 0


def test_hf_of_pushoff_pair_via_helper():
    a = handle_chord(0)
    h = hf_of_pair(a, push_off(a, crossings=2))
    assert h == {0: {"rank": 1, "torsion": []}, 1: {"rank": 1, "torsion": []}}


def test_geometric_intersection_numbers():
    fam = standard_family()
    out = geometric_intersection_number(fam["alpha1"], fam["beta1"])
    assert out["hf_rank"] == 1
    for q in (1, 2, 3):
        dq = delta_q_curve(q)
        got = geometric_intersection_number(dq, fam["alpha1"])
        assert got["hf_rank"] == q


def test_faithfulness_identity():
    rep = faithfulness_battery(MappingClassWord(()))
    assert rep.verdict == "ConsistentWithIdentity", rep.rows


def test_faithfulness_twist_detected():
    rep = faithfulness_battery(MappingClassWord(((1, 1),)))  # twist about beta1
    assert rep.verdict == "DistinguishedFromIdentity"
    names = [r["pair"] for r in rep.rows]
    assert "alpha1-vs-bounding" in names


def test_faithfulness_twist_inverse_pair():
    w = MappingClassWord(((1, 1), (1, -1)))
    rep = faithfulness_battery(w)
    assert rep.verdict == "ConsistentWithIdentity", [r for r in rep.rows if not r["match"]]
