import random

import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from curvefloer.intlinalg import (
    column_hermite,
    det_sign,
    kernel_basis,
    lattices_equal,
    mat_mul,
    mat_vec,
    row_hnf,
    smith_normal_form,
    solve_integer,
    solve_rational,
    torsion_from_snf,
)


def random_matrix(rng, m, n, lo=-6, hi=6):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def test_column_hermite_factorization():
    rng = random.Random(7)
    for _ in range(40):
        m, n = rng.randint(1, 5), rng.randint(1, 6)
        a = random_matrix(rng, m, n)
        h, u, pivots = column_hermite(a)
        assert mat_mul(a, u) == h
        assert abs_det_is_one(u)
        # echelon with positive pivots
        for k, row in enumerate(pivots):
            assert h[row][k] > 0
            for j in range(k + 1, n):
                assert h[row][j] == 0


def abs_det_is_one(u):
    return det_sign(u) in (1, -1) and abs(sympy.Matrix(u).det()) == 1


def test_kernel_basis_annihilates_and_saturated():
    rng = random.Random(11)
    for _ in range(40):
        m, n = rng.randint(1, 4), rng.randint(1, 6)
        a = random_matrix(rng, m, n)
        basis = kernel_basis(a)
        for v in basis:
            assert all(x == 0 for x in mat_vec(a, v))
        # dimension agrees with sympy nullspace
        assert len(basis) == n - sympy.Matrix(a).rank()


def test_kernel_saturation_example():
    # kernel of [2 -2] over Z is spanned by (1,1), not (2,2)
    assert kernel_basis([[2, -2]]) == [[1, 1]]


def test_row_hnf_canonical():
    # two bases of the same lattice agree after HNF
    b1 = [[2, 1, 0], [0, 3, 1]]
    b2 = [[2, 4, 1], [0, 3, 1]]
    assert lattices_equal(b1, b2)
    b3 = [[2, 1, 0], [0, 3, 2]]
    assert not lattices_equal(b1, b3)


def test_solve_integer_matches_manual():
    a = [[2, 0], [0, 3]]
    assert solve_integer(a, [4, 9]) == [2, 3]
    assert solve_integer(a, [1, 0]) is None
    assert solve_rational(a, [1, 0]) == [sympy.Rational(1, 2), 0]


def test_solve_integer_random():
    rng = random.Random(3)
    for _ in range(40):
        m, n = rng.randint(1, 4), rng.randint(1, 5)
        a = random_matrix(rng, m, n)
        x = [rng.randint(-4, 4) for _ in range(n)]
        b = mat_vec(a, x)
        got = solve_integer(a, b)
        assert got is not None
        assert mat_vec(a, got) == b


def test_snf_against_sympy():
    rng = random.Random(5)
    for _ in range(30):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        a = random_matrix(rng, m, n)
        ours = [d for d in smith_normal_form(a)]
        ref = sympy_snf(sympy.Matrix(a))
        ref_diag = [abs(ref[i, i]) for i in range(min(m, n)) if ref[i, i] != 0]
        assert ours == ref_diag


def test_torsion_extraction():
    assert torsion_from_snf([1, 1, 2, 6]) == [2, 6]
