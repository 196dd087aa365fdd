"""Integer matrix algorithms: Hermite and Smith normal forms, kernels, solving.

Matrices are lists of lists of Python ints (rows).  Everything is exact; the
transforms returned are unimodular.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Mat = List[List[int]]


def zeros(m: int, n: int) -> Mat:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> Mat:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Mat, b: Mat) -> Mat:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            v = ai[t]
            if v:
                bt = b[t]
                for j in range(m):
                    oi[j] += v * bt[j]
    return out


def mat_vec(a: Mat, x: Sequence[int]) -> List[int]:
    return [sum(r[j] * x[j] for j in range(len(x))) for r in a]


def transpose(a: Mat) -> Mat:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def is_zero(a: Mat) -> bool:
    return all(v == 0 for row in a for v in row)


def column_hermite(a: Mat) -> Tuple[Mat, Mat, List[int]]:
    """Column-style Hermite reduction: returns (h, u, pivots) with a @ u = h.

    u is unimodular; h is in column echelon form with positive pivots, each
    pivot row reduced to the right of the pivot?  We reduce columns left of
    the pivot column so entries in the pivot row, in earlier columns, lie in
    [0, pivot).  pivots[k] is the row of the pivot of column k; columns after
    the last pivot are zero.
    """
    m = len(a)
    n = len(a[0]) if a else 0
    h = [row[:] for row in a]
    u = identity(n)
    col = 0
    pivots: List[int] = []
    for row in range(m):
        # find a column >= col with nonzero entry in this row
        piv = None
        for j in range(col, n):
            if h[row][j] != 0:
                piv = j
                break
        if piv is None:
            continue
        _swap_cols(h, u, col, piv)
        # clear to the right via euclidean column operations
        for j in range(col + 1, n):
            while h[row][j] != 0:
                q = h[row][col] // h[row][j]
                _addmul_col(h, u, col, j, -q)
                _swap_cols(h, u, col, j)
        if h[row][col] < 0:
            _scale_col(h, u, col, -1)
        # reduce earlier columns against this pivot
        p = h[row][col]
        for j in range(col):
            q = h[row][j] // p
            if q:
                _addmul_col(h, u, j, col, -q)
        pivots.append(row)
        col += 1
        if col == n:
            break
    return h, u, pivots


def _swap_cols(h: Mat, u: Mat, i: int, j: int) -> None:
    if i == j:
        return
    for row in h:
        row[i], row[j] = row[j], row[i]
    for row in u:
        row[i], row[j] = row[j], row[i]


def _addmul_col(h: Mat, u: Mat, j: int, src: int, q: int) -> None:
    """col_j += q * col_src."""
    if q == 0:
        return
    for row in h:
        row[j] += q * row[src]
    for row in u:
        row[j] += q * row[src]


def _scale_col(h: Mat, u: Mat, j: int, s: int) -> None:
    for row in h:
        row[j] *= s
    for row in u:
        row[j] *= s


def kernel_basis(a: Mat, n: Optional[int] = None) -> List[List[int]]:
    """Basis of the integer kernel {x : a@x = 0}, canonicalized by row HNF.

    The returned lattice basis is saturated: every integer point of the
    rational kernel is an integer combination of the basis.
    """
    if not a:
        if n is None:
            raise ValueError("need column count for empty matrix")
        return [row[:] for row in identity(n)]
    n = len(a[0])
    h, u, pivots = column_hermite(a)
    r = len(pivots)
    basis = [[u[i][j] for i in range(n)] for j in range(r, n)]
    return row_hnf(basis)


def row_hnf(rows: List[List[int]]) -> List[List[int]]:
    """Canonical row-style Hermite normal form of the lattice spanned by rows.

    Zero rows are dropped; pivots are positive and entries above each pivot
    are reduced into [0, pivot).
    """
    if not rows:
        return []
    mat = [r[:] for r in rows]
    n = len(mat[0])
    done: List[List[int]] = []
    col = 0
    rowidx = 0
    m = len(mat)
    for col in range(n):
        # find pivot row
        piv = None
        for i in range(rowidx, m):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[rowidx], mat[piv] = mat[piv], mat[rowidx]
        for i in range(rowidx + 1, m):
            while mat[i][col] != 0:
                q = mat[rowidx][col] // mat[i][col]
                mat[rowidx] = [x - q * y for x, y in zip(mat[rowidx], mat[i])]
                mat[rowidx], mat[i] = mat[i], mat[rowidx]
        if mat[rowidx][col] < 0:
            mat[rowidx] = [-x for x in mat[rowidx]]
        rowidx += 1
        if rowidx == m:
            break
    mat = mat[:rowidx]
    # reduce entries above pivots
    pivcols = []
    for r in mat:
        for j, v in enumerate(r):
            if v != 0:
                pivcols.append(j)
                break
    for i in range(len(mat)):
        for k in range(i):
            j = pivcols[i]
            q = mat[k][j] // mat[i][j]
            if q:
                mat[k] = [x - q * y for x, y in zip(mat[k], mat[i])]
    return mat


def lattices_equal(basis1: List[List[int]], basis2: List[List[int]]) -> bool:
    return row_hnf(basis1) == row_hnf(basis2)


def solve_integer(a: Mat, b: Sequence[int]) -> Optional[List[int]]:
    """One integer solution x of a @ x = b, or None.

    None means there is no integer solution (there may or may not be a
    rational one; use solve_rational to distinguish).
    """
    m = len(a)
    if m == 0:
        return []
    n = len(a[0])
    h, u, pivots = column_hermite(a)
    y = [0] * n
    resid = list(b)
    for k, row in enumerate(pivots):
        p = h[row][k]
        if resid[row] % p != 0:
            return None
        t = resid[row] // p
        y[k] = t
        if t:
            for i in range(m):
                resid[i] -= t * h[i][k]
    if any(v != 0 for v in resid):
        return None
    return mat_vec(u, y)


def solve_rational(a: Mat, b: Sequence[int]) -> Optional[List[Fraction]]:
    """One rational solution of a @ x = b, or None when inconsistent."""
    m = len(a)
    n = len(a[0]) if a else 0
    aug = [[Fraction(v) for v in a[i]] + [Fraction(b[i])] for i in range(m)]
    # gaussian elimination
    row = 0
    piv_of_col = {}
    for col in range(n):
        piv = None
        for i in range(row, m):
            if aug[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [v / pv for v in aug[row]]
        for i in range(m):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[row])]
        piv_of_col[col] = row
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for col, r in piv_of_col.items():
        x[col] = aug[r][n]
    return x


def smith_normal_form(a: Mat) -> List[int]:
    """Diagonal of the Smith normal form of a (divisibility chain, no transforms)."""
    mat = [row[:] for row in a]
    m = len(mat)
    n = len(mat[0]) if mat else 0
    diag: List[int] = []
    top = 0
    while top < min(m, n):
        # find smallest nonzero entry in the remaining block
        best = None
        for i in range(top, m):
            for j in range(top, n):
                v = abs(mat[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, bi, bj = best
        mat[top], mat[bi] = mat[bi], mat[top]
        for row in mat:
            row[top], row[bj] = row[bj], row[top]
        p = mat[top][top]
        dirty = False
        for i in range(top + 1, m):
            q = mat[i][top] // p
            if q:
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[top])]
            if mat[i][top]:
                dirty = True
        for j in range(top + 1, n):
            q = mat[top][j] // p
            if q:
                for row in mat:
                    row[j] -= q * row[top]
            if mat[top][j]:
                dirty = True
        if dirty:
            continue
        # ensure divisibility of the rest of the block
        p = abs(mat[top][top])
        offender = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if mat[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            mat[top] = [x + y for x, y in zip(mat[top], mat[offender])]
            continue
        diag.append(p)
        top += 1
    return diag


def torsion_from_snf(diag: List[int]) -> List[int]:
    return [d for d in diag if d not in (0, 1)]


def det_sign(a: Mat) -> int:
    """Sign of det for a square integer matrix (0 if singular)."""
    n = len(a)
    mat = [[Fraction(v) for v in row] for row in a]
    s = 1
    for col in range(n):
        piv = None
        for i in range(col, n):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            s = -s
        if mat[col][col] < 0:
            s = -s
        for i in range(col + 1, n):
            f = mat[i][col] / mat[col][col]
            if f:
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[col])]
    return s
