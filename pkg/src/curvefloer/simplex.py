"""Exact rational linear programming via two-phase primal simplex.

Bland's anti-cycling rule throughout, all arithmetic in Fractions.  Problems
here are small (tens of variables), so a dense tableau is plenty.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

F = Fraction


class Infeasible(Exception):
    pass


class Unbounded(Exception):
    pass


def _pivot(tab: List[List[F]], basis: List[int], row: int, col: int) -> None:
    pr = tab[row]
    pv = pr[col]
    tab[row] = [v / pv for v in pr]
    pr = tab[row]
    for i, r in enumerate(tab):
        if i != row and r[col] != 0:
            f = r[col]
            tab[i] = [a - f * b for a, b in zip(r, pr)]
    basis[row] = col


def _simplex_core(tab: List[List[F]], basis: List[int], ncols: int) -> None:
    """Minimize with objective in the last tableau row; Bland's rule."""
    while True:
        obj = tab[-1]
        col = None
        for j in range(ncols):
            if obj[j] < 0:
                col = j
                break
        if col is None:
            return
        row = None
        best = None
        for i in range(len(tab) - 1):
            a = tab[i][col]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best = ratio
                    row = i
        if row is None:
            raise Unbounded()
        _pivot(tab, basis, row, col)


def solve_lp(c: Sequence, a_eq: Sequence[Sequence], b_eq: Sequence) -> Tuple[F, List[F]]:
    """min c.x  s.t.  a_eq @ x = b_eq, x >= 0.  Returns (optimum, x).

    Raises Infeasible or Unbounded.
    """
    m = len(a_eq)
    n = len(c)
    a = [[F(v) for v in row] for row in a_eq]
    b = [F(v) for v in b_eq]
    for i in range(m):
        if b[i] < 0:
            a[i] = [-v for v in a[i]]
            b[i] = -b[i]
    # phase 1: artificials
    tab: List[List[F]] = []
    for i in range(m):
        row = a[i][:] + [F(1) if j == i else F(0) for j in range(m)] + [b[i]]
        tab.append(row)
    obj = [F(0)] * (n + m) + [F(0)]
    for j in range(n + m):
        s = sum(tab[i][j] for i in range(m))
        if j >= n:
            obj[j] = F(1) - s
        else:
            obj[j] = -s
    obj[-1] = -sum(b)
    tab.append(obj)
    basis = [n + i for i in range(m)]
    _simplex_core(tab, basis, n + m)
    if -tab[-1][-1] != 0:
        raise Infeasible()
    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            piv = None
            for j in range(n):
                if tab[i][j] != 0:
                    piv = j
                    break
            if piv is not None:
                _pivot(tab, basis, i, piv)
    # drop artificial columns and redundant rows
    rows = [i for i in range(m) if basis[i] < n]
    newtab = [[tab[i][j] for j in range(n)] + [tab[i][-1]] for i in rows]
    newbasis = [basis[i] for i in rows]
    # phase 2 objective
    obj = [F(v) for v in c] + [F(0)]
    for i, bi in enumerate(newbasis):
        f = obj[bi]
        if f:
            obj = [x - f * y for x, y in zip(obj, newtab[i])]
    newtab.append(obj)
    _simplex_core(newtab, newbasis, n)
    x = [F(0)] * n
    for i, bi in enumerate(newbasis):
        x[bi] = newtab[i][-1]
    return _recompute_obj(c, x), x


def _recompute_obj(c: Sequence, x: List[F]) -> F:
    return sum(F(ci) * xi for ci, xi in zip(c, x))


def feasible_point(a_eq: Sequence[Sequence], b_eq: Sequence, n: int) -> Optional[List[F]]:
    """A nonnegative solution of a_eq @ x = b_eq, or None."""
    try:
        _, x = solve_lp([F(0)] * n, a_eq, b_eq)
        return x
    except Infeasible:
        return None


class AffineCone:
    """The set {x = x0 + B t : x >= 0} with exact min/max of coordinates.

    B columns span the direction space; x0 is rational.  Used for bounding
    integer-point enumeration in lattice fibers.
    """

    def __init__(self, x0: Sequence, basis_cols: Sequence[Sequence]):
        self.x0 = [F(v) for v in x0]
        self.n = len(self.x0)
        self.cols = [[F(v) for v in col] for col in basis_cols]
        self.k = len(self.cols)

    def _standard(self, extra_eq: List[Tuple[List[F], F]]):
        """Variables: t+ (k), t- (k), s (n).  Equations: B t+ - B t- - s = -x0,
        plus extra equations in t."""
        k, n = self.k, self.n
        a: List[List[F]] = []
        b: List[F] = []
        for i in range(n):
            row = [self.cols[j][i] for j in range(k)] + \
                  [-self.cols[j][i] for j in range(k)] + \
                  [F(-1) if s == i else F(0) for s in range(n)]
            a.append(row)
            b.append(-self.x0[i])
        for coeffs, rhs in extra_eq:
            row = list(coeffs) + [-v for v in coeffs] + [F(0)] * n
            a.append(row)
            b.append(rhs)
        return a, b

    def coordinate_range(self, i: int, extra_eq=()) -> Optional[Tuple[F, F]]:
        """Exact [min, max] of x_i over the polytope, or None if empty.

        Raises Unbounded if the polytope is unbounded in that coordinate.
        """
        extra = list(extra_eq)
        a, b = self._standard(extra)
        k, n = self.k, self.n
        # x_i = x0_i + sum_j B_ij t_j
        c = [self.cols[j][i] for j in range(k)] + \
            [-self.cols[j][i] for j in range(k)] + [F(0)] * n
        try:
            lo, _ = solve_lp(c, a, b)
        except Infeasible:
            return None
        hi, _ = solve_lp([-v for v in c], a, b)
        return self.x0[i] + lo, self.x0[i] - hi
