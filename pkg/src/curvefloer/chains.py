"""Two-chain lattice machinery: the subgroup H, admissibility, fiber enumeration.

H is the group of integer 2-chains with zero Euler measure whose boundary is a
linear combination of whole curves.  Its defining equations are, per crossing
vertex, the vanishing of the alternating quadrant sum (which is equivalent to
the boundary multiplicity being constant along each curve through that
vertex), together with the Euler measure row.

Admissibility (no nonzero nonnegative element of the real span of H) is
decided by exact rational LP; it guarantees compactness of the fibers
(x0 + H_R) meet the positive cone, which are enumerated by branch and bound
with exact per-coordinate LP bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .arrangement import Configuration
from .intlinalg import column_hermite, kernel_basis, mat_vec
from .simplex import AffineCone, Infeasible, Unbounded, solve_lp

F = Fraction


class InadmissibleError(Exception):
    pass


@dataclass(frozen=True)
class HLattice:
    basis: Tuple[Tuple[int, ...], ...]  # canonical row HNF

    @property
    def rank(self) -> int:
        return len(self.basis)


def quadrant_class_row(cfg: Configuration, vertex: int) -> List[int]:
    """Coefficients of the alternating quadrant sum at a vertex."""
    row = [0] * len(cfg.regions)
    for sec in cfg.sectors_of_vertex[vertex]:
        row[sec.region] += sec.label[0] * sec.label[1]
    return row


def constraint_matrix(cfg: Configuration) -> List[List[int]]:
    """Rows: one alternating-sum row per vertex, then the 4x Euler measure row."""
    rows = [quadrant_class_row(cfg, v.index) for v in cfg.vertices]
    rows.append(cfg.euler4_row())
    return rows


def _cached(cfg: Configuration, key: str, fn):
    store = getattr(cfg, "_chain_cache", None)
    if store is None:
        store = {}
        setattr(cfg, "_chain_cache", store)
    if key not in store:
        store[key] = fn()
    return store[key]


def compute_h_lattice(cfg: Configuration) -> HLattice:
    def build():
        rows = constraint_matrix(cfg)
        basis = kernel_basis(rows, n=len(cfg.regions))
        return HLattice(tuple(tuple(v) for v in basis))
    return _cached(cfg, "hlattice", build)


def hermite_factorization(cfg: Configuration):
    """Cached column Hermite form of the constraint matrix."""
    def build():
        rows = constraint_matrix(cfg)
        return rows, column_hermite(rows)
    return _cached(cfg, "hnf", build)


def solve_chain_system(cfg: Configuration, rhs: Sequence[int]) -> Optional[List[int]]:
    """One integer solution of the constraint system with the given right side."""
    rows, (h, u, pivots) = hermite_factorization(cfg)
    m = len(rows)
    n = len(rows[0])
    y = [0] * n
    resid = list(rhs)
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


@dataclass(frozen=True)
class Admissible:
    ok: bool = True


@dataclass(frozen=True)
class Inadmissible:
    witness: Tuple[int, ...]
    ok: bool = False


def check_admissible(cfg: Configuration):
    """Decide whether H_R meets the positive cone only at 0 (exact LP).

    Returns Admissible() or Inadmissible(witness) with an integer witness
    that is a nonzero nonnegative element of H.
    """
    def build():
        hl = compute_h_lattice(cfg)
        n = len(cfg.regions)
        k = hl.rank
        if k == 0:
            return Admissible()
        # feasibility: x = sum t_i b_i, x >= 0, sum x = 1 with t free.
        # variables: x (n), t+ (k), t- (k)
        a_eq: List[List[F]] = []
        b_eq: List[F] = []
        for i in range(n):
            row = [F(1) if j == i else F(0) for j in range(n)]
            row += [F(-hl.basis[t][i]) for t in range(k)]
            row += [F(hl.basis[t][i]) for t in range(k)]
            a_eq.append(row)
            b_eq.append(F(0))
        a_eq.append([F(1)] * n + [F(0)] * (2 * k))
        b_eq.append(F(1))
        try:
            _, sol = solve_lp([F(0)] * (n + 2 * k), a_eq, b_eq)
        except Infeasible:
            return Admissible()
        x = sol[:n]
        denom = 1
        for v in x:
            denom = denom * v.denominator // gcd(denom, v.denominator)
        ints = [int(v * denom) for v in x]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        return Inadmissible(tuple(ints))
    return _cached(cfg, "admissible", build)


def is_admissible(cfg: Configuration) -> bool:
    return isinstance(check_admissible(cfg), Admissible)


def enumerate_fiber(cfg: Configuration, x0: Sequence[int]) -> List[Tuple[int, ...]]:
    """All integer points of (x0 + H_R) intersected with the positive cone.

    Requires an admissible configuration (otherwise the fiber may be
    unbounded and enumeration would not terminate).
    """
    if not is_admissible(cfg):
        raise InadmissibleError("fiber enumeration requires an admissible configuration")
    hl = compute_h_lattice(cfg)
    n = len(cfg.regions)
    offset = [F(v) for v in x0]
    cols = [[F(hl.basis[t][i]) for i in range(n)] for t in range(hl.rank)]
    out: List[Tuple[int, ...]] = []
    _enumerate(offset, cols, out)
    results = sorted(set(out))
    # every enumerated point differs from x0 by an element of H
    for x in results:
        diff = [a - b for a, b in zip(x, x0)]
        if _coords_in_lattice(diff, hl) is None:
            raise AssertionError("fiber point outside x0 + H")  # pragma: no cover
    return results


def _coords_in_lattice(vec: Sequence[int], hl: HLattice) -> Optional[List[int]]:
    """Integer coordinates of vec in the (row HNF) basis of H, or None."""
    coords = []
    residual = list(vec)
    rows = [list(r) for r in hl.basis]
    for row in rows:
        piv = next((j for j, v in enumerate(row) if v != 0), None)
        if piv is None:
            continue
        if residual[piv] % row[piv] != 0:
            return None
        c = residual[piv] // row[piv]
        coords.append(c)
        if c:
            residual = [a - c * b for a, b in zip(residual, row)]
    if any(v != 0 for v in residual):
        return None
    return coords


def _enumerate(offset: List[F], cols: List[List[F]], out: List[Tuple[int, ...]]):
    n = len(offset)
    if not cols:
        xs = []
        for v in offset:
            if v.denominator != 1 or v < 0:
                return
            xs.append(int(v))
        out.append(tuple(xs))
        return
    cone = AffineCone(offset, cols)
    # choose a coordinate with nonconstant value and the narrowest exact range
    best = None
    for j in range(n):
        if all(col[j] == 0 for col in cols):
            if offset[j] < 0:
                return
            continue
        rng = cone.coordinate_range(j)
        if rng is None:
            return
        lo, hi = rng
        width = hi - lo
        if best is None or width < best[0]:
            best = (width, j, lo, hi)
    if best is None:
        _enumerate(offset, [], out)
        return
    _, j, lo, hi = best
    import math
    lo_i = math.ceil(lo)
    hi_i = math.floor(hi)
    for v in range(lo_i, hi_i + 1):
        restricted = _fix_coordinate(offset, cols, j, F(v))
        if restricted is None:
            continue
        new_offset, new_cols = restricted
        _enumerate(new_offset, new_cols, out)


def _fix_coordinate(offset: List[F], cols: List[List[F]], j: int, value: F):
    """Affine subspace with coordinate j pinned to value."""
    piv = None
    for t, col in enumerate(cols):
        if col[j] != 0:
            piv = t
            break
    if piv is None:
        return None if offset[j] != value else (offset, cols)
    pcol = cols[piv]
    scale = (value - offset[j]) / pcol[j]
    new_offset = [offset[i] + scale * pcol[i] for i in range(len(offset))]
    new_cols = []
    for t, col in enumerate(cols):
        if t == piv:
            continue
        f = col[j] / pcol[j]
        new_cols.append([col[i] - f * pcol[i] for i in range(len(col))])
    return new_offset, new_cols
