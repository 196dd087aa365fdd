"""Floer complexes of curve pairs: graded generators, differential, cohomology."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arrangement import Configuration
from .chains import check_admissible, Inadmissible, InadmissibleError, is_admissible
from .curves import CurveError
from .domains import PolygonDomain, enumerate_polygons
from .intlinalg import kernel_basis, smith_normal_form, solve_rational, torsion_from_snf


class FloerError(CurveError):
    pass


@dataclass(frozen=True)
class Generator:
    vertex: int
    degree: int  # 0 or 1


def generator_degree(cfg: Configuration, vertex: int, a: int, b: int,
                     flag_a: bool = False, flag_b: bool = False) -> int:
    """Degree of an intersection point in CF(a, b): even iff the crossing sign
    is negative in the (a, b) frame with the given orientation flags."""
    from .domains import tuple_sign
    eps = tuple_sign(cfg, vertex, a, b)
    if flag_a:
        eps = -eps
    if flag_b:
        eps = -eps
    return 1 if eps > 0 else 0


def grade_generators(cfg: Configuration, a: int, b: int,
                     flag_a: bool = False, flag_b: bool = False) -> List[Generator]:
    out = []
    for v in cfg.vertices:
        if {v.curve_a, v.curve_b} == {a, b} and a != b:
            out.append(Generator(v.index, generator_degree(cfg, v.index, a, b, flag_a, flag_b)))
    out.sort(key=lambda g: g.vertex)
    return out


def domain_sign(cfg: Configuration, dom: PolygonDomain,
                flags: Sequence[bool]) -> int:
    """(-1)^{s(u)} for a counted polygon.

    s(u) counts marked-point passages of the boundary (with multiplicity) plus
    one for each odd-degree corner point p_{i,j} at which the boundary runs
    against the oriented curve gamma_j (the later curve of the corner's pair
    in the tuple order).
    """
    order = dom.tuple_order
    k = dom.k
    s = dom.marked_passes(cfg)
    # corners: output = p_{0,k} tests curve order[k]; input i = p_{i-1,i}
    # tests order[i]
    tests = [(dom.output, k)]
    for i, q in enumerate(dom.inputs):
        tests.append((q, i + 1))
    for vertex, slot in tests:
        if vertex == dom.output:
            ca, cb = order[0], order[k]
        else:
            ca, cb = order[slot - 1], order[slot]
        deg = generator_degree(cfg, vertex, ca, cb,
                               flags[_pos(order, ca)], flags[_pos(order, cb)])
        if deg == 1:
            sigma_eff = dom.sigmas[slot] * (-1 if flags[slot] else 1)
            if sigma_eff == -1:
                s += 1
    return -1 if s % 2 else 1


def _pos(order, curve):
    return order.index(curve)


@dataclass
class FloerComplex:
    """Z/2-graded complex over Z for an ordered admissible pair."""
    cfg: Configuration
    source: int
    target: int
    flag_source: bool
    flag_target: bool
    generators: List[Generator]
    d0: List[List[int]]  # degree 0 -> degree 1
    d1: List[List[int]]  # degree 1 -> degree 0

    @property
    def gens_by_degree(self) -> Dict[int, List[Generator]]:
        return {0: [g for g in self.generators if g.degree == 0],
                1: [g for g in self.generators if g.degree == 1]}

    def total_rank(self) -> Tuple[int, int]:
        by = self.gens_by_degree
        return len(by[0]), len(by[1])


def enumerate_bigons(cfg: Configuration, p: int, q: int, a: int, b: int) -> List[PolygonDomain]:
    """Bigon domains from p to q for the ordered pair (a, b)."""
    return enumerate_polygons(cfg, [a, b], [p], q)


def build_floer_complex(cfg: Configuration, a: int, b: int,
                        flag_a: bool = False, flag_b: bool = False) -> FloerComplex:
    """Assemble CF(a, b) with its signed bigon-count differential; checks that
    the differential has degree one and squares to zero."""
    verdict = check_admissible(cfg)
    if isinstance(verdict, Inadmissible):
        raise InadmissibleError("floer complex needs an admissible configuration")
    gens = grade_generators(cfg, a, b, flag_a, flag_b)
    by_deg = {0: [g for g in gens if g.degree == 0], 1: [g for g in gens if g.degree == 1]}
    index_in_deg = {}
    for d in (0, 1):
        for i, g in enumerate(by_deg[d]):
            index_in_deg[g.vertex] = i
    d_mat = {0: [[0] * len(by_deg[0]) for _ in range(len(by_deg[1]))],
             1: [[0] * len(by_deg[1]) for _ in range(len(by_deg[0]))]}
    flags = [flag_a, flag_b]
    for p in gens:
        for q in gens:
            if p.vertex == q.vertex:
                continue
            doms = enumerate_bigons(cfg, p.vertex, q.vertex, a, b)
            if not doms:
                continue
            if q.degree != (p.degree + 1) % 2:
                raise FloerError(
                    f"bigon from degree {p.degree} to degree {q.degree}")
            coeff = 0
            for dom in doms:
                if 4 * dom.combinatorial_index(cfg) != 4:
                    raise FloerError("counted bigon has index != 1")
                coeff += dom.count * domain_sign(cfg, dom, flags)
            if coeff:
                d_mat[p.degree][index_in_deg[q.vertex]][index_in_deg[p.vertex]] += coeff
    fc = FloerComplex(cfg, a, b, flag_a, flag_b, gens, d_mat[0], d_mat[1])
    _assert_d_squared_zero(fc)
    return fc


def _mat_mul(a, b):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            if a[i][t]:
                for j in range(m):
                    out[i][j] += a[i][t] * b[t][j]
    return out


def _assert_d_squared_zero(fc: FloerComplex):
    for first, second in ((fc.d0, fc.d1), (fc.d1, fc.d0)):
        prod = _mat_mul(second, first)
        if any(v != 0 for row in prod for v in row):
            raise FloerError("d squared is nonzero")


def _homology_of(d_out, d_in, n_here):
    """Homology at a spot: ker(d_out)/im(d_in) over Z as (rank, torsion)."""
    if n_here == 0:
        return (0, [])
    a = d_out if d_out else [[0] * n_here]
    kernel = kernel_basis(a, n=n_here)
    if not kernel:
        return (0, [])
    img_cols = []
    cols_in = len(d_in[0]) if d_in and d_in[0] else 0
    for j in range(cols_in):
        img_cols.append([d_in[i][j] for i in range(n_here)])
    if not img_cols:
        return (len(kernel), [])
    # coordinates of image vectors in the (saturated) kernel basis
    kt = [[kernel[t][i] for t in range(len(kernel))] for i in range(n_here)]
    coord_cols = []
    for col in img_cols:
        sol = solve_rational(kt, col)
        if sol is None:
            raise FloerError("image not inside kernel")  # pragma: no cover
        if any(v.denominator != 1 for v in sol):
            raise FloerError("image has non-integer kernel coordinates")  # pragma: no cover
        coord_cols.append([int(v) for v in sol])
    q = [[coord_cols[j][i] for j in range(len(coord_cols))] for i in range(len(kernel))]
    diag = smith_normal_form(q)
    rank_img = len([d for d in diag if d != 0])
    return (len(kernel) - rank_img, torsion_from_snf(diag))


def cohomology(fc: FloerComplex) -> Dict[int, Tuple[int, List[int]]]:
    """Per-degree (free rank, torsion divisors) of HF."""
    n0 = len([g for g in fc.generators if g.degree == 0])
    n1 = len(fc.generators) - n0
    h0 = _homology_of(fc.d0, fc.d1, n0)
    h1 = _homology_of(fc.d1, fc.d0, n1)
    return {0: h0, 1: h1}


def hf_summary(fc: FloerComplex):
    h = cohomology(fc)
    return {deg: {"rank": h[deg][0], "torsion": h[deg][1]} for deg in (0, 1)}


def total_hf_rank(fc: FloerComplex) -> int:
    h = cohomology(fc)
    return h[0][0] + h[1][0]


def euler_characteristic_cf(fc: FloerComplex) -> int:
    n0, n1 = fc.total_rank()
    return n0 - n1
