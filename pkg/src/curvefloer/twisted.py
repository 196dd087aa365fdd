"""Twisted complexes: curve tuples with upper-triangular degree-one morphisms.

The twisted differential and composition expand the structure maps over all
chains of nonzero delta entries; individual terms are higher products computed
in the arrangement of exactly the curves involved.  Quasi-isomorphism testing
is relative to an explicit battery of test curves: for each battery curve the
morphism complexes on both sides are assembled, the induced maps on integral
cohomology are computed, and the verdict records whether every induced map is
an isomorphism of abelian groups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .ainfinity import AInfinityError, higher_product
from .chains import InadmissibleError
from .curves import CurveError
from .floer import _homology_of, _mat_mul
from .intlinalg import kernel_basis, lattices_equal, row_hnf, smith_normal_form, solve_rational
from .system import CurveSystem, GenKey, ObjectRef

Component = Dict[GenKey, int]
Morphism = Dict[Tuple[int, int], Component]


class TwistedError(CurveError):
    pass


class NotClosed(TwistedError):
    pass


class BatteryInadmissible(TwistedError):
    pass


@dataclass(frozen=True)
class TwistedComplex:
    objects: Tuple[ObjectRef, ...]
    delta: Tuple[Tuple[Tuple[int, int], Tuple[Tuple[GenKey, int], ...]], ...] = ()

    def delta_map(self) -> Dict[Tuple[int, int], Component]:
        return {kl: dict(entries) for kl, entries in self.delta}

    @staticmethod
    def single(obj: ObjectRef) -> "TwistedComplex":
        return TwistedComplex((obj,), ())

    @staticmethod
    def build(objects: Sequence[ObjectRef], delta: Dict[Tuple[int, int], Component]):
        packed = tuple(sorted((kl, tuple(sorted(comp.items())))
                              for kl, comp in delta.items() if comp))
        return TwistedComplex(tuple(objects), packed)

    def curves(self) -> List[int]:
        return [o.curve for o in self.objects]


def _check_delta_shape(system: CurveSystem, T: TwistedComplex):
    for (k, l), comp in T.delta_map().items():
        if not k < l:
            raise TwistedError("delta must be strictly upper triangular")
        a, b = T.objects[k], T.objects[l]
        if a.curve == b.curve:
            raise TwistedError("delta between copies of one curve must vanish")
        for gen, coeff in comp.items():
            if coeff and system.gen_degree(gen, a, b) != 1:
                raise TwistedError("delta coefficients must sit in degree one")


def _chains_into(T: TwistedComplex, target: int):
    """Chains i0 < ... < target through nonzero delta entries (with deltas)."""
    dm = T.delta_map()
    out = [((target,), [])]
    frontier = [((target,), [])]
    while frontier:
        nxt = []
        for path, deltas in frontier:
            head = path[0]
            for (k, l), comp in dm.items():
                if l == head and comp:
                    item = ((k,) + path, [comp] + deltas)
                    nxt.append(item)
                    out.append(item)
        frontier = nxt
    return out


def _chains_between(T: TwistedComplex, start: int, end: int):
    """Chains start < ... < end (possibly empty when start == end)."""
    dm = T.delta_map()
    out = []
    if start == end:
        out.append(((start,), []))
    frontier = [((start,), [])]
    while frontier:
        nxt = []
        for path, deltas in frontier:
            head = path[-1]
            for (k, l), comp in dm.items():
                if k == head and comp:
                    item = (path + (l,), deltas + [comp])
                    nxt.append(item)
                    if l == end:
                        out.append(item)
        frontier = nxt
    return out


def _chains_from(T: TwistedComplex, start: int):
    dm = T.delta_map()
    out = [((start,), [])]
    frontier = [((start,), [])]
    while frontier:
        nxt = []
        for path, deltas in frontier:
            head = path[-1]
            for (k, l), comp in dm.items():
                if k == head and comp:
                    item = (path + (l,), deltas + [comp])
                    nxt.append(item)
                    out.append(item)
        frontier = nxt
    return out


def _accumulate(acc: Morphism, key: Tuple[int, int], add: Dict[GenKey, int], factor: int):
    if not add or factor == 0:
        return
    comp = acc.setdefault(key, {})
    for g, c in add.items():
        comp[g] = comp.get(g, 0) + factor * c
        if comp[g] == 0:
            del comp[g]
    if not comp:
        del acc[key]


def _expand_term(system: CurveSystem, objects: List[ObjectRef],
                 factors: List[Component]) -> Dict[GenKey, int]:
    """Multilinear expansion of one higher product over component dicts."""
    out: Dict[GenKey, int] = {}
    for combo in itertools.product(*[list(c.items()) for c in factors]):
        gens = [g for g, _ in combo]
        coeff = 1
        for _, c in combo:
            coeff *= c
        res = higher_product(system, objects, gens)
        for g, c in res.items():
            out[g] = out.get(g, 0) + coeff * c
            if out[g] == 0:
                del out[g]
    return out


def hat_m1(system: CurveSystem, A: TwistedComplex, B: TwistedComplex,
           F: Morphism) -> Morphism:
    """Twisted differential of a morphism element."""
    out: Morphism = {}
    chains_b_cache = {j: _chains_from(B, j) for j in range(len(B.objects))}
    chains_a_cache = {i: _chains_into(A, i) for i in range(len(A.objects))}
    for (i, j), comp in F.items():
        if not comp:
            continue
        for path_a, deltas_a in chains_a_cache[i]:
            for path_b, deltas_b in chains_b_cache[j]:
                objects = [A.objects[t] for t in path_a] + [B.objects[t] for t in path_b]
                factors = deltas_a + [comp] + deltas_b
                res = _expand_term(system, objects, factors)
                _accumulate(out, (path_a[0], path_b[-1]), res, 1)
    return out


def hat_m1_delta(system: CurveSystem, T: TwistedComplex) -> Morphism:
    """Maurer-Cartan sum of a twisted complex (expected zero)."""
    out: Morphism = {}
    n = len(T.objects)
    for k in range(n):
        for l in range(k + 1, n):
            for path, deltas in _chains_between(T, k, l):
                if len(path) < 2:
                    continue
                objects = [T.objects[t] for t in path]
                res = _expand_term(system, objects, deltas)
                _accumulate(out, (k, l), res, 1)
    return out


def validate_twisted(system: CurveSystem, T: TwistedComplex) -> None:
    _check_delta_shape(system, T)
    mc = hat_m1_delta(system, T)
    if mc:
        raise TwistedError(f"Maurer-Cartan sum does not vanish: {mc}")


def hat_m2(system: CurveSystem, A: TwistedComplex, B: TwistedComplex,
           C: TwistedComplex, G: Morphism, F: Morphism) -> Morphism:
    """Twisted composition of F in Mor(A,B) with G in Mor(B,C)."""
    out: Morphism = {}
    for (i, j), comp_f in F.items():
        for (jj, kk), comp_g in G.items():
            for path_b, deltas_b in _chains_between(B, j, jj):
                for path_a, deltas_a in _chains_into(A, i):
                    for path_c, deltas_c in _chains_from(C, kk):
                        objects = ([A.objects[t] for t in path_a]
                                   + [B.objects[t] for t in path_b]
                                   + [C.objects[t] for t in path_c])
                        factors = deltas_a + [comp_f] + deltas_b + [comp_g] + deltas_c
                        res = _expand_term(system, objects, factors)
                        _accumulate(out, (path_a[0], path_c[-1]), res, 1)
    return out


# -- morphism complexes --------------------------------------------------------


@dataclass
class MorComplex:
    system: CurveSystem
    A: TwistedComplex
    B: TwistedComplex
    basis: List[Tuple[int, int, GenKey]]
    degrees: List[int]
    d0: List[List[int]]
    d1: List[List[int]]

    def index(self, i, j, gen):
        return self.basis.index((i, j, gen))


def mor_complex(system: CurveSystem, A: TwistedComplex, B: TwistedComplex) -> MorComplex:
    basis: List[Tuple[int, int, GenKey]] = []
    degrees: List[int] = []
    for i, oa in enumerate(A.objects):
        for j, ob in enumerate(B.objects):
            if oa.curve == ob.curve:
                raise TwistedError("morphism complex needs transverse objects")
            for gen in system.generators(oa.curve, ob.curve):
                basis.append((i, j, gen))
                degrees.append(system.gen_degree(gen, oa, ob))
    by_deg = {0: [n for n, d in enumerate(degrees) if d == 0],
              1: [n for n, d in enumerate(degrees) if d == 1]}
    mats = {0: [[0] * len(by_deg[0]) for _ in range(len(by_deg[1]))],
            1: [[0] * len(by_deg[1]) for _ in range(len(by_deg[0]))]}
    pos_in_deg = {}
    for d in (0, 1):
        for col, n in enumerate(by_deg[d]):
            pos_in_deg[n] = col
    for n, (i, j, gen) in enumerate(basis):
        img = hat_m1(system, A, B, {(i, j): {gen: 1}})
        d = degrees[n]
        for (ii, jj), comp in img.items():
            for g2, coeff in comp.items():
                m = basis.index((ii, jj, g2))
                if degrees[m] != 1 - d:
                    raise TwistedError("twisted differential is not degree one")
                mats[d][pos_in_deg[m]][pos_in_deg[n]] += coeff
    mc = MorComplex(system, A, B, basis, degrees, mats[0], mats[1])
    _check_d2(mc)
    return mc


def _check_d2(mc: MorComplex):
    for first, second in ((mc.d0, mc.d1), (mc.d1, mc.d0)):
        prod = _mat_mul(second, first)
        if any(v for row in prod for v in row):
            raise TwistedError("twisted differential does not square to zero")


def mor_cohomology(mc: MorComplex):
    n0 = sum(1 for d in mc.degrees if d == 0)
    n1 = len(mc.degrees) - n0
    return {0: _homology_of(mc.d0, mc.d1, n0), 1: _homology_of(mc.d1, mc.d0, n1)}


def element_vector(mc: MorComplex, F: Morphism, degree: int) -> List[int]:
    by_deg = [n for n, d in enumerate(mc.degrees) if d == degree]
    vec = [0] * len(by_deg)
    for (i, j), comp in F.items():
        for gen, coeff in comp.items():
            n = mc.basis.index((i, j, gen))
            if mc.degrees[n] != degree:
                raise TwistedError("element is not homogeneous of that degree")
            vec[by_deg.index(n)] += coeff
    return vec


# -- constructions --------------------------------------------------------------


def cone(system: CurveSystem, alpha: ObjectRef, beta: ObjectRef,
         c: GenKey) -> TwistedComplex:
    """Two-term twisted complex alpha -> beta over a degree-one crossing."""
    if system.gen_degree(c, alpha, beta) != 1:
        raise TwistedError("cone needs a degree-one intersection point")
    T = TwistedComplex.build([alpha, beta], {(0, 1): {c: 1}})
    validate_twisted(system, T)
    return T


def dehn_twist_complex(system: CurveSystem, alpha: ObjectRef,
                       beta: ObjectRef) -> TwistedComplex:
    """Twisted complex quasi-isomorphic to the inverse twist of alpha about
    beta: alpha mapping to one beta summand per odd point of CF(alpha, beta)
    and one reversed-beta summand per odd point of CF(alpha, beta reversed)."""
    gens = system.generators(alpha.curve, beta.curve)
    cs = [g for g in gens if system.gen_degree(g, alpha, beta) == 1]
    beta_rev = ObjectRef(beta.curve, not beta.flag)
    bs = [g for g in gens if system.gen_degree(g, alpha, beta_rev) == 1]
    objects = [alpha] + [beta] * len(cs) + [beta_rev] * len(bs)
    delta: Dict[Tuple[int, int], Component] = {}
    for idx, g in enumerate(cs):
        delta[(0, 1 + idx)] = {g: 1}
    for idx, g in enumerate(bs):
        delta[(0, 1 + len(cs) + idx)] = {g: 1}
    T = TwistedComplex.build(objects, delta)
    validate_twisted(system, T)
    return T


# -- quasi-isomorphism battery ---------------------------------------------------


def admissible_battery(system: CurveSystem, complexes: Sequence[TwistedComplex],
                       candidate_words: Sequence[Tuple[int, ...]], need: int,
                       seed: int = 0) -> List[ObjectRef]:
    """Realize candidate words and keep those whose joint configuration with
    all object curves is admissible (hence every evaluation subtuple is)."""
    from .obstruction import is_unobstructed
    from .realize import RealizationError, realize_word
    object_ids = sorted({o.curve for T in complexes for o in T.objects})
    battery: List[ObjectRef] = []
    for k, word in enumerate(candidate_words):
        if len(battery) >= need:
            break
        for attempt in range(6):
            try:
                cur = realize_word(system.surface, word, seed=seed + 13 * k + attempt)
                if not is_unobstructed(cur):
                    continue
                cid = system.add(cur)
            except (RealizationError, CurveError):
                continue
            try:
                if system.admissible(object_ids + [cid]):
                    battery.append(ObjectRef(cid))
                    break
            except CurveError:
                continue
    if len(battery) < need:
        raise TwistedError(f"could not assemble a battery of {need} curves")
    return battery


@dataclass
class InducedMapVerdict:
    battery_curve: int
    side: str
    iso: bool
    detail: str


@dataclass
class QuasiIsoReport:
    verdicts: List[InducedMapVerdict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v.iso for v in self.verdicts)


def _coords_in_kernel(kernel: List[List[int]], vec: List[int]) -> List[int]:
    kt = [[kernel[t][i] for t in range(len(kernel))] for i in range(len(vec))]
    sol = solve_rational(kt, vec)
    if sol is None or any(v.denominator != 1 for v in sol):
        raise TwistedError("vector not in the kernel lattice")
    return [int(v) for v in sol]


def induced_cohomology_iso(dA, nA, dB, nB, phi) -> Tuple[bool, str]:
    """One-degree check: dA = (d_out, d_in) matrices at the spot, sizes nA,
    likewise for B; phi the chain-level matrix."""
    (dA_out, dA_in), (dB_out, dB_in) = dA, dB
    hA = _homology_of(dA_out, dA_in, nA)
    hB = _homology_of(dB_out, dB_in, nB)
    if hA != hB:
        return False, f"groups differ: {hA} vs {hB}"
    if nA == 0:
        return True, "zero groups"
    kerA = kernel_basis(dA_out if dA_out else [[0] * nA], n=nA)
    kerB = kernel_basis(dB_out if dB_out else [[0] * nB], n=nB) if nB else []
    if not kerA:
        return True, "trivial source"
    # image of phi on kernel basis, in kernel-of-B coordinates
    cols = []
    for v in kerA:
        img = [sum(phi[r][c] * v[c] for c in range(nA)) for r in range(nB)]
        cols.append(_coords_in_kernel(kerB, img) if kerB else [])
    kB = len(kerB)
    if kB == 0:
        return (hB[0] == 0 and not hB[1]), "target kernel trivial"
    # columns generating im(phi) plus im(dB_in) must span Z^kB for surjectivity
    gen_cols = [list(col) for col in cols]
    cols_in = len(dB_in[0]) if dB_in and dB_in[0] else 0
    for j in range(cols_in):
        img = [dB_in[i][j] for i in range(nB)]
        gen_cols.append(_coords_in_kernel(kerB, img))
    mat = [[gen_cols[j][i] for j in range(len(gen_cols))] for i in range(kB)]
    diag = smith_normal_form(mat)
    surj = len([d for d in diag if d != 0]) == kB and all(d == 1 for d in diag if d)
    if not surj:
        return False, "induced map not surjective"
    return True, "surjective with equal groups"


def _chain_map_matrices(mcA: MorComplex, mcB: MorComplex, apply_fn):
    """Matrices of a map Mor-A -> Mor-B per degree, with a chain-map check."""
    mats = {}
    for deg in (0, 1):
        src = [n for n, d in enumerate(mcA.degrees) if d == deg]
        dst = [n for n, d in enumerate(mcB.degrees) if d == deg]
        mat = [[0] * len(src) for _ in range(len(dst))]
        for col, n in enumerate(src):
            i, j, gen = mcA.basis[n]
            img = apply_fn({(i, j): {gen: 1}})
            for (ii, jj), comp in img.items():
                for g2, coeff in comp.items():
                    m = mcB.basis.index((ii, jj, g2))
                    if mcB.degrees[m] != deg:
                        raise TwistedError("induced map is not degree zero")
                    mat[dst.index(m)][col] += coeff
        mats[deg] = mat
    # chain map up to sign: dB phi = +- phi dA on both degrees
    def dense(mat, rows, cols):
        if not mat or not any(mat):
            return [[0] * cols for _ in range(rows)]
        return mat

    ok_plus = True
    ok_minus = True
    for deg in (0, 1):
        nA = sum(1 for d in mcA.degrees if d == deg)
        nB1 = sum(1 for d in mcB.degrees if d == 1 - deg)
        dA = mcA.d0 if deg == 0 else mcA.d1
        dB = mcB.d0 if deg == 0 else mcB.d1
        lhs = dense(_mat_mul(dB, mats[deg]), nB1, nA)
        rhs = dense(_mat_mul(mats[1 - deg], dA), nB1, nA)
        for i in range(nB1):
            for j in range(nA):
                if lhs[i][j] != rhs[i][j]:
                    ok_plus = False
                if lhs[i][j] != -rhs[i][j]:
                    ok_minus = False
    if not (ok_plus or ok_minus):
        raise TwistedError("induced map is not a chain map")
    return mats


def quasi_iso_test(system: CurveSystem, A: TwistedComplex, B: TwistedComplex,
                   F: Morphism, battery: Sequence[ObjectRef]) -> QuasiIsoReport:
    """Battery quasi-isomorphism test for a closed degree-zero morphism F.

    For each battery curve g the maps hat_m2(F, .) : Mor(g, A) -> Mor(g, B)
    and hat_m2(., F) : Mor(B, g) -> Mor(A, g) are required to induce
    isomorphisms on integral cohomology in both degrees.  A pass is relative
    to the battery; a failure is conclusive.
    """
    closed = hat_m1(system, A, B, F)
    if closed:
        raise NotClosed(f"morphism has nonzero differential: {closed}")
    report = QuasiIsoReport()
    for gamma in battery:
        G = TwistedComplex.single(gamma)
        try:
            mcGA = mor_complex(system, G, A)
            mcGB = mor_complex(system, G, B)
            mats = _chain_map_matrices(
                mcGA, mcGB, lambda el: hat_m2(system, G, A, B, F, el))
            ok_all = True
            details = []
            for deg in (0, 1):
                nA = sum(1 for d in mcGA.degrees if d == deg)
                nB = sum(1 for d in mcGB.degrees if d == deg)
                dA = (mcGA.d0, mcGA.d1) if deg == 0 else (mcGA.d1, mcGA.d0)
                dB = (mcGB.d0, mcGB.d1) if deg == 0 else (mcGB.d1, mcGB.d0)
                ok, why = induced_cohomology_iso(dA, nA, dB, nB, mats[deg])
                ok_all = ok_all and ok
                details.append(f"deg{deg}: {why}")
            report.verdicts.append(InducedMapVerdict(gamma.curve, "left", ok_all,
                                                     "; ".join(details)))
            mcBG = mor_complex(system, B, G)
            mcAG = mor_complex(system, A, G)
            mats_r = _chain_map_matrices(
                mcBG, mcAG, lambda el: hat_m2(system, A, B, G, el, F))
            ok_all = True
            details = []
            for deg in (0, 1):
                nA_ = sum(1 for d in mcBG.degrees if d == deg)
                nB_ = sum(1 for d in mcAG.degrees if d == deg)
                dA_ = (mcBG.d0, mcBG.d1) if deg == 0 else (mcBG.d1, mcBG.d0)
                dB_ = (mcAG.d0, mcAG.d1) if deg == 0 else (mcAG.d1, mcAG.d0)
                ok, why = induced_cohomology_iso(dA_, nA_, dB_, nB_, mats_r[deg])
                ok_all = ok_all and ok
                details.append(f"deg{deg}: {why}")
            report.verdicts.append(InducedMapVerdict(gamma.curve, "right", ok_all,
                                                     "; ".join(details)))
        except InadmissibleError as exc:
            raise BatteryInadmissible(str(exc))
    return report
