"""Higher products by convex polygon counting, the associativity equations,
and the combinatorial index and Maslov diagnostics."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arrangement import Configuration
from .curves import CurveError
from .domains import PolygonDomain, enumerate_polygons
from .exactgeom import Pt, ccw_between, cross, neg, sign
from .floer import domain_sign
from .system import CurveSystem, GenKey, ObjectRef


class AInfinityError(CurveError):
    pass


def higher_product(system: CurveSystem, objects: Sequence[ObjectRef],
                   inputs: Sequence[GenKey],
                   collect_domains: Optional[list] = None) -> Dict[GenKey, int]:
    """m_k evaluated on composable generators.

    objects = (c_0, ..., c_k); inputs = (p_{0,1}, ..., p_{k-1,k}); the result
    is a formal integer combination of generators of CF(c_0, c_k).  The curves
    of the tuple must be distinct and their collection admissible.
    """
    k = len(objects) - 1
    if len(inputs) != k or k < 1:
        raise AInfinityError("m_k needs k+1 objects and k inputs")
    ids = [o.curve for o in objects]
    if len(set(ids)) != len(ids):
        raise AInfinityError("tuple curves must be pairwise distinct")
    for i, gen in enumerate(inputs):
        if {ids[i], ids[i + 1]} != {gen[0], gen[1]}:
            raise AInfinityError(f"input {i} does not join objects {i},{i+1}")
    cfg, mapping = system.config_for(ids)
    order = [mapping[i] for i in ids]
    flags = [o.flag for o in objects]
    in_vids = [system.vertex_of_gen(cfg, mapping, g) for g in inputs]
    out: Dict[GenKey, int] = {}
    for out_gen in system.generators(ids[0], ids[k]):
        out_vid = system.vertex_of_gen(cfg, mapping, out_gen)
        if k == 1 and out_vid == in_vids[0]:
            continue
        doms = enumerate_polygons(cfg, order, in_vids, out_vid)
        coeff = 0
        for dom in doms:
            coeff += dom.count * domain_sign(cfg, dom, flags)
            if collect_domains is not None:
                collect_domains.append((cfg, dom))
        if coeff:
            out[out_gen] = out.get(out_gen, 0) + coeff
    return {g: c for g, c in out.items() if c}


def differential(system: CurveSystem, source: ObjectRef, target: ObjectRef,
                 gen: GenKey) -> Dict[GenKey, int]:
    """m_1 on a generator of CF(source, target)."""
    return higher_product(system, [source, target], [gen])


def _combine(acc: Dict[GenKey, int], add: Dict[GenKey, int], factor: int):
    for g, c in add.items():
        acc[g] = acc.get(g, 0) + factor * c
        if acc[g] == 0:
            del acc[g]


@dataclass
class AInfinityReport:
    tuple_objects: Tuple[ObjectRef, ...]
    checked: int
    failures: List[Tuple]
    nonvacuous: int

    @property
    def ok(self) -> bool:
        return not self.failures


def a_infinity_sum(system: CurveSystem, objects: Sequence[ObjectRef],
                   inputs: Sequence[GenKey]) -> Dict[GenKey, int]:
    """The full associativity sum for one input tuple (expected zero).

    Terms: for every inner length t and offset s, the inner product applied to
    inputs s+1..s+t feeds the outer product, weighted by (-1)^(s + sum of the
    degrees of the first s inputs).
    """
    k = len(inputs)
    total: Dict[GenKey, int] = {}
    degs = [system.gen_degree(inputs[i], objects[i], objects[i + 1]) for i in range(k)]
    for t in range(1, k + 1):
        for s in range(0, k - t + 1):
            inner_objects = objects[s:s + t + 1]
            inner_inputs = inputs[s:s + t]
            inner = higher_product(system, inner_objects, inner_inputs)
            if not inner:
                continue
            outer_objects = list(objects[:s + 1]) + list(objects[s + t:])
            koszul = (s + sum(degs[:s])) % 2
            factor = -1 if koszul else 1
            for mid_gen, mid_coeff in inner.items():
                outer_inputs = list(inputs[:s]) + [mid_gen] + list(inputs[s + t:])
                outer = higher_product(system, outer_objects, outer_inputs)
                _combine(total, outer, factor * mid_coeff)
    return total


def check_a_infinity(system: CurveSystem, objects: Sequence[ObjectRef],
                     max_k: Optional[int] = None) -> AInfinityReport:
    """Evaluate the associativity equation on every generator tuple of an
    admissible collection; report the (expected-zero) sums."""
    k = len(objects) - 1
    if max_k is not None and k > max_k:
        raise AInfinityError("tuple longer than max_k")
    ids = [o.curve for o in objects]
    gen_lists = [system.generators(ids[i], ids[i + 1]) for i in range(k)]
    import itertools
    failures = []
    checked = 0
    nonvacuous = 0
    for combo in itertools.product(*gen_lists):
        total = a_infinity_sum(system, objects, list(combo))
        checked += 1
        if _had_terms(system, objects, combo):
            nonvacuous += 1
        if total:
            failures.append((combo, total))
    return AInfinityReport(tuple(objects), checked, failures, nonvacuous)


def _had_terms(system, objects, inputs) -> bool:
    """True when at least one inner product in the sum is nonzero."""
    k = len(inputs)
    for t in range(1, k + 1):
        for s in range(0, k - t + 1):
            inner = higher_product(system, objects[s:s + t + 1], inputs[s:s + t])
            if inner:
                return True
    return False


# -- index and Maslov diagnostics ---------------------------------------------


def combinatorial_index(cfg: Configuration, dom: PolygonDomain) -> Fraction:
    """2 e(u) - (n-2)/2 for an n-cornered domain."""
    return dom.combinatorial_index(cfg)


def _domain_direction_slots(cfg: Configuration, dom: PolygonDomain) -> List[List[Pt]]:
    slots = []
    for slot, portion in enumerate(dom.portions):
        sigma = dom.sigmas[slot]
        dirs: List[Pt] = []
        for aid in portion:
            segs = cfg.arcs[aid].segments
            ordered = segs if sigma == 1 else tuple(reversed(segs))
            for seg in ordered:
                d = (seg[1][0] - seg[0][0], seg[1][1] - seg[0][1])
                dirs.append(d if sigma == 1 else neg(d))
        slots.append(dirs)
    return slots


def maslov_index(cfg: Configuration, dom: PolygonDomain) -> Tuple[int, int, int]:
    """(m_X, n_z, mu) for a bigon domain.

    m_X is the degree in RP1 of the boundary tangent-line loop in the flat
    trivialization.  With the direction loop completed through the convex
    corner turns, the line loop has degree twice the exact turning number T of
    the boundary; the two corner completions toward the line loop each shed a
    half turn, so m_X = 2T - 1.  T is computed by exact signed crossings of a
    reference direction; n_z is the multiplicity at the cone point; and
    mu = m_X + (4 - 4g) n_z.
    """
    if dom.k != 1:
        raise AInfinityError("maslov index is defined here for bigon domains")
    slots = _domain_direction_slots(cfg, dom)
    dirs = [d for slot in slots for d in slot]
    from .curves import turning_number
    t = turning_number(dirs)
    m_x = 2 * t - 1
    n_z = dom.chain[cfg.cone_region]
    g = cfg.surface.genus
    mu = m_x + (4 - 4 * g) * n_z
    return m_x, n_z, mu
