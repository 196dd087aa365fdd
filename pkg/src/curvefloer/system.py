"""A session holding a collection of curves with cached sub-configurations.

Products in the category are computed in the arrangement of exactly the
curves involved, so generators must be identified across configurations.  A
generator is keyed by (i, j, n): the n-th crossing of curves i and j in the
order along curve i (i < j system ids); self-crossings never graduate to
generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .arrangement import Configuration, build_configuration
from .chains import check_admissible, Admissible
from .curves import CurveError, CurveImmersion, intersections
from .surface import FlatSurface

GenKey = Tuple[int, int, int]


@dataclass(frozen=True)
class ObjectRef:
    """A curve object: a system curve with an orientation flag."""
    curve: int
    flag: bool = False


class CurveSystem:
    def __init__(self, surface: FlatSurface, curves: Sequence[CurveImmersion] = ()):
        self.surface = surface
        self.curves: List[CurveImmersion] = []
        self._configs: Dict[Tuple[int, ...], Tuple[Configuration, Dict[int, int]]] = {}
        self._crossings: Dict[Tuple[int, int], list] = {}
        for c in curves:
            self.add(c.materialize_orientation())

    def add(self, curve: CurveImmersion) -> int:
        curve = curve.materialize_orientation()
        for existing in self.curves:
            if existing.points == curve.points:
                raise CurveError("curve already present in the system")
        self.curves.append(curve)
        return len(self.curves) - 1

    def crossings(self, i: int, j: int):
        """Crossing records of curves i < j, ordered along curve i."""
        if i >= j:
            raise CurveError("crossings wants i < j")
        key = (i, j)
        if key not in self._crossings:
            self._crossings[key] = intersections(self.curves[i], self.curves[j])
        return self._crossings[key]

    def generators(self, i: int, j: int) -> List[GenKey]:
        a, b = min(i, j), max(i, j)
        return [(a, b, n) for n in range(len(self.crossings(a, b)))]

    def config_for(self, ids: Sequence[int]) -> Tuple[Configuration, Dict[int, int]]:
        key = tuple(sorted(set(ids)))
        if key not in self._configs:
            cfg = build_configuration(self.surface, [self.curves[i] for i in key])
            mapping = {sysid: k for k, sysid in enumerate(key)}
            self._configs[key] = (cfg, mapping)
        return self._configs[key]

    def admissible(self, ids: Sequence[int]) -> bool:
        cfg, _ = self.config_for(ids)
        return isinstance(check_admissible(cfg), Admissible)

    def vertex_of_gen(self, cfg: Configuration, mapping: Dict[int, int],
                      gen: GenKey) -> int:
        """Vertex id of a generator inside a configuration containing its pair."""
        i, j, n = gen
        point = self.crossings(i, j)[n].point
        for v in cfg.vertices:
            if v.point == point:
                return v.index
        raise CurveError(f"generator {gen} not in configuration")

    def gen_of_vertex(self, cfg: Configuration, mapping: Dict[int, int],
                      vertex: int) -> GenKey:
        v = cfg.vertices[vertex]
        inv = {k: sysid for sysid, k in mapping.items()}
        i, j = inv[v.curve_a], inv[v.curve_b]
        a, b = min(i, j), max(i, j)
        for n, rec in enumerate(self.crossings(a, b)):
            if rec.point == v.point:
                return (a, b, n)
        raise CurveError("vertex has no generator key")  # pragma: no cover

    def gen_degree(self, gen: GenKey, source: ObjectRef, target: ObjectRef) -> int:
        """Degree of a generator of CF(source, target)."""
        i, j, n = gen
        rec = self.crossings(i, j)[n]
        eps = rec.sign
        if {source.curve, target.curve} != {i, j}:
            raise CurveError("generator does not join the given objects")
        if (source.curve, target.curve) == (j, i):
            eps = -eps
        if source.flag:
            eps = -eps
        if target.flag:
            eps = -eps
        return 1 if eps > 0 else 0
