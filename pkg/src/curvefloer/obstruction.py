"""Unobstructedness check: null-homotopy plus immersed teardrop search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .arrangement import build_configuration
from .chains import Admissible, check_admissible
from .curves import CurveImmersion, extract_word, self_intersections
from .domains import PolygonDomain, enumerate_monogons


class AdmissibilityError(Exception):
    pass


@dataclass(frozen=True)
class Unobstructed:
    kind: str = "unobstructed"


@dataclass(frozen=True)
class NullHomotopic:
    kind: str = "null-homotopic"


@dataclass(frozen=True)
class FishtailFound:
    witness_chain: Tuple[int, ...]
    vertex: int
    kind: str = "fishtail"


def check_unobstructed(curve: CurveImmersion):
    """Classify a curve as Unobstructed, NullHomotopic, or FishtailFound.

    A curve is unobstructed when it is neither null-homotopic nor bounds an
    immersed one-cornered disk at one of its self-crossings (the corner taken
    convex).  The word test uses Dehn's algorithm; the teardrop search runs
    the domain enumeration on the single-curve configuration, which must be
    admissible for the enumeration to terminate.
    """
    geo = curve.materialize_orientation()
    word = extract_word(geo)
    relator = geo.surface.relator()
    from .words import is_null_homotopic
    if is_null_homotopic(word, relator):
        return NullHomotopic()
    if not self_intersections(geo):
        return Unobstructed()
    cfg = build_configuration(geo.surface, [geo])
    if not isinstance(check_admissible(cfg), Admissible):
        raise AdmissibilityError(
            "single-curve configuration is inadmissible; teardrop search "
            "would not terminate")
    for v in cfg.vertices:
        doms = enumerate_monogons(cfg, v.index)
        if doms:
            return FishtailFound(doms[0].chain, v.index)
    return Unobstructed()


def is_unobstructed(curve: CurveImmersion) -> bool:
    return isinstance(check_unobstructed(curve), Unobstructed)
