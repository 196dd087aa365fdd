"""Mapping classes as twist words acting on curves, and the faithfulness battery.

A twist about a stored curve acts on crossing words: walking along the moved
curve, each crossing with the twist curve splices in a full copy of the twist
curve's word, rotated to start at the crossing and powered by the crossing
sign.  The rewritten word is reduced and re-realized; the homology
transvection [a] + power * (a . t) [t] is asserted on every application.

Floer ranks of pairs are computed in admissible position; for a disjoint pair
the values follow the disjointness dichotomy: rank two split across degrees
for an isotopic pair, zero otherwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .arrangement import build_configuration
from .chains import Admissible, check_admissible
from .curves import (
    CurveError,
    CurveImmersion,
    CurvePos,
    extract_word,
    homology_class,
    intersections,
    winding_number,
)
from .floer import build_floer_complex, hf_summary
from .obstruction import is_unobstructed
from .realize import RealizationError, realize_word
from .words import cyclic_reduce, cyclic_words_equal, dehn_reduce, invert


class MCGError(CurveError):
    pass


@dataclass(frozen=True)
class MappingClassWord:
    """Word in the stored twist generators: ((generator id, exponent), ...)."""
    letters: Tuple[Tuple[int, int], ...]

    def __str__(self):
        return " ".join(f"t{g + 1}^{e}" if e != 1 else f"t{g + 1}"
                        for g, e in self.letters) or "id"


def parse_mcg_word(text: str, num_generators: int) -> MappingClassWord:
    """Parse the tiny syntax "t1^2 t5^-1 t2"."""
    text = text.strip()
    if not text or text == "id":
        return MappingClassWord(())
    items = []
    for tok in text.split():
        m = re.fullmatch(r"t(\d+)(\^(-?\d+))?", tok)
        if not m:
            raise MCGError(f"bad twist token {tok!r}")
        gid = int(m.group(1)) - 1
        exp = int(m.group(3)) if m.group(3) else 1
        if not 0 <= gid < num_generators:
            raise MCGError(f"generator t{gid + 1} out of range")
        if exp:
            items.append((gid, exp))
    return MappingClassWord(tuple(items))


def _word_events(curve: CurveImmersion) -> List[Tuple[CurvePos, int]]:
    """(position, letter) of each side crossing, in geometric order."""
    s = curve.surface
    return [(pos, s.crossing_letter(side)) for pos, side in curve.exit_events()]


def _twist_rotation(twist: CurveImmersion, pos_on_twist: CurvePos) -> int:
    """How many crossing letters of the twist curve precede a point on it."""
    count = 0
    for pos, _ in _word_events(twist):
        if pos < pos_on_twist:
            count += 1
    return count


def twist_word(curve: CurveImmersion, twist: CurveImmersion, power: int) -> Tuple[int, ...]:
    """Crossing word of the curve after twisting about the stored twist curve."""
    geo = curve.materialize_orientation()
    tw = twist.materialize_orientation()
    if geo.points == tw.points:
        # a twist fixes its own core curve up to isotopy
        return cyclic_reduce(tuple(l for _, l in _word_events(geo)))
    crossings = intersections(geo, tw)
    t_letters = tuple(l for _, l in _word_events(tw))
    events: List[Tuple[CurvePos, Tuple[int, ...]]] = []
    for pos, letter in _word_events(geo):
        events.append((pos, (letter,)))
    for rec in crossings:
        rot = _twist_rotation(tw, rec.pos_b)
        rotated = t_letters[rot:] + t_letters[:rot]
        piece = rotated if rec.sign > 0 else invert(rotated)
        if power < 0:
            piece = invert(piece)
        events.append((rec.pos_a, piece * abs(power)))
    events.sort(key=lambda t: t[0])
    word: List[int] = []
    for _, piece in events:
        word.extend(piece)
    return cyclic_reduce(tuple(word))


def apply_twist(curve: CurveImmersion, twist: CurveImmersion, power: int,
                seed: int = 0) -> CurveImmersion:
    """Geometric representative of the twisted curve, with the homology
    transvection asserted."""
    geo = curve.materialize_orientation()
    tw = twist.materialize_orientation()
    if geo.points == tw.points:
        return geo
    word = twist_word(geo, tw, power)
    rel = geo.surface.relator()
    word = dehn_reduce(word, rel)
    if not word:
        raise MCGError("twisted curve became null-homotopic")  # pragma: no cover
    algebraic = sum(r.sign for r in intersections(geo, tw))
    expect = tuple(a + power * algebraic * t
                   for a, t in zip(homology_class(geo), homology_class(tw)))
    last: Optional[Exception] = None
    for attempt in range(24):
        try:
            cand = realize_word(geo.surface, word, seed=seed + attempt)
        except RealizationError as exc:
            last = exc
            continue
        if homology_class(cand) != expect:
            raise MCGError("homology transvection failed")  # pragma: no cover
        return cand
    raise MCGError(f"could not realize twisted word {word}: {last}")


def apply_mapping_class(mcw: MappingClassWord, curve: CurveImmersion,
                        generators: Sequence[CurveImmersion], seed: int = 0) -> CurveImmersion:
    """Apply a twist word (leftmost letter acts last)."""
    result = curve.materialize_orientation()
    for gid, exp in reversed(mcw.letters):
        step = 1 if exp > 0 else -1
        for _ in range(abs(exp)):
            result = apply_twist(result, generators[gid], step, seed=seed)
    return result


# -- floer ranks of pairs -------------------------------------------------------


def hf_of_pair(a: CurveImmersion, b: CurveImmersion) -> Dict[int, dict]:
    """Per-degree (rank, torsion) of HF for a pair in admissible position.

    A disjoint pair is resolved through the disjointness dichotomy: isotopic
    curves (equal reduced cyclic words) contribute one generator in each
    degree, non-isotopic disjoint curves contribute nothing.
    """
    ga = a.materialize_orientation()
    gb = b.materialize_orientation()
    recs = intersections(ga, gb)
    if not recs:
        rel = ga.surface.relator()
        wa = dehn_reduce(extract_word(ga), rel)
        wb = dehn_reduce(extract_word(gb), rel)
        if cyclic_words_equal(wa, wb):
            return {0: {"rank": 1, "torsion": []}, 1: {"rank": 1, "torsion": []}}
        return {0: {"rank": 0, "torsion": []}, 1: {"rank": 0, "torsion": []}}
    cfg = build_configuration(ga.surface, [ga, gb])
    fc = build_floer_complex(cfg, 0, 1)
    return hf_summary(fc)


def geometric_intersection_number(a: CurveImmersion, b: CurveImmersion) -> Dict[str, int]:
    """Total free rank of HF (the geometric intersection number in admissible
    position) alongside the raw crossing count of the given representatives."""
    h = hf_of_pair(a, b)
    return {"hf_rank": h[0]["rank"] + h[1]["rank"],
            "raw_crossings": len(intersections(a.materialize_orientation(),
                                               b.materialize_orientation()))}


# -- faithfulness battery -------------------------------------------------------


@dataclass
class BatteryItem:
    name: str
    first: CurveImmersion
    second: CurveImmersion


@dataclass
class FaithfulnessReport:
    verdict: str
    witness: Optional[str]
    rows: List[dict] = field(default_factory=list)


def default_battery() -> List[BatteryItem]:
    from .corpus import standard_family, disjoint_pairs
    from .surgery import push_off
    fam = standard_family()
    items = [
        BatteryItem("alpha1-vs-bounding", fam["alpha1"], fam["t_rep"]),
        BatteryItem("alpha1-vs-pushoff", fam["alpha1"],
                    push_off(fam["alpha1"], crossings=2)),
        BatteryItem("alpha1-vs-beta1", fam["alpha1"], fam["beta1"]),
        BatteryItem("beta1-vs-pushoff", fam["beta1"],
                    push_off(fam["beta1"], crossings=2)),
        BatteryItem("alpha2-vs-beta2", fam["alpha2"], fam["beta2"]),
        BatteryItem("partner1-vs-alpha2", fam["partner1"], fam["alpha2"]),
    ]
    return items


def faithfulness_battery(mcw: MappingClassWord,
                         generators: Optional[Sequence[CurveImmersion]] = None,
                         battery: Optional[Sequence[BatteryItem]] = None,
                         seed: int = 0) -> FaithfulnessReport:
    """Compare HF(f(c1), c2) with HF(c1, c2) over the stored battery.

    Any per-degree mismatch certifies that the class is not the identity; if
    every pair matches the verdict is one-sided consistency.
    """
    if generators is None:
        from .corpus import lickorish_twist_curves
        generators = lickorish_twist_curves()
    if battery is None:
        battery = default_battery()
    rows = []
    witness = None
    for item in battery:
        moved = apply_mapping_class(mcw, item.first, generators, seed=seed)
        base = hf_of_pair(item.first, item.second)
        after = _hf_with_retries(moved, item.second, mcw, item, generators, seed)
        match = base == after
        rows.append({"pair": item.name, "before": base, "after": after,
                     "match": match})
        if not match and witness is None:
            witness = item.name
    verdict = "DistinguishedFromIdentity" if witness else "ConsistentWithIdentity"
    return FaithfulnessReport(verdict, witness, rows)


def _hf_with_retries(moved, second, mcw, item, generators, seed):
    from .chains import InadmissibleError
    last = None
    for attempt in range(12):
        try:
            return hf_of_pair(moved, second)
        except (CurveError, InadmissibleError) as exc:
            last = exc
            moved = apply_mapping_class(mcw, item.first, generators,
                                        seed=seed + 101 * (attempt + 1))
    raise MCGError(f"battery pair {item.name} failed: {last}")