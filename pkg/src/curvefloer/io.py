"""JSON serialization: exact rationals as decimal-free strings."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Tuple

from .curves import CurveImmersion
from .exactgeom import fraction_str, parse_fraction
from .surface import FlatSurface
from .system import ObjectRef
from .twisted import TwistedComplex


def point_to_json(p) -> List[str]:
    return [fraction_str(p[0]), fraction_str(p[1])]


def point_from_json(data) -> Tuple[Fraction, Fraction]:
    return (parse_fraction(data[0]), parse_fraction(data[1]))


def surface_to_json(s: FlatSurface) -> dict:
    return {"genus": s.genus, "vertices": [point_to_json(v) for v in s.vertices]}


def surface_from_json(data: dict) -> FlatSurface:
    return FlatSurface(genus=int(data["genus"]),
                       vertices=tuple(point_from_json(v) for v in data["vertices"]))


def curve_to_json(c: CurveImmersion) -> dict:
    return {
        "surface": surface_to_json(c.surface),
        "points": [point_to_json(p) for p in c.points],
        "markedPointIndex": c.marked_index,
        "orientationFlag": c.reversed_flag,
    }


def curve_from_json(data: dict) -> CurveImmersion:
    surface = surface_from_json(data["surface"])
    return CurveImmersion(
        surface,
        tuple(point_from_json(p) for p in data["points"]),
        marked_index=int(data["markedPointIndex"]),
        reversed_flag=bool(data.get("orientationFlag", False)),
    )


def twisted_to_json(T: TwistedComplex, curve_files: List[str]) -> dict:
    return {
        "objects": [{"curve": curve_files[o.curve], "orientationFlag": o.flag}
                    for o in T.objects],
        "delta": [{"from": k, "to": l,
                   "coefficients": [{"gen": list(g), "coeff": c}
                                    for g, c in entries]}
                  for (k, l), entries in T.delta],
    }


def dump_json(data: dict) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def load_json_file(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def save_json_file(path: str, data: dict) -> None:
    with open(path, "w") as fh:
        fh.write(dump_json(data))
