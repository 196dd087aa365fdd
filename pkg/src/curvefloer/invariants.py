"""The class invariant: homology plus winding number modulo the Euler
characteristic, with the relation checks it supports."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

from .curves import CurveImmersion, homology_class, winding_number
from .system import CurveSystem, ObjectRef
from .twisted import TwistedComplex


@dataclass(frozen=True)
class KClass:
    homology: Tuple[int, ...]
    winding: int
    modulus: int  # |chi| = 2g - 2; winding is stored as the canonical residue

    def __post_init__(self):
        object.__setattr__(self, "winding", self.winding % self.modulus)

    def __add__(self, other: "KClass") -> "KClass":
        if self.modulus != other.modulus:
            raise ValueError("mismatched moduli")
        return KClass(tuple(a + b for a, b in zip(self.homology, other.homology)),
                      self.winding + other.winding, self.modulus)

    def __neg__(self) -> "KClass":
        return KClass(tuple(-a for a in self.homology), -self.winding, self.modulus)

    def __sub__(self, other: "KClass") -> "KClass":
        return self + (-other)

    def scale(self, n: int) -> "KClass":
        return KClass(tuple(n * a for a in self.homology), n * self.winding, self.modulus)

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for a in self.homology) and self.winding == 0

    @staticmethod
    def zero(genus: int) -> "KClass":
        return KClass((0,) * (2 * genus), 0, 2 * genus - 2)


def phi_curve(curve: CurveImmersion) -> KClass:
    g = curve.surface.genus
    return KClass(homology_class(curve), winding_number(curve), 2 * g - 2)


def phi(arg: Union[CurveImmersion, Sequence[CurveImmersion], TwistedComplex],
        system: CurveSystem = None) -> KClass:
    """Class invariant of a curve, a curve list, or a twisted complex.

    For a twisted complex the invariant is the sum over its objects with
    their orientation flags; the delta entries play no role.
    """
    if isinstance(arg, CurveImmersion):
        return phi_curve(arg)
    if isinstance(arg, TwistedComplex):
        if system is None:
            raise ValueError("phi of a twisted complex needs the curve system")
        total = KClass.zero(system.surface.genus)
        for obj in arg.objects:
            cur = system.curves[obj.curve]
            if obj.flag:
                cur = cur.reverse()
            total = total + phi_curve(cur)
        return total
    curves = list(arg)
    total = KClass.zero(curves[0].surface.genus)
    for c in curves:
        total = total + phi_curve(c)
    return total


@dataclass(frozen=True)
class PantsReport:
    lhs: KClass
    rhs: KClass

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def check_pants_relation(a1: CurveImmersion, a2: CurveImmersion, a3: CurveImmersion,
                         t_class: KClass) -> PantsReport:
    """Verify phi(a1) + phi(a2) + phi(a3) = t_class.

    The three curves must carry consistent boundary orientations of the pair
    of pants they bound; that is the caller's responsibility.
    """
    return PantsReport(phi_curve(a1) + phi_curve(a2) + phi_curve(a3), t_class)


@dataclass(frozen=True)
class ZeroObstructionReport:
    value: KClass

    @property
    def verdict(self) -> str:
        if not self.value.is_zero:
            return "cannot be zero object"
        return "inconclusive"


def check_zero_obstruction(arg, system: CurveSystem = None) -> ZeroObstructionReport:
    """One-sided zero-object test: a complex with nonzero invariant is never
    quasi-isomorphic to the zero object; a vanishing invariant is inconclusive."""
    return ZeroObstructionReport(phi(arg, system))
