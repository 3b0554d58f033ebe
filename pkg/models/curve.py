"""
Single-patch supercurve data: the (z, t) chart, its conjugate and spin structures.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from core.errors import SuperAlgebraError
from models.superalgebra import VariableContext


@dataclass(frozen=True)
class SupercurvePatch:
    """
    Affine chart of a (1,1) supercurve with trivialised line bundles.

    conjugate_generator names t^c = w_t * dz, the odd generator of the
    conjugate-fermion curve on the same chart. It defaults to the odd
    generator with a "c" suffix.
    """

    coordinate: str = 'z'
    odd_generator: str = 't'
    canonical_generator: str = 'dz'
    conjugate_generator: Optional[str] = None
    conjugated: bool = False

    def __post_init__(self):
        if self.conjugate_generator is None:
            object.__setattr__(self, 'conjugate_generator', f"{self.odd_generator}c")
        names = (self.coordinate, self.odd_generator, self.conjugate_generator)
        if len(set(names)) != 3:
            raise SuperAlgebraError(f"Patch names must be pairwise distinct: {names}")

    @property
    def context(self) -> VariableContext:
        return VariableContext((self.coordinate,), (self.odd_generator,))

    @property
    def conjugate_context(self) -> VariableContext:
        return VariableContext((self.coordinate,), (self.conjugate_generator,))

    def second_copy(self, name: str) -> str:
        return f"{name}2"


@dataclass(frozen=True)
class SpinStructure:
    """Isomorphism t (x) t -> u*dz on a patch, recorded by the unit u."""

    patch: SupercurvePatch
    unit: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, 'unit', Fraction(self.unit))
        if self.unit == 0:
            raise SuperAlgebraError("A spin structure needs an invertible unit, got 0")


def spin_structure(unit: Union[int, Fraction, str] = 1, patch: Optional[SupercurvePatch] = None) -> SpinStructure:
    return SpinStructure(patch or SupercurvePatch(), Fraction(unit))
