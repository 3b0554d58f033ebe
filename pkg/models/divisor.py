"""
Base morphisms and relative divisors over free supercommutative bases.

A Superdivisor of degree g over a base B is stored in normal form: the pairs
(a_i, b_i) with a_i even and b_i odd, representing

    f = z^g - (a_1 + t*b_1) z^(g-1) + ... + (-1)^g (a_g + t*b_g)

in the ambient ring B[z, t], whose context lists the patch coordinate and the
odd patch generator ahead of the base generators.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Optional, Tuple

from core.errors import ContextMismatchError, DivisorShapeError, ParityError, UnknownVariableError
from models.superalgebra import SuperPolynomial, VariableContext


class BaseMorphism:
    """Parity-preserving algebra morphism between free bases, fixed by generator images."""

    def __init__(self, source: VariableContext, target: VariableContext,
                 assignment: Optional[Mapping[str, SuperPolynomial]] = None):
        self.source = source
        self.target = target
        images: Dict[str, SuperPolynomial] = {}
        assignment = dict(assignment or {})
        for name in assignment:
            if name not in source:
                raise UnknownVariableError(f"'{name}' is not a generator of the source [{source.header()}]")
        for name in source.names:
            odd = source.is_odd(name)
            image = assignment.get(name)
            if image is None:
                if name not in target or target.is_odd(name) != odd:
                    raise ContextMismatchError(f"No image given for '{name}' and the target has no same-parity '{name}'")
                image = target.var(name)
            if image.context != target:
                raise ContextMismatchError(f"Image of '{name}' is not an element of [{target.header()}]")
            if odd and not image.is_odd():
                raise ParityError(f"Odd generator '{name}' must map to an odd element, got {image}")
            if not odd and not image.is_even():
                raise ParityError(f"Even generator '{name}' must map to an even element, got {image}")
            images[name] = image
        self._images = images

    @classmethod
    def identity(cls, context: VariableContext) -> 'BaseMorphism':
        return cls(context, context, {})

    @property
    def images(self) -> Dict[str, SuperPolynomial]:
        return dict(self._images)

    def image(self, name: str) -> SuperPolynomial:
        return self._images[name]

    def apply(self, p: SuperPolynomial) -> SuperPolynomial:
        if p.context != self.source:
            raise ContextMismatchError(f"Cannot apply a morphism on [{self.source.header()}] to an element of [{p.context.header()}]")
        return p.substitute(self._images, self.target)

    def __call__(self, p: SuperPolynomial) -> SuperPolynomial:
        return self.apply(p)

    def compose(self, other: 'BaseMorphism') -> 'BaseMorphism':
        """Apply self, then other"""
        if other.source != self.target:
            raise ContextMismatchError("Morphisms are not composable: target and source differ")
        return BaseMorphism(self.source, other.target, {name: other.apply(image) for name, image in self._images.items()})

    def is_identity(self) -> bool:
        return self.source == self.target and all(image == self.source.var(name) for name, image in self._images.items())

    def __eq__(self, other):
        if not isinstance(other, BaseMorphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self._images == other._images

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self._images.items())))

    def describe(self) -> Dict[str, str]:
        return {name: str(image) for name, image in self._images.items()}

    def __repr__(self):
        body = ', '.join(f"{name} -> {image}" for name, image in self._images.items())
        return f"BaseMorphism({body})"


@dataclass(frozen=True)
class OrdinaryDivisor:
    """Monic z^g - a_1 z^(g-1) + ... + (-1)^g a_g over an even base algebra."""

    g: int
    base: VariableContext
    a: Tuple[SuperPolynomial, ...]
    coordinate: str = 'z'

    def __post_init__(self):
        object.__setattr__(self, 'a', tuple(self.a))
        if self.g < 0:
            raise DivisorShapeError(f"Degree must be non-negative, got {self.g}")
        if len(self.a) != self.g:
            raise DivisorShapeError(f"Expected {self.g} coefficients, got {len(self.a)}")
        for i, coefficient in enumerate(self.a, start=1):
            if coefficient.context != self.base:
                raise ContextMismatchError(f"a_{i} is not an element of the base")
            if not coefficient.is_even():
                raise ParityError(f"a_{i} must be even, got {coefficient}")

    @property
    def ambient_context(self) -> VariableContext:
        return self.base.extend(even=(self.coordinate,), prepend=True)

    def defining_polynomial(self) -> SuperPolynomial:
        ambient = self.ambient_context
        z = ambient.var(self.coordinate)
        f = z ** self.g
        for i, coefficient in enumerate(self.a, start=1):
            f = f + (-1) ** i * coefficient.to_context(ambient) * z ** (self.g - i)
        return f


@dataclass(frozen=True)
class Superdivisor:
    """Relative positive superdivisor of degree g in normal form."""

    g: int
    base: VariableContext
    coeffs: Tuple[Tuple[SuperPolynomial, SuperPolynomial], ...]
    coordinate: str = 'z'
    odd_generator: str = 't'

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', tuple((a, b) for a, b in self.coeffs))
        if self.g < 0:
            raise DivisorShapeError(f"Degree must be non-negative, got {self.g}")
        if len(self.coeffs) != self.g:
            raise DivisorShapeError(f"Expected {self.g} coefficient pairs, got {len(self.coeffs)}")
        if self.coordinate in self.base or self.odd_generator in self.base or self.coordinate == self.odd_generator:
            raise DivisorShapeError(f"Patch names '{self.coordinate}', '{self.odd_generator}' clash with the base")
        for i, (a, b) in enumerate(self.coeffs, start=1):
            if a.context != self.base or b.context != self.base:
                raise ContextMismatchError(f"Coefficient pair {i} is not over the base [{self.base.header()}]")
            if not a.is_even():
                raise ParityError(f"a_{i} must be even, got {a}")
            if not b.is_odd():
                raise ParityError(f"b_{i} must be odd, got {b}")

    @property
    def a(self) -> Tuple[SuperPolynomial, ...]:
        return tuple(a for a, _ in self.coeffs)

    @property
    def b(self) -> Tuple[SuperPolynomial, ...]:
        return tuple(b for _, b in self.coeffs)

    def __iter__(self) -> Iterator[Tuple[SuperPolynomial, SuperPolynomial]]:
        return iter(self.coeffs)

    @property
    def ambient_context(self) -> VariableContext:
        return self.base.extend(even=(self.coordinate,), odd=(self.odd_generator,), prepend=True)

    def lift(self, p: SuperPolynomial) -> SuperPolynomial:
        """Base element viewed in the ambient ring"""
        return p.to_context(self.ambient_context)

    def coefficient(self, i: int) -> SuperPolynomial:
        """a_i + t*b_i in the ambient ring"""
        a, b = self.coeffs[i - 1]
        ambient = self.ambient_context
        return self.lift(a) + ambient.var(self.odd_generator) * self.lift(b)

    def defining_polynomial(self) -> SuperPolynomial:
        ambient = self.ambient_context
        z = ambient.var(self.coordinate)
        f = z ** self.g
        for i in range(1, self.g + 1):
            f = f + (-1) ** i * self.coefficient(i) * z ** (self.g - i)
        return f

    def equation(self) -> str:
        return f"{self.defining_polynomial()} = 0"


def trivial_divisor(base: VariableContext, coordinate: str = 'z', odd_generator: str = 't') -> Superdivisor:
    return Superdivisor(0, base, (), coordinate, odd_generator)
