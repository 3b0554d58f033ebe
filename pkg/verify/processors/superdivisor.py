#!/usr/bin/env python3
"""
Superdivisor Processor
Arithmetic on normal-form superdivisors and their quotient algebras
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from core.errors import ContextMismatchError, DivisorShapeError, ParityError
from models.divisor import BaseMorphism, OrdinaryDivisor, Superdivisor
from models.superalgebra import SuperMonomial, SuperPolynomial, VariableContext
from verify.processors.linear_algebra import RowReducer

logger = logging.getLogger(__name__)

Pair = Tuple[SuperPolynomial, SuperPolynomial]


def make_divisor(g: int, coeffs: Sequence[Pair], base: Optional[VariableContext] = None,
                 coordinate: str = 'z', odd_generator: str = 't') -> Superdivisor:
    if base is None:
        if not coeffs:
            raise DivisorShapeError("The base must be given for a degree-0 divisor")
        base = coeffs[0][0].context
    return Superdivisor(g, base, tuple(coeffs), coordinate, odd_generator)


def reduce(divisor: Superdivisor) -> OrdinaryDivisor:
    """Set the patch odd generator to zero"""
    return OrdinaryDivisor(divisor.g, divisor.base, divisor.a, divisor.coordinate)


def reduce_monic(p: SuperPolynomial, f: SuperPolynomial, coordinate: str, degree: int) -> SuperPolynomial:
    """Remainder of p modulo f = coordinate^degree + (lower powers); the top power is cleared each round"""
    if p.context != f.context:
        raise ContextMismatchError("Dividend and divisor live in different contexts")
    index = p.context.even_index[coordinate]
    while True:
        top = max((m.exponents[index] for m, _ in p.items()), default=-1)
        if top < degree:
            return p
        quotient = {}
        for monomial, coefficient in p.items():
            if monomial.exponents[index] == top:
                exponents = list(monomial.exponents)
                exponents[index] -= degree
                quotient[SuperMonomial(tuple(exponents), monomial.odd_mask)] = coefficient
        p = p - SuperPolynomial(p.context, quotient) * f


def from_generator(f: SuperPolynomial, base: VariableContext,
                   coordinate: str = 'z', odd_generator: str = 't') -> Superdivisor:
    """
    Normal form of the divisor cut out by f = f0 + t*d with f0 monic in the
    coordinate: d is replaced by its remainder modulo f0, which changes f by
    the unit 1 + t*q and so keeps the ideal.
    """
    ambient = base.extend(even=(coordinate,), odd=(odd_generator,), prepend=True)
    if f.context != ambient:
        raise ContextMismatchError(f"Generator must live in [{ambient.header()}]")
    if not f.is_even():
        raise ParityError(f"Generator must be even, got {f}")
    free, attached = f.split_odd(odd_generator)
    hat = free.collect(coordinate, base)
    if not hat:
        raise DivisorShapeError("Zero generator does not define a divisor")
    g = max(hat)
    if hat[g] != base.one():
        raise DivisorShapeError(f"Generator is not monic in '{coordinate}': leading coefficient {hat[g]}")
    remainder = reduce_monic(attached, free, coordinate, g)
    odd_part = remainder.collect(coordinate, base)
    coeffs = []
    for i in range(1, g + 1):
        sign = (-1) ** i
        a = hat.get(g - i, base.zero()) * sign
        b = odd_part.get(g - i, base.zero()) * sign
        coeffs.append((a, b))
    return Superdivisor(g, base, tuple(coeffs), coordinate, odd_generator)


def divisor_sum(first: Superdivisor, second: Superdivisor) -> Superdivisor:
    """Divisor of the product ideal, degrees add"""
    if first.base != second.base:
        raise ContextMismatchError("Cannot add divisors over different bases")
    if (first.coordinate, first.odd_generator) != (second.coordinate, second.odd_generator):
        raise ContextMismatchError("Cannot add divisors written in different patch coordinates")
    product = first.defining_polynomial() * second.defining_polynomial()
    result = from_generator(product, first.base, first.coordinate, first.odd_generator)
    logger.debug(f"Sum of degree {first.g} and {second.g} divisors: {result.equation()}")
    return result


def pullback(divisor: Superdivisor, morphism: BaseMorphism) -> Superdivisor:
    if morphism.source != divisor.base:
        raise ContextMismatchError(f"Morphism source [{morphism.source.header()}] is not the divisor base [{divisor.base.header()}]")
    coeffs = tuple((morphism.apply(a), morphism.apply(b)) for a, b in divisor.coeffs)
    return Superdivisor(divisor.g, morphism.target, coeffs, divisor.coordinate, divisor.odd_generator)


@dataclass(frozen=True)
class QuotientCoordinates:
    """Coefficients over the base on 1, z, .., z^(g-1) and t, t*z, .., t*z^(g-1)."""

    even: Tuple[SuperPolynomial, ...]
    odd: Tuple[SuperPolynomial, ...]

    def to_dict(self) -> Dict[str, List[str]]:
        return {'even': [str(c) for c in self.even], 'odd': [str(c) for c in self.odd]}


class QuotientPresentation:
    """The quotient O_Z = B[z, t]/(f) with its standard (g, g) basis."""

    def __init__(self, divisor: Superdivisor):
        self.divisor = divisor
        self.g = divisor.g
        self.ambient = divisor.ambient_context
        self.f = divisor.defining_polynomial()

    def basis(self) -> List[SuperPolynomial]:
        z = self.ambient.var(self.divisor.coordinate)
        t = self.ambient.var(self.divisor.odd_generator)
        powers = [z ** k for k in range(self.g)]
        return powers + [t * power for power in powers]

    def reduce(self, p: SuperPolynomial) -> SuperPolynomial:
        if p.context != self.ambient:
            raise ContextMismatchError(f"Expected an element of [{self.ambient.header()}]")
        return reduce_monic(p, self.f, self.divisor.coordinate, self.g)

    def normal_form(self, p: SuperPolynomial) -> QuotientCoordinates:
        remainder = self.reduce(p)
        free, attached = remainder.split_odd(self.divisor.odd_generator)
        base = self.divisor.base
        even = free.collect(self.divisor.coordinate, base)
        odd = attached.collect(self.divisor.coordinate, base)
        return QuotientCoordinates(
            tuple(even.get(k, base.zero()) for k in range(self.g)),
            tuple(odd.get(k, base.zero()) for k in range(self.g)),
        )

    def to_element(self, coordinates: QuotientCoordinates) -> SuperPolynomial:
        lift = self.divisor.lift
        basis = self.basis()
        total = self.ambient.zero()
        for value, element in zip(coordinates.even + coordinates.odd, basis):
            total = total + element * lift(value)
        return total

    def matrix(self, multiplier: SuperPolynomial) -> List[List[SuperPolynomial]]:
        """Matrix of multiplication on the B[t]-basis 1..z^(g-1); entries c + t*d"""
        if multiplier.context != self.ambient:
            raise ContextMismatchError(f"Multiplier must live in [{self.ambient.header()}]")
        if not multiplier.is_even():
            raise ParityError(f"Multiplier must be even, got {multiplier}")
        z = self.ambient.var(self.divisor.coordinate)
        t = self.ambient.var(self.divisor.odd_generator)
        lift = self.divisor.lift
        columns = []
        for j in range(self.g):
            coordinates = self.normal_form(multiplier * z ** j)
            columns.append([lift(c) + t * lift(d) for c, d in zip(coordinates.even, coordinates.odd)])
        return [[columns[j][k] for j in range(self.g)] for k in range(self.g)]


def normal_form(p: SuperPolynomial, presentation: QuotientPresentation) -> QuotientCoordinates:
    return presentation.normal_form(p)


def coordinates_to_element(coordinates: QuotientCoordinates, presentation: QuotientPresentation) -> SuperPolynomial:
    return presentation.to_element(coordinates)


def quotient_rank(presentation: QuotientPresentation) -> Tuple[int, int]:
    """(even, odd) rank of the span of the basis classes"""
    ranks = []
    for half in ('even', 'odd'):
        reducer = RowReducer(key=lambda column: column)
        for element in presentation.basis():
            coordinates = presentation.normal_form(element)
            row = {}
            for k, value in enumerate(getattr(coordinates, half)):
                if value and not value.is_constant():
                    raise DivisorShapeError(f"Basis class {element} has a non-scalar coordinate {value}")
                if value:
                    row[k] = value.constant_term()
            if row:
                reducer.insert(row)
        ranks.append(reducer.rank)
    return ranks[0], ranks[1]


def _matmul(left: List[List[SuperPolynomial]], right: List[List[SuperPolynomial]],
            zero: SuperPolynomial) -> List[List[SuperPolynomial]]:
    n = len(left)
    result = []
    for i in range(n):
        row = []
        for j in range(n):
            total = zero
            for k in range(n):
                if left[i][k] and right[k][j]:
                    total = total + left[i][k] * right[k][j]
            row.append(total)
        result.append(row)
    return result


def char_poly_coefficients(presentation: QuotientPresentation, multiplier: SuperPolynomial) -> List[SuperPolynomial]:
    """[c_0, ..., c_g] with c_g = 1, by the Faddeev-LeVerrier recursion"""
    g = presentation.g
    ambient = presentation.ambient
    zero, one = ambient.zero(), ambient.one()
    if g == 0:
        if not multiplier.is_even():
            raise ParityError(f"Multiplier must be even, got {multiplier}")
        return [one]
    a = presentation.matrix(multiplier)
    coefficients = [zero] * (g + 1)
    coefficients[g] = one
    previous = [[zero] * g for _ in range(g)]
    for k in range(1, g + 1):
        product = _matmul(a, previous, zero)
        current = [[product[i][j] + (coefficients[g - k + 1] if i == j else zero) for j in range(g)] for i in range(g)]
        trace = zero
        for i, row in enumerate(_matmul(a, current, zero)):
            trace = trace + row[i]
        coefficients[g - k] = trace * Fraction(-1, k)
        previous = current
    return coefficients


def char_poly(presentation: QuotientPresentation, multiplier: SuperPolynomial) -> SuperPolynomial:
    """Characteristic polynomial of multiplication by an even element, as a polynomial in the patch coordinate"""
    z = presentation.ambient.var(presentation.divisor.coordinate)
    total = presentation.ambient.zero()
    for power, coefficient in enumerate(char_poly_coefficients(presentation, multiplier)):
        total = total + coefficient * z ** power
    return total


def determinant(presentation: QuotientPresentation, multiplier: SuperPolynomial) -> SuperPolynomial:
    """det of multiplication on the standard basis, an element of B[t]"""
    constant = char_poly_coefficients(presentation, multiplier)[0]
    return constant * (-1) ** presentation.g
