#!/usr/bin/env python3
"""
Representability Processor
Classifies superdivisors against the universal one and checks the spin-structure variants
"""

import logging
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from core.errors import ContextMismatchError, DegreeRangeError
from models.curve import SpinStructure, SupercurvePatch
from models.divisor import BaseMorphism, OrdinaryDivisor, Superdivisor
from models.superalgebra import SuperMonomial, SuperPolynomial, VariableContext
from models.symmetric import TensorPowerContext
from verify.processors.invariants import elementary_symmetric, odd_symmetric
from verify.processors.superdivisor import (
    QuotientPresentation,
    char_poly,
    divisor_sum,
    from_generator,
    pullback,
)
from verify.processors.symmetric_action import is_invariant

logger = logging.getLogger(__name__)

STANDARD_PATCH = SupercurvePatch()


def conjugate_patch(patch: SupercurvePatch) -> SupercurvePatch:
    """Swap t and t^c; applying it twice gives back the original patch"""
    return replace(
        patch,
        odd_generator=patch.conjugate_generator,
        conjugate_generator=patch.odd_generator,
        conjugated=not patch.conjugated,
    )


def universal_base(g: int) -> VariableContext:
    return VariableContext(tuple(f"s{i}" for i in range(1, g + 1)), tuple(f"vs{i}" for i in range(1, g + 1)))


def universal_divisor_1(patch: SupercurvePatch = STANDARD_PATCH) -> Superdivisor:
    """z - (z2 + t*tc) over the base (z2; tc)"""
    z2 = patch.second_copy(patch.coordinate)
    base = VariableContext((z2,), (patch.conjugate_generator,))
    return Superdivisor(1, base, ((base.var(z2), base.var(patch.conjugate_generator)),),
                        patch.coordinate, patch.odd_generator)


def reduce_mod_universal(a: SuperPolynomial, patch: SupercurvePatch = STANDARD_PATCH) -> SuperPolynomial:
    """Substitute z -> z2 + t*tc, i.e. a(z2) + t*tc*a'(z2)"""
    if a.context.odd_vars or a.context.even_vars != (patch.coordinate,):
        raise ContextMismatchError(f"Expected a polynomial in '{patch.coordinate}' alone")
    ambient = universal_divisor_1(patch).ambient_context
    z2 = ambient.var(patch.second_copy(patch.coordinate))
    shift = ambient.var(patch.odd_generator) * ambient.var(patch.conjugate_generator)
    return a.substitute({patch.coordinate: z2 + shift}, ambient)


def superdiagonal(patch: SupercurvePatch = STANDARD_PATCH) -> Superdivisor:
    """z - z2 - t*t2 over the base (z2; t2)"""
    z2 = patch.second_copy(patch.coordinate)
    t2 = patch.second_copy(patch.odd_generator)
    base = VariableContext((z2,), (t2,))
    return Superdivisor(1, base, ((base.var(z2), base.var(t2)),), patch.coordinate, patch.odd_generator)


def universal_divisor(g: int, patch: SupercurvePatch = STANDARD_PATCH) -> Superdivisor:
    """z^g - (s1 + t*vs1) z^(g-1) + ... over the base (s; vs)"""
    if g < 1:
        raise DegreeRangeError(f"Universal divisor needs g >= 1, got {g}")
    base = universal_base(g)
    coeffs = tuple((base.var(f"s{i}"), base.var(f"vs{i}")) for i in range(1, g + 1))
    return Superdivisor(g, base, coeffs, patch.coordinate, patch.odd_generator)


def coefficients_from_char_poly(divisor: Superdivisor) -> List[Tuple[SuperPolynomial, SuperPolynomial]]:
    """(a_i, b_i) read off the characteristic polynomial of z acting on the quotient"""
    presentation = QuotientPresentation(divisor)
    z = presentation.ambient.var(divisor.coordinate)
    polynomial = char_poly(presentation, z)
    return list(from_generator(polynomial, divisor.base, divisor.coordinate, divisor.odd_generator).coeffs)


def classify(divisor: Superdivisor) -> BaseMorphism:
    """The morphism s_i -> a_i, vs_i -> b_i from the universal base"""
    assignment = {}
    for i, (a, b) in enumerate(coefficients_from_char_poly(divisor), start=1):
        assignment[f"s{i}"] = a
        assignment[f"vs{i}"] = b
    return BaseMorphism(universal_base(divisor.g), divisor.base, assignment)


def divisor_roundtrip(divisor: Superdivisor) -> bool:
    if divisor.g == 0:
        return True
    universal = universal_divisor(divisor.g, SupercurvePatch(divisor.coordinate, divisor.odd_generator))
    return pullback(universal, classify(divisor)) == divisor


def morphism_roundtrip(morphism: BaseMorphism, patch: SupercurvePatch = STANDARD_PATCH) -> bool:
    g = len(morphism.source.even_vars)
    if morphism.source != universal_base(g):
        raise ContextMismatchError("Morphism must start at the universal base (s; vs)")
    return classify(pullback(universal_divisor(g, patch), morphism)) == morphism


def roundtrip_check(divisor: Superdivisor) -> bool:
    """Both directions: pulling back the universal divisor along classify, then classifying the pullback"""
    if not divisor_roundtrip(divisor):
        logger.warning(f"Divisor round trip failed for {divisor.equation()}")
        return False
    if divisor.g == 0:
        return True
    patch = SupercurvePatch(divisor.coordinate, divisor.odd_generator)
    return morphism_roundtrip(classify(divisor), patch)


def spin_iso(spin: SpinStructure) -> BaseMorphism:
    """Patch isomorphism tc -> u*t, z -> z from the conjugate chart to the chart"""
    patch = spin.patch
    source = patch.conjugate_context
    target = patch.context
    return BaseMorphism(source, target, {
        patch.coordinate: target.var(patch.coordinate),
        patch.conjugate_generator: target.var(patch.odd_generator) * spin.unit,
    })


def spin_iso_inverse(spin: SpinStructure) -> BaseMorphism:
    patch = spin.patch
    source = patch.context
    target = patch.conjugate_context
    return BaseMorphism(source, target, {
        patch.coordinate: target.var(patch.coordinate),
        patch.odd_generator: target.var(patch.conjugate_generator) / spin.unit,
    })


@dataclass
class SuperdiagonalReport:
    unit: Fraction
    matches: bool
    pulled_back: Superdivisor
    superdiagonal: Superdivisor
    rescaling: Optional[Dict[str, str]] = None

    def to_dict(self) -> Dict:
        return {
            'unit': str(self.unit),
            'matches': self.matches,
            'pulled_back': self.pulled_back.equation(),
            'superdiagonal': self.superdiagonal.equation(),
            'rescaling': self.rescaling,
        }


def verify_theorem5(spin: SpinStructure) -> SuperdiagonalReport:
    """
    Pull the degree-1 universal divisor back along tc -> u*t2 and compare it
    with the superdiagonal; for u != 1 the comparison is made after the
    recorded rescaling t2 -> u*t2.
    """
    patch = spin.patch
    universal = universal_divisor_1(patch)
    diagonal = superdiagonal(patch)
    z2 = patch.second_copy(patch.coordinate)
    t2 = patch.second_copy(patch.odd_generator)
    target = diagonal.base
    psi = BaseMorphism(universal.base, target, {
        z2: target.var(z2),
        patch.conjugate_generator: target.var(t2) * spin.unit,
    })
    pulled = pullback(universal, psi)
    rescaling = None
    expected = diagonal
    if spin.unit != 1:
        rescale = BaseMorphism(target, target, {t2: target.var(t2) * spin.unit})
        expected = pullback(diagonal, rescale)
        rescaling = rescale.describe()
    report = SuperdiagonalReport(spin.unit, pulled == expected, pulled, expected, rescaling)
    logger.info(f"Superdiagonal check u={spin.unit}: {'match' if report.matches else 'mismatch'}")
    return report


@dataclass
class ExpansionReport:
    g: int
    product: Superdivisor
    universal_pullback: Superdivisor
    invariant: bool
    matches: bool = field(init=False)

    def __post_init__(self):
        self.matches = self.product == self.universal_pullback and self.invariant


def lemma4_expansion(g: int, patch: SupercurvePatch = STANDARD_PATCH) -> ExpansionReport:
    """
    Z_1 + ... + Z_g over the g-fold tensor power of (z; tc) equals the
    universal divisor pulled back along s_i -> e_i(z), vs_i -> vs_i(z, tc),
    and its coefficients are symmetric.
    """
    if g < 1:
        raise DegreeRangeError(f"Need g >= 1, got {g}")
    tensor = TensorPowerContext(patch.conjugate_context, g)
    ctx = tensor.context
    universal_1 = universal_divisor_1(patch)
    z2 = patch.second_copy(patch.coordinate)
    total = None
    for i in range(1, g + 1):
        point = BaseMorphism(universal_1.base, ctx, {
            z2: ctx.var(tensor.copy_name(patch.coordinate, i)),
            patch.conjugate_generator: ctx.var(tensor.copy_name(patch.conjugate_generator, i)),
        })
        piece = pullback(universal_1, point)
        total = piece if total is None else divisor_sum(total, piece)
    assignment = {}
    for h in range(1, g + 1):
        assignment[f"s{h}"] = elementary_symmetric(g, h, patch.conjugate_context)
        assignment[f"vs{h}"] = odd_symmetric(g, h, patch.conjugate_context)
    expected = pullback(universal_divisor(g, patch), BaseMorphism(universal_base(g), ctx, assignment))
    invariant = all(is_invariant(c, g) for pair in total.coeffs for c in pair)
    return ExpansionReport(g, total, expected, invariant)


def ordinary_universal_divisor(g: int, coordinate: str = 'z') -> OrdinaryDivisor:
    base = VariableContext(tuple(f"s{i}" for i in range(1, g + 1)), ())
    return OrdinaryDivisor(g, base, tuple(base.var(f"s{i}") for i in range(1, g + 1)), coordinate)


def classify_ordinary(divisor: OrdinaryDivisor) -> BaseMorphism:
    """s_i -> a_i for an ordinary divisor, through the determinant morphism of its trivial super lift"""
    lifted = Superdivisor(divisor.g, divisor.base,
                          tuple((a, divisor.base.zero()) for a in divisor.a), divisor.coordinate)
    source = ordinary_universal_divisor(divisor.g).base
    assignment = {f"s{i}": a for i, (a, _) in enumerate(coefficients_from_char_poly(lifted), start=1)}
    return BaseMorphism(source, divisor.base, assignment)


def ordinary_roundtrip(divisor: OrdinaryDivisor) -> bool:
    universal = ordinary_universal_divisor(divisor.g, divisor.coordinate)
    morphism = classify_ordinary(divisor)
    return tuple(morphism.apply(a) for a in universal.a) == divisor.a


def susy_base(g: int) -> VariableContext:
    return universal_base(g)


def susy_transport(g: int, spin: SpinStructure) -> BaseMorphism:
    """vs_i -> u*vs_i: the universal base of the conjugate curve mapped to that of the curve"""
    base = susy_base(g)
    return BaseMorphism(universal_base(g), base, {f"vs{i}": base.var(f"vs{i}") * spin.unit for i in range(1, g + 1)})


def susy_universal_divisor(g: int, spin: SpinStructure) -> Superdivisor:
    """Coefficients s_i + t*u*vs_i"""
    return pullback(universal_divisor(g, spin.patch), susy_transport(g, spin))


def susy_classify(divisor: Superdivisor, spin: SpinStructure) -> BaseMorphism:
    """s_i -> a_i, vs_i -> b_i / u"""
    assignment = {}
    for i, (a, b) in enumerate(coefficients_from_char_poly(divisor), start=1):
        assignment[f"s{i}"] = a
        assignment[f"vs{i}"] = b / spin.unit
    return BaseMorphism(susy_base(divisor.g), divisor.base, assignment)


def susy_roundtrip(divisor: Superdivisor, spin: SpinStructure) -> bool:
    if divisor.g == 0:
        return True
    return pullback(susy_universal_divisor(divisor.g, spin), susy_classify(divisor, spin)) == divisor


def susy_expansion(g: int, spin: SpinStructure) -> bool:
    """prod (z - z_i - u*t*t_i) equals the SUSY universal divisor at s_i -> e_i(z), vs_i -> vs_i(z, t)"""
    patch = spin.patch
    tensor = TensorPowerContext(patch.context, g)
    ctx = tensor.context
    diagonal = superdiagonal(patch)
    z2 = patch.second_copy(patch.coordinate)
    t2 = patch.second_copy(patch.odd_generator)
    total = None
    for i in range(1, g + 1):
        point = BaseMorphism(diagonal.base, ctx, {
            z2: ctx.var(tensor.copy_name(patch.coordinate, i)),
            t2: ctx.var(tensor.copy_name(patch.odd_generator, i)) * spin.unit,
        })
        piece = pullback(diagonal, point)
        total = piece if total is None else divisor_sum(total, piece)
    assignment = {}
    for h in range(1, g + 1):
        assignment[f"s{h}"] = elementary_symmetric(g, h, patch.context)
        assignment[f"vs{h}"] = odd_symmetric(g, h, patch.context)
    expected = pullback(susy_universal_divisor(g, spin), BaseMorphism(susy_base(g), ctx, assignment))
    return total == expected


def random_base(even: int, odd: int) -> VariableContext:
    return VariableContext(tuple(f"a{i}" for i in range(1, even + 1)), tuple(f"b{i}" for i in range(1, odd + 1)))


def random_element(rng: random.Random, context: VariableContext, parity: int,
                   max_degree: int = 2, max_terms: int = 3) -> SuperPolynomial:
    """Small random homogeneous element with coefficients in [-3, 3] and occasional halves"""
    candidates = [m for m in context.monomials(max_degree, min(2, len(context.odd_vars))) if m.parity == parity]
    if not candidates:
        return context.zero()
    terms: Dict[SuperMonomial, Fraction] = {}
    for _ in range(rng.randint(0, max_terms)):
        monomial = rng.choice(candidates)
        terms[monomial] = terms.get(monomial, 0) + Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2)))
    return SuperPolynomial(context, terms)


def random_divisor(rng: random.Random, g: int, base: VariableContext, max_degree: int = 2) -> Superdivisor:
    coeffs = tuple(
        (random_element(rng, base, 0, max_degree), random_element(rng, base, 1, max_degree))
        for _ in range(g)
    )
    return Superdivisor(g, base, coeffs)


def random_morphism(rng: random.Random, source: VariableContext, target: VariableContext,
                    max_degree: int = 2) -> BaseMorphism:
    assignment = {}
    for name in source.even_vars:
        assignment[name] = random_element(rng, target, 0, max_degree)
    for name in source.odd_vars:
        assignment[name] = random_element(rng, target, 1, max_degree)
    return BaseMorphism(source, target, assignment)
