#!/usr/bin/env python3
"""
Symmetric Generators Processor
Builds s_h and vs_h, expresses invariants in them and checks free generation block by block
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from core.errors import ContextMismatchError, DegreeRangeError, NotFoundError, NotInvariantError
from models.divisor import BaseMorphism
from models.superalgebra import SuperMonomial, SuperPolynomial, VariableContext
from models.symmetric import TensorPowerContext
from verify.processors.linear_algebra import RowReducer
from verify.processors.symmetric_action import InvariantBasisBuilder, is_invariant

logger = logging.getLogger(__name__)

STANDARD_BASE = VariableContext(('z',), ('t',))
TWO_FERMION_BASE = VariableContext(('z',), ('t', 'e'))


def _elementary(values: Sequence[SuperPolynomial], h: int, context: VariableContext) -> SuperPolynomial:
    table = [context.one()] + [context.zero()] * h
    for value in values:
        for k in range(h, 0, -1):
            table[k] = table[k] + table[k - 1] * value
    return table[h]


def _tensor(g: int, base: Optional[VariableContext]) -> TensorPowerContext:
    base = base or STANDARD_BASE
    if len(base.even_vars) != 1:
        raise ContextMismatchError(f"Symmetric functions need exactly one even base variable, got [{base.header()}]")
    return TensorPowerContext(base, g)


def elementary_symmetric(g: int, h: int, base: Optional[VariableContext] = None) -> SuperPolynomial:
    """e_h(z_1, ..., z_g)"""
    if not 1 <= h <= g:
        raise DegreeRangeError(f"Need 1 <= h <= g, got h={h}, g={g}")
    tensor = _tensor(g, base)
    ctx = tensor.context
    return _elementary(ctx.vars(*tensor.copies(tensor.base.even_vars[0])), h, ctx)


def odd_symmetric(g: int, h: int, base: Optional[VariableContext] = None, odd_var: Optional[str] = None) -> SuperPolynomial:
    """sum_i t_i * e_{h-1}(z_1, .., omit z_i, .., z_g)"""
    if not 1 <= h <= g:
        raise DegreeRangeError(f"Need 1 <= h <= g, got h={h}, g={g}")
    tensor = _tensor(g, base)
    ctx = tensor.context
    odd_var = odd_var or tensor.base.odd_vars[0]
    zs = ctx.vars(*tensor.copies(tensor.base.even_vars[0]))
    thetas = ctx.vars(*tensor.copies(odd_var))
    total = ctx.zero()
    for i in range(g):
        others = zs[:i] + zs[i + 1:]
        total = total + thetas[i] * _elementary(others, h - 1, ctx)
    return total


@dataclass
class SymmetricGenerators:
    """s_1..s_g and one family vs_1..vs_g per odd base variable, with their formal counterparts."""

    tensor: TensorPowerContext
    s: Tuple[SuperPolynomial, ...]
    varsigma: Dict[str, Tuple[SuperPolynomial, ...]]
    formal: VariableContext

    @property
    def g(self) -> int:
        return self.tensor.g

    def family_names(self, odd_var: str) -> List[str]:
        prefix = 'vs' if len(self.varsigma) == 1 else f"vs{odd_var}"
        return [f"{prefix}{h}" for h in range(1, self.g + 1)]

    def evaluation(self) -> BaseMorphism:
        """Formal generators -> their values in the tensor power"""
        assignment = {f"s{h}": value for h, value in enumerate(self.s, start=1)}
        for odd_var, family in self.varsigma.items():
            assignment.update(zip(self.family_names(odd_var), family))
        return BaseMorphism(self.formal, self.tensor.context, assignment)

    def block_of(self, monomial: SuperMonomial) -> Tuple[int, ...]:
        """Multidegree of the value of a formal monomial: z-degree, then one count per odd family"""
        weight = sum(h * e for h, e in enumerate(monomial.exponents, start=1))
        counts = []
        for position in range(len(self.varsigma)):
            chunk = (monomial.odd_mask >> (position * self.g)) & ((1 << self.g) - 1)
            for h in range(1, self.g + 1):
                if chunk >> (h - 1) & 1:
                    weight += h - 1
            counts.append(bin(chunk).count('1'))
        return (weight,) + tuple(counts)

    def generator_monomials(self, d: int, w: int) -> List[SuperMonomial]:
        """Formal monomials s^alpha * vs_S whose values have z-degree <= d and odd degree <= w"""
        result = []
        for monomial in self.formal.monomials(d, w):
            if self.block_of(monomial)[0] <= d:
                result.append(monomial)
        return result


def symmetric_generators(g: int, base: Optional[VariableContext] = None) -> SymmetricGenerators:
    tensor = _tensor(g, base)
    s = tuple(elementary_symmetric(g, h, tensor.base) for h in range(1, g + 1))
    varsigma = {
        odd_var: tuple(odd_symmetric(g, h, tensor.base, odd_var) for h in range(1, g + 1))
        for odd_var in tensor.base.odd_vars
    }
    single = len(varsigma) == 1
    odd_names = []
    for odd_var in tensor.base.odd_vars:
        prefix = 'vs' if single else f"vs{odd_var}"
        odd_names.extend(f"{prefix}{h}" for h in range(1, g + 1))
    formal = VariableContext(tuple(f"s{h}" for h in range(1, g + 1)), tuple(odd_names))
    return SymmetricGenerators(tensor, s, varsigma, formal)


@dataclass
class NotInImage:
    """An invariant outside the span of generator products at its own truncation."""

    polynomial: SuperPolynomial
    remainder: SuperPolynomial

    def __bool__(self):
        return False


class ImageSpan:
    """Span of evaluated generator monomials, one reducer per multidegree block."""

    def __init__(self, generators: SymmetricGenerators):
        self.generators = generators
        self.evaluation = generators.evaluation()

    def evaluate(self, monomial: SuperMonomial) -> SuperPolynomial:
        return self.evaluation.apply(SuperPolynomial(self.generators.formal, {monomial: 1}))

    def reducers(self, d: int, w: int) -> Dict[Tuple[int, ...], Tuple[RowReducer, int]]:
        grouped: Dict[Tuple[int, ...], List[SuperMonomial]] = {}
        for monomial in self.generators.generator_monomials(d, w):
            grouped.setdefault(self.generators.block_of(monomial), []).append(monomial)
        result = {}
        for block in sorted(grouped):
            reducer = RowReducer(key=SuperMonomial.sort_key)
            for monomial in grouped[block]:
                reducer.insert(self.evaluate(monomial).terms, label=monomial)
            result[block] = (reducer, len(grouped[block]))
        return result

def express_invariant(p: SuperPolynomial, g: int,
                      base: Optional[VariableContext] = None) -> Union[SuperPolynomial, NotInImage]:
    """Write an invariant in terms of s_h and vs_h, as an element of the formal generator algebra"""
    generators = symmetric_generators(g, base)
    if p.context != generators.tensor.context:
        raise ContextMismatchError(f"Expected an element of [{generators.tensor.context.header()}]")
    if not is_invariant(p, g):
        raise NotInvariantError(f"{p} is not S_{g}-invariant")
    span = ImageSpan(generators)
    reducer = RowReducer(key=SuperMonomial.sort_key)
    for monomial in generators.generator_monomials(p.even_degree(), p.odd_degree()):
        reducer.insert(span.evaluate(monomial).terms, label=monomial)
    coefficients = reducer.express(p.terms)
    if coefficients is None:
        remainder = SuperPolynomial(p.context, reducer.remainder(p.terms))
        logger.warning(f"{p} is not in the image at its truncation")
        return NotInImage(p, remainder)
    return SuperPolynomial(generators.formal, coefficients)


def evaluate_expression(expression: SuperPolynomial, g: int, base: Optional[VariableContext] = None) -> SuperPolynomial:
    return symmetric_generators(g, base).evaluation().apply(expression)


@dataclass
class BlockDimensions:
    block: Tuple[int, ...]
    invariant_dim: int
    image_dim: int
    generator_count: int


@dataclass
class GenerationReport:
    g: int
    d: int
    w: int
    dim_invariants: int = 0
    dim_image: int = 0
    generator_count: int = 0
    injective: bool = True
    surjective: bool = True
    blocks: List[BlockDimensions] = field(default_factory=list)

    def dims(self) -> List[Tuple[int, int]]:
        return [(b.invariant_dim, b.image_dim) for b in self.blocks]

    def to_dict(self) -> Dict:
        return {
            'g': self.g,
            'd': self.d,
            'w': self.w,
            'dim_invariants': self.dim_invariants,
            'dim_image': self.dim_image,
            'generator_count': self.generator_count,
            'injective': self.injective,
            'surjective': self.surjective,
            'blocks': [
                {'block': list(b.block), 'invariant_dim': b.invariant_dim,
                 'image_dim': b.image_dim, 'generator_count': b.generator_count}
                for b in self.blocks
            ],
        }


def verify_lemma1(g: int, d: int, w: int, base: Optional[VariableContext] = None,
                  max_workers: Optional[int] = None) -> GenerationReport:
    """Compare the truncated invariant algebra with the span of products of s's and vs's"""
    if g < 1:
        raise DegreeRangeError(f"Need g >= 1, got {g}")
    generators = symmetric_generators(g, base)
    invariants = InvariantBasisBuilder(generators.tensor, max_workers).build(d, w)
    span = ImageSpan(generators)
    image = span.reducers(d, w)
    report = GenerationReport(g, d, w)
    for block in sorted(set(invariants) | set(image)):
        invariant_dim = len(invariants.get(block, []))
        reducer, count = image.get(block, (None, 0))
        image_dim = reducer.rank if reducer else 0
        report.blocks.append(BlockDimensions(block, invariant_dim, image_dim, count))
        report.dim_invariants += invariant_dim
        report.dim_image += image_dim
        report.generator_count += count
        if image_dim != count:
            report.injective = False
        if image_dim != invariant_dim:
            report.surjective = False
    logger.info(f"Generator check g={g} d={d} w={w}: invariants={report.dim_invariants} "
                f"image={report.dim_image} injective={report.injective} surjective={report.surjective}")
    return report


@dataclass
class Counterexample:
    """Invariant outside the generated subalgebra, certified at one multidegree block."""

    witness: SuperPolynomial
    block: Tuple[int, ...]
    invariant_dim: int
    image_dim: int
    remainder: SuperPolynomial

    def to_dict(self) -> Dict:
        return {
            'witness': str(self.witness),
            'block': list(self.block),
            'invariant_dim': self.invariant_dim,
            'image_dim': self.image_dim,
            'remainder': str(self.remainder),
        }


def counterexample_n2(g: int = 2, d: int = 0, w: int = 2, max_workers: Optional[int] = None) -> Counterexample:
    """
    With two odd base variables the invariants are not generated by s and
    the odd symmetric functions of each odd variable; return the first
    basis invariant that falls outside their span.
    """
    if g < 2:
        raise DegreeRangeError(f"Two-fermion failure needs g >= 2, got {g}")
    generators = symmetric_generators(g, TWO_FERMION_BASE)
    invariants = InvariantBasisBuilder(generators.tensor, max_workers).build(d, w)
    image = ImageSpan(generators).reducers(d, w)
    for block in sorted(invariants, key=lambda b: (b[0], sum(b[1:]), b[1:])):
        reducer, _ = image.get(block, (RowReducer(key=SuperMonomial.sort_key), 0))
        for candidate in invariants[block]:
            remainder = reducer.remainder(candidate.terms)
            if remainder:
                logger.info(f"Found invariant {candidate} outside the image at block {block}")
                return Counterexample(
                    witness=candidate,
                    block=block,
                    invariant_dim=len(invariants[block]),
                    image_dim=reducer.rank,
                    remainder=SuperPolynomial(candidate.context, remainder),
                )
    raise NotFoundError(f"No invariant outside the image for g={g}, d={d}, w={w}")
