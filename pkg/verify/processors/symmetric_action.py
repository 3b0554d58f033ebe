#!/usr/bin/env python3
"""
Symmetric Action Processor
Signed S_g action on tensor powers and the invariants it fixes
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from core.config import settings
from core.errors import ContextMismatchError, DegreeRangeError, ParityError
from models.superalgebra import SuperMonomial, SuperPolynomial, VariableContext
from models.symmetric import Permutation, TensorPowerContext
from verify.processors.linear_algebra import RowReducer

logger = logging.getLogger(__name__)


@lru_cache(maxsize=256)
def tensor_power_of(context: VariableContext, g: int) -> TensorPowerContext:
    """Recover the tensor-power structure of a context whose names are v1..vg per base variable"""
    if g < 1 or len(context.even_vars) % g or len(context.odd_vars) % g:
        raise ContextMismatchError(f"[{context.header()}] is not a {g}-fold tensor power")
    suffix = '1'
    even = tuple(name[:-len(suffix)] for name in context.even_vars[::g])
    odd = tuple(name[:-len(suffix)] for name in context.odd_vars[::g])
    try:
        tensor = TensorPowerContext(VariableContext(even, odd), g)
    except ValueError:
        raise ContextMismatchError(f"[{context.header()}] is not a {g}-fold tensor power")
    if tensor.context != context:
        raise ContextMismatchError(f"[{context.header()}] is not a {g}-fold tensor power")
    return tensor


def embed(i: int, p: SuperPolynomial, g: int) -> SuperPolynomial:
    """p in the i-th tensor factor: v -> v_i"""
    if not 1 <= i <= g:
        raise DegreeRangeError(f"Factor index {i} outside 1..{g}")
    tensor = TensorPowerContext(p.context, g)
    return p.rename({name: tensor.copy_name(name, i) for name in p.context.names}, tensor.context)


def act(sigma: Permutation, p: SuperPolynomial) -> SuperPolynomial:
    """Signed action v_i -> v_{sigma(i)}; odd reorderings contribute the Koszul sign"""
    tensor = tensor_power_of(p.context, sigma.size)
    return p.rename(tensor.relabelling(sigma))


def koszul_tensor(sigma: Permutation, factors: Sequence[SuperPolynomial]) -> SuperPolynomial:
    """
    sigma acting on f_1 (x) ... (x) f_g directly: slot k receives f_{sigma(k)},
    with a factor (-1)^{|f_sigma(k)||f_sigma(l)|} for every slot pair k < l
    whose sources appear in the opposite order.  Agrees with act(sigma^-1, .).
    """
    g = sigma.size
    if len(factors) != g:
        raise DegreeRangeError(f"Expected {g} tensor factors, got {len(factors)}")
    parities = []
    for f in factors:
        parity = f.parity()
        if parity is None:
            raise ParityError(f"Tensor factor {f} is not homogeneous")
        parities.append(parity)
    sign = 1
    for k in range(1, g + 1):
        for l in range(k + 1, g + 1):
            if sigma(k) > sigma(l) and parities[sigma(k) - 1] and parities[sigma(l) - 1]:
                sign = -sign
    result = None
    for k in range(1, g + 1):
        slot = embed(k, factors[sigma(k) - 1], g)
        result = slot if result is None else result * slot
    return result * sign


def tensor_product(factors: Sequence[SuperPolynomial]) -> SuperPolynomial:
    return koszul_tensor(Permutation.identity(len(factors)), factors)


def is_invariant(p: SuperPolynomial, g: int) -> bool:
    return all(act(tau, p) == p for tau in Permutation.adjacent_transpositions(g))


def reynolds(p: SuperPolynomial, g: int, max_workers: Optional[int] = None) -> SuperPolynomial:
    """Average over S_g; summands are combined in lexicographic permutation order"""
    perms = Permutation.all(g)
    workers = max_workers or settings.max_workers
    if workers > 1 and len(perms) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            images = list(executor.map(lambda sigma: act(sigma, p), perms))
    else:
        images = [act(sigma, p) for sigma in perms]
    total = p.context.zero()
    for image in images:
        total = total + image
    return total * Fraction(1, factorial(g))


class InvariantBasisBuilder:
    """Builds truncated invariant bases block by block on a thread pool."""

    def __init__(self, tensor: TensorPowerContext, max_workers: Optional[int] = None):
        self.tensor = tensor
        self.context = tensor.context
        self.max_workers = max_workers or settings.max_workers
        self.perms = Permutation.all(tensor.g)
        self.relabellings = [tensor.relabelling(sigma) for sigma in self.perms]
        self.stats = {
            'blocks': 0,
            'monomials': 0,
            'orbits': 0,
            'vanishing_orbits': 0,
            'basis_size': 0,
        }

    def blocks(self, d: int, w: int) -> Dict[Tuple[int, ...], List[SuperMonomial]]:
        grouped: Dict[Tuple[int, ...], List[SuperMonomial]] = {}
        for monomial in self.context.monomials(d, w):
            block = self.tensor.block_of(monomial.exponents, monomial.odd_mask)
            grouped.setdefault(block, []).append(monomial)
        return dict(sorted(grouped.items()))

    def symmetrize(self, monomial: SuperMonomial) -> SuperPolynomial:
        single = SuperPolynomial(self.context, {monomial: 1})
        total: Dict[SuperMonomial, Fraction] = {}
        for relabelling in self.relabellings:
            for m, c in single.rename(relabelling).items():
                total[m] = total.get(m, 0) + c
        scale = Fraction(1, len(self.perms))
        return SuperPolynomial(self.context, {m: c * scale for m, c in total.items()})

    def block_basis(self, monomials: List[SuperMonomial]) -> Tuple[List[SuperPolynomial], Dict]:
        local = {'monomials': len(monomials), 'orbits': 0, 'vanishing_orbits': 0}
        reducer = RowReducer(key=SuperMonomial.sort_key)
        seen = set()
        for monomial in monomials:
            if monomial in seen:
                continue
            local['orbits'] += 1
            for relabelling in self.relabellings:
                seen.update(SuperPolynomial(self.context, {monomial: 1}).rename(relabelling).terms)
            symmetric = self.symmetrize(monomial)
            if symmetric.is_zero():
                local['vanishing_orbits'] += 1
                continue
            reducer.insert(symmetric.terms)
        rows = [SuperPolynomial(self.context, row) for row in reducer.basis()]
        return rows, local

    def build(self, d: int, w: int) -> Dict[Tuple[int, ...], List[SuperPolynomial]]:
        """Invariant basis per multidegree block, blocks in ascending order"""
        if d < 0 or w < 0:
            raise DegreeRangeError(f"Truncation bounds must be non-negative, got d={d}, w={w}")
        blocks = self.blocks(d, w)
        keys = list(blocks)
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            results = list(executor.map(lambda key: self.block_basis(blocks[key]), keys))
        bases = {}
        for key, (rows, local) in zip(keys, results):
            bases[key] = rows
            self.stats['blocks'] += 1
            for name, value in local.items():
                self.stats[name] += value
            self.stats['basis_size'] += len(rows)
        logger.info(f"Invariant basis g={self.tensor.g} d={d} w={w}: {self.stats['basis_size']} elements in {len(keys)} blocks, "
                    f"{self.stats['vanishing_orbits']} of {self.stats['orbits']} orbits vanish")
        return bases

    def basis(self, d: int, w: int) -> List[SuperPolynomial]:
        rows = [row for block in self.build(d, w).values() for row in block]
        return sorted(rows, key=lambda p: p.terms_sorted()[0][0].sort_key(), reverse=True)

def invariant_basis(tensor: TensorPowerContext, d: int, w: int, max_workers: Optional[int] = None) -> List[SuperPolynomial]:
    """RREF basis of invariants with even degree <= d and odd degree <= w, pivots descending"""
    return InvariantBasisBuilder(tensor, max_workers).basis(d, w)
