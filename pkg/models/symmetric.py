"""
Permutations of {1..g} and the tensor-power contexts they act on.
"""

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Dict, List, Sequence, Tuple

from core.errors import ContextMismatchError, DegreeRangeError, ParseError
from models.superalgebra import VariableContext

_CYCLE = re.compile(r'\(([^()]*)\)')


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..g} stored as the tuple (sigma(1), ..., sigma(g))."""

    images: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'images', tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"Not a permutation of 1..{len(self.images)}: {self.images}")

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @classmethod
    def identity(cls, g: int) -> 'Permutation':
        return cls(tuple(range(1, g + 1)))

    @classmethod
    def transposition(cls, g: int, i: int, j: int) -> 'Permutation':
        images = list(range(1, g + 1))
        images[i - 1], images[j - 1] = images[j - 1], images[i - 1]
        return cls(tuple(images))

    @classmethod
    def adjacent_transpositions(cls, g: int) -> List['Permutation']:
        return [cls.transposition(g, i, i + 1) for i in range(1, g)]

    @classmethod
    def all(cls, g: int) -> List['Permutation']:
        """S_g in lexicographic order of image tuples"""
        return [cls(images) for images in permutations(range(1, g + 1))]

    def compose(self, other: 'Permutation') -> 'Permutation':
        """self o other, i.e. i -> self(other(i))"""
        if other.size != self.size:
            raise DegreeRangeError(f"Cannot compose permutations of {self.size} and {other.size} points")
        return Permutation(tuple(self(other(i)) for i in range(1, self.size + 1)))

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        return self.compose(other)

    def inverse(self) -> 'Permutation':
        images = [0] * self.size
        for i, image in enumerate(self.images, start=1):
            images[image - 1] = i
        return Permutation(tuple(images))

    def inversions(self) -> int:
        return sum(1 for i in range(self.size) for j in range(i + 1, self.size) if self.images[i] > self.images[j])

    def sign(self) -> int:
        return -1 if self.inversions() % 2 else 1

    def cycles(self) -> List[Tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point"""
        seen = set()
        result = []
        for start in range(1, self.size + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            current = self(start)
            while current != start:
                cycle.append(current)
                seen.add(current)
                current = self(current)
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def __str__(self):
        cycles = self.cycles()
        if not cycles:
            return '()'
        return ''.join('(' + ' '.join(str(i) for i in cycle) + ')' for cycle in cycles)

    @classmethod
    def from_cycles(cls, text: str, g: int) -> 'Permutation':
        """Parse cycle notation such as '(1 2)(3)'; points not mentioned are fixed"""
        stripped = text.strip()
        if _CYCLE.sub('', stripped).strip():
            raise ParseError(f"Invalid cycle notation: {text!r}")
        images = list(range(1, g + 1))
        used = set()
        for body in _CYCLE.findall(stripped):
            tokens = body.replace(',', ' ').split()
            try:
                points = [int(token) for token in tokens]
            except ValueError:
                raise ParseError(f"Invalid cycle notation: {text!r}")
            for point in points:
                if point < 1 or point > g:
                    raise ParseError(f"Point {point} out of range 1..{g} in {text!r}")
                if point in used:
                    raise ParseError(f"Point {point} appears twice in {text!r}")
                used.add(point)
            for position, point in enumerate(points):
                images[point - 1] = points[(position + 1) % len(points)]
        return cls(tuple(images))

    @staticmethod
    def largest_point(text: str) -> int:
        numbers = [int(n) for n in re.findall(r'\d+', text)]
        return max(numbers, default=1)


@dataclass(frozen=True)
class TensorPowerContext:
    """The context of B^{(x)g}: base variable v becomes v1..vg."""

    base: VariableContext
    g: int

    def __post_init__(self):
        if self.g < 1:
            raise DegreeRangeError(f"Tensor power needs g >= 1, got {self.g}")
        names = [self.copy_name(v, i) for v in self.base.names for i in range(1, self.g + 1)]
        clashes = sorted({name for name in names if names.count(name) > 1})
        if clashes:
            raise ContextMismatchError(f"Copy names collide in the {self.g}-fold tensor power: {clashes}")

    @staticmethod
    def copy_name(name: str, i: int) -> str:
        return f"{name}{i}"

    @cached_property
    def context(self) -> VariableContext:
        even = [self.copy_name(v, i) for v in self.base.even_vars for i in range(1, self.g + 1)]
        odd = [self.copy_name(v, i) for v in self.base.odd_vars for i in range(1, self.g + 1)]
        return VariableContext(tuple(even), tuple(odd))

    @cached_property
    def origin(self) -> Dict[str, Tuple[str, int]]:
        """copy name -> (base name, factor index)"""
        result = {}
        for name in self.base.names:
            for i in range(1, self.g + 1):
                result[self.copy_name(name, i)] = (name, i)
        return result

    def copies(self, name: str) -> List[str]:
        return [self.copy_name(name, i) for i in range(1, self.g + 1)]

    def relabelling(self, sigma: Permutation) -> Dict[str, str]:
        """v_i -> v_{sigma(i)} for every copy name"""
        if sigma.size != self.g:
            raise DegreeRangeError(f"Permutation of {sigma.size} points cannot act on a {self.g}-fold tensor power")
        return {copy: self.copy_name(name, sigma(i)) for copy, (name, i) in self.origin.items()}

    def block_of(self, exponents: Sequence[int], odd_mask: int) -> Tuple[int, ...]:
        """Multidegree block: total even degree, then odd degree per base odd variable"""
        block = [sum(exponents)]
        for position in range(len(self.base.odd_vars)):
            chunk = (odd_mask >> (position * self.g)) & ((1 << self.g) - 1)
            block.append(bin(chunk).count('1'))
        return tuple(block)
