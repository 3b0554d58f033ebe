"""
Free supercommutative algebras over the rationals.

A SuperPolynomial is a finite sum of rational multiples of monomials
z^a * theta_S, where the even part is an exponent vector over the context's
even generators and the odd part is a subset of its odd generators stored in
ascending context order.  Every reordering of odd factors is paid for with a
sign on the coefficient, so two equal elements always have identical terms.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from core.errors import ContextMismatchError, ParityError, UnknownVariableError

Scalar = Union[int, Fraction]


def _popcount(mask: int) -> int:
    return bin(mask).count('1')


def _odd_product(left: int, right: int) -> Tuple[int, int]:
    """Sign and mask of theta_left * theta_right; sign 0 when a generator repeats"""
    if left & right:
        return 0, 0
    swaps = 0
    rest = right
    while rest:
        low = rest & -rest
        index = low.bit_length() - 1
        swaps += _popcount(left >> (index + 1))
        rest ^= low
    return (-1 if swaps & 1 else 1), left | right


def sort_odd_indices(indices: Sequence[int]) -> Tuple[int, int]:
    """Sign and mask of a product of odd generators listed in arbitrary order"""
    inversions = 0
    for i in range(len(indices)):
        for j in range(i + 1, len(indices)):
            if indices[i] == indices[j]:
                return 0, 0
            if indices[i] > indices[j]:
                inversions += 1
    mask = 0
    for index in indices:
        mask |= 1 << index
    return (-1 if inversions & 1 else 1), mask


@dataclass(frozen=True)
class VariableContext:
    """Ordered even and odd generator names; immutable once built."""

    even_vars: Tuple[str, ...] = ()
    odd_vars: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'even_vars', tuple(self.even_vars))
        object.__setattr__(self, 'odd_vars', tuple(self.odd_vars))
        names = self.even_vars + self.odd_vars
        if any(not isinstance(name, str) or not name for name in names):
            raise ContextMismatchError(f"Variable names must be non-empty strings: {names}")
        if len(set(names)) != len(names):
            raise ContextMismatchError(f"Duplicate variable names in context: {names}")

    @cached_property
    def even_index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.even_vars)}

    @cached_property
    def odd_index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.odd_vars)}

    @property
    def names(self) -> Tuple[str, ...]:
        return self.even_vars + self.odd_vars

    def is_even(self, name: str) -> bool:
        return name in self.even_index

    def is_odd(self, name: str) -> bool:
        return name in self.odd_index

    def __contains__(self, name: str) -> bool:
        return name in self.even_index or name in self.odd_index

    def extend(self, even: Iterable[str] = (), odd: Iterable[str] = (), prepend: bool = False) -> 'VariableContext':
        even, odd = tuple(even), tuple(odd)
        if prepend:
            return VariableContext(even + self.even_vars, odd + self.odd_vars)
        return VariableContext(self.even_vars + even, self.odd_vars + odd)

    def header(self) -> str:
        return f"even {' '.join(self.even_vars)}; odd {' '.join(self.odd_vars)}".replace('  ', ' ')

    # convenience constructors
    def zero(self) -> 'SuperPolynomial':
        return SuperPolynomial(self, {})

    def one(self) -> 'SuperPolynomial':
        return self.constant(1)

    def constant(self, value: Scalar) -> 'SuperPolynomial':
        return SuperPolynomial(self, {self.unit_monomial(): Fraction(value)})

    def var(self, name: str) -> 'SuperPolynomial':
        if name not in self:
            raise UnknownVariableError(f"'{name}' is not a variable of [{self.header()}]")
        return SuperPolynomial.monomial(self, 1, {name: 1} if self.is_even(name) else {}, [name] if self.is_odd(name) else [])

    def vars(self, *names: str) -> List['SuperPolynomial']:
        return [self.var(name) for name in names]

    def unit_monomial(self) -> 'SuperMonomial':
        return SuperMonomial((0,) * len(self.even_vars), 0)

    def monomials(self, even_degree: int, odd_degree: int) -> Iterator['SuperMonomial']:
        """All monomials of total even degree <= even_degree and odd degree <= odd_degree"""
        n = len(self.even_vars)
        for degree in range(even_degree + 1):
            for picks in combinations_with_replacement(range(n), degree):
                exponents = [0] * n
                for index in picks:
                    exponents[index] += 1
                for size in range(min(odd_degree, len(self.odd_vars)) + 1):
                    for subset in combinations(range(len(self.odd_vars)), size):
                        mask = 0
                        for index in subset:
                            mask |= 1 << index
                        yield SuperMonomial(tuple(exponents), mask)


@dataclass(frozen=True, order=False)
class SuperMonomial:
    """Context-relative monomial: exponent vector plus odd bitmask."""

    exponents: Tuple[int, ...]
    odd_mask: int = 0

    @property
    def even_degree(self) -> int:
        return sum(self.exponents)

    @property
    def odd_degree(self) -> int:
        return _popcount(self.odd_mask)

    @property
    def parity(self) -> int:
        return self.odd_degree % 2

    def sort_key(self) -> Tuple:
        # graded lex on the even part, then the odd bitmask
        return (self.even_degree, self.exponents, self.odd_mask)

    def odd_indices(self) -> List[int]:
        return [i for i in range(self.odd_mask.bit_length()) if self.odd_mask >> i & 1]

    def odd_set(self, context: VariableContext) -> Tuple[str, ...]:
        return tuple(context.odd_vars[i] for i in self.odd_indices())

    def render(self, context: VariableContext) -> str:
        factors = []
        for name, exponent in zip(context.even_vars, self.exponents):
            if exponent == 1:
                factors.append(name)
            elif exponent > 1:
                factors.append(f"{name}^{exponent}")
        factors.extend(self.odd_set(context))
        return '*'.join(factors)


def _format_coefficient(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class SuperPolynomial:
    """Immutable element of the free supercommutative algebra of a context."""

    __slots__ = ('context', '_terms', '_hash')

    def __init__(self, context: VariableContext, terms: Mapping[SuperMonomial, Scalar]):
        self.context = context
        cleaned = {}
        for monomial, coefficient in terms.items():
            if coefficient:
                cleaned[monomial] = Fraction(coefficient)
        self._terms = cleaned
        self._hash = None

    # construction

    @classmethod
    def monomial(cls, context: VariableContext, coefficient: Scalar,
                 even: Optional[Mapping[str, int]] = None, odd: Sequence[str] = ()) -> 'SuperPolynomial':
        """Build c * prod(even) * odd[0]*odd[1]*... taking the odd factors in the given order"""
        exponents = [0] * len(context.even_vars)
        for name, exponent in (even or {}).items():
            if name not in context.even_index:
                raise UnknownVariableError(f"'{name}' is not an even variable of {context.header()}")
            if exponent < 0:
                raise ValueError(f"Negative exponent for '{name}'")
            exponents[context.even_index[name]] += exponent
        indices = []
        for name in odd:
            if name not in context.odd_index:
                raise UnknownVariableError(f"'{name}' is not an odd variable of {context.header()}")
            indices.append(context.odd_index[name])
        sign, mask = sort_odd_indices(indices)
        if sign == 0:
            return cls(context, {})
        return cls(context, {SuperMonomial(tuple(exponents), mask): sign * Fraction(coefficient)})

    # inspection

    @property
    def terms(self) -> Dict[SuperMonomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def terms_sorted(self) -> List[Tuple[SuperMonomial, Fraction]]:
        """Terms in descending monomial order"""
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key(), reverse=True)

    def coefficient(self, monomial: SuperMonomial) -> Fraction:
        return self._terms.get(monomial, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient(self.context.unit_monomial())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        unit = self.context.unit_monomial()
        return all(m == unit for m in self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def parity(self) -> Optional[int]:
        """0 or 1 for homogeneous elements (zero counts as even), None otherwise"""
        parities = {m.parity for m in self._terms}
        if not parities:
            return 0
        if len(parities) == 1:
            return parities.pop()
        return None

    def is_even(self) -> bool:
        return all(m.parity == 0 for m in self._terms)

    def is_odd(self) -> bool:
        return all(m.parity == 1 for m in self._terms)

    def is_homogeneous(self) -> bool:
        return self.parity() is not None

    def even_degree(self) -> int:
        return max((m.even_degree for m in self._terms), default=0)

    def odd_degree(self) -> int:
        return max((m.odd_degree for m in self._terms), default=0)

    # arithmetic

    def _check(self, other: 'SuperPolynomial'):
        if other.context != self.context:
            raise ContextMismatchError(
                f"Cannot combine elements of [{self.context.header()}] and [{other.context.header()}]")

    def _coerce(self, other) -> 'SuperPolynomial':
        if isinstance(other, SuperPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.context.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for monomial, coefficient in other._terms.items():
            terms[monomial] = terms.get(monomial, 0) + coefficient
        return SuperPolynomial(self.context, terms)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial(self.context, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SuperPolynomial(self.context, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[SuperMonomial, Fraction] = {}
        for left, c1 in self._terms.items():
            for right, c2 in other._terms.items():
                sign, mask = _odd_product(left.odd_mask, right.odd_mask)
                if sign == 0:
                    continue
                exponents = tuple(a + b for a, b in zip(left.exponents, right.exponents))
                key = SuperMonomial(exponents, mask)
                terms[key] = terms.get(key, 0) + sign * c1 * c2
        return SuperPolynomial(self.context, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Only non-negative integer powers are defined, got {exponent}")
        result = self.context.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._terms == self.context.constant(other)._terms
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.context == other.context and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.context, frozenset(self._terms.items())))
        return self._hash

    # morphisms

    def _even_position(self, name: str) -> int:
        if name not in self.context.even_index:
            if name in self.context.odd_index:
                raise ParityError(f"'{name}' is odd; expected an even variable")
            raise UnknownVariableError(f"'{name}' is not a variable of [{self.context.header()}]")
        return self.context.even_index[name]

    def substitute(self, assignment: Mapping[str, Union['SuperPolynomial', Scalar]],
                   target: Optional[VariableContext] = None) -> 'SuperPolynomial':
        """Image under the algebra morphism fixed by the generator assignment"""
        target = target or self.context
        for name in assignment:
            if name not in self.context:
                raise UnknownVariableError(f"Cannot assign '{name}': not in [{self.context.header()}]")

        def image(name: str, odd: bool) -> 'SuperPolynomial':
            value = assignment.get(name)
            if value is None:
                if name not in target or target.is_odd(name) != odd:
                    raise ContextMismatchError(
                        f"'{name}' is unassigned and has no same-parity counterpart in [{target.header()}]")
                return target.var(name)
            if isinstance(value, (int, Fraction)):
                value = target.constant(value)
            if value.context != target:
                raise ContextMismatchError(f"Image of '{name}' does not live in [{target.header()}]")
            if odd and not value.is_odd():
                raise ParityError(f"Odd generator '{name}' must map to an odd element, got {value}")
            if not odd and not value.is_even():
                raise ParityError(f"Even generator '{name}' must map to an even element, got {value}")
            return value

        even_images = [image(name, False) for name in self.context.even_vars]
        odd_images = [image(name, True) for name in self.context.odd_vars]
        powers: Dict[Tuple[int, int], SuperPolynomial] = {}

        def power(index: int, exponent: int) -> SuperPolynomial:
            key = (index, exponent)
            if key not in powers:
                powers[key] = even_images[index] ** exponent
            return powers[key]

        result: Dict[SuperMonomial, Fraction] = {}
        for monomial, coefficient in self._terms.items():
            term = target.constant(coefficient)
            for index, exponent in enumerate(monomial.exponents):
                if exponent:
                    term = term * power(index, exponent)
            for index in monomial.odd_indices():
                term = term * odd_images[index]
                if term.is_zero():
                    break
            for m, c in term._terms.items():
                result[m] = result.get(m, 0) + c
        return SuperPolynomial(target, result)

    def rename(self, mapping: Mapping[str, str], target: Optional[VariableContext] = None) -> 'SuperPolynomial':
        """Substitute generators by generators; names absent from mapping keep their name"""
        target = target or self.context
        even_map = []
        for name in self.context.even_vars:
            new = mapping.get(name, name)
            if new not in target.even_index:
                raise ContextMismatchError(f"Even '{name}' -> '{new}' is not an even variable of [{target.header()}]")
            even_map.append(target.even_index[new])
        odd_map = []
        for name in self.context.odd_vars:
            new = mapping.get(name, name)
            if new not in target.odd_index:
                raise ContextMismatchError(f"Odd '{name}' -> '{new}' is not an odd variable of [{target.header()}]")
            odd_map.append(target.odd_index[new])
        width = len(target.even_vars)
        result: Dict[SuperMonomial, Fraction] = {}
        for monomial, coefficient in self._terms.items():
            exponents = [0] * width
            for index, exponent in enumerate(monomial.exponents):
                if exponent:
                    exponents[even_map[index]] += exponent
            sign, mask = sort_odd_indices([odd_map[i] for i in monomial.odd_indices()])
            if sign == 0:
                continue
            key = SuperMonomial(tuple(exponents), mask)
            result[key] = result.get(key, 0) + sign * coefficient
        return SuperPolynomial(target, result)

    def to_context(self, target: VariableContext) -> 'SuperPolynomial':
        return self.rename({}, target)

    def derivative(self, name: str) -> 'SuperPolynomial':
        index = self._even_position(name)
        terms: Dict[SuperMonomial, Fraction] = {}
        for monomial, coefficient in self._terms.items():
            exponent = monomial.exponents[index]
            if not exponent:
                continue
            exponents = list(monomial.exponents)
            exponents[index] -= 1
            terms[SuperMonomial(tuple(exponents), monomial.odd_mask)] = coefficient * exponent
        return SuperPolynomial(self.context, terms)

    # decompositions used by the divisor code

    def collect(self, name: str, target: VariableContext) -> Dict[int, 'SuperPolynomial']:
        """Coefficients of the powers of an even variable, as elements of a context without it"""
        index = self._even_position(name)
        keep = [i for i in range(len(self.context.even_vars)) if i != index]
        even_map = [target.even_index.get(self.context.even_vars[i]) for i in keep]
        odd_map = [target.odd_index.get(v) for v in self.context.odd_vars]
        buckets: Dict[int, Dict[SuperMonomial, Fraction]] = {}
        for monomial, coefficient in self._terms.items():
            exponents = [0] * len(target.even_vars)
            for position, i in enumerate(keep):
                if not monomial.exponents[i]:
                    continue
                if even_map[position] is None:
                    raise ContextMismatchError(f"'{self.context.even_vars[i]}' has no counterpart in [{target.header()}]")
                exponents[even_map[position]] = monomial.exponents[i]
            odd_positions = [odd_map[i] for i in monomial.odd_indices()]
            if None in odd_positions:
                raise ContextMismatchError(f"Odd factor of {monomial.render(self.context)} has no counterpart in [{target.header()}]")
            sign, mask = sort_odd_indices(odd_positions)
            bucket = buckets.setdefault(monomial.exponents[index], {})
            key = SuperMonomial(tuple(exponents), mask)
            bucket[key] = bucket.get(key, 0) + sign * coefficient
        return {power: SuperPolynomial(target, terms) for power, terms in buckets.items()}

    def split_odd(self, name: str) -> Tuple['SuperPolynomial', 'SuperPolynomial']:
        """Write self = p0 + name*p1 with p0, p1 free of the odd generator name"""
        if name not in self.context.odd_index:
            raise UnknownVariableError(f"'{name}' is not an odd variable of [{self.context.header()}]")
        bit = 1 << self.context.odd_index[name]
        free, attached = {}, {}
        for monomial, coefficient in self._terms.items():
            if monomial.odd_mask & bit:
                # move the generator to the front before stripping it
                sign = -1 if _popcount(monomial.odd_mask & (bit - 1)) & 1 else 1
                attached[SuperMonomial(monomial.exponents, monomial.odd_mask ^ bit)] = sign * coefficient
            else:
                free[monomial] = coefficient
        return SuperPolynomial(self.context, free), SuperPolynomial(self.context, attached)

    # rendering

    def __str__(self):
        if not self._terms:
            return '0'
        pieces = []
        for position, (monomial, coefficient) in enumerate(self.terms_sorted()):
            body = monomial.render(self.context)
            magnitude = _format_coefficient(abs(coefficient))
            text = f"{magnitude}*{body}" if body else magnitude
            if position == 0:
                pieces.append(f"-{text}" if coefficient < 0 else text)
            else:
                pieces.append(f" - {text}" if coefficient < 0 else f" + {text}")
        return ''.join(pieces)

    def __repr__(self):
        return f"SuperPolynomial({self}; {self.context.header()})"
