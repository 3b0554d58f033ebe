#!/usr/bin/env python3
"""
Polynomial Parser Client
Parses context headers and polynomial text into SuperPolynomial values
"""

import logging
import re
from fractions import Fraction
from typing import Dict, List

from core.errors import ParseError
from models.superalgebra import SuperPolynomial, VariableContext

logger = logging.getLogger(__name__)

_NAME = re.compile(r'^[A-Za-z_][A-Za-z_0-9]*$')
_RATIONAL = re.compile(r'^(\d+)(?:/(\d+))?$')
_POWER = re.compile(r'^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$')


def parse_rational(text: str) -> Fraction:
    match = _RATIONAL.match(text.strip())
    if not match:
        raise ParseError(f"Not a rational literal: {text!r}")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ParseError(f"Zero denominator in {text!r}")
    return Fraction(int(numerator), int(denominator or 1))


def parse_unit(text: str) -> Fraction:
    """Signed rational such as '2', '-1/3'"""
    stripped = text.strip()
    sign = 1
    if stripped.startswith('-'):
        sign, stripped = -1, stripped[1:]
    elif stripped.startswith('+'):
        stripped = stripped[1:]
    return sign * parse_rational(stripped)


def parse_context(header: str) -> VariableContext:
    """Parse a declaration header like 'even z1 z2; odd t1 t2'"""
    sections: Dict[str, List[str]] = {'even': [], 'odd': []}
    seen = set()
    for chunk in header.split(';'):
        words = chunk.split()
        if not words:
            continue
        kind = words[0].lower()
        if kind not in sections or kind in seen:
            raise ParseError(f"Expected 'even ...; odd ...' header, got {header!r}")
        seen.add(kind)
        for name in words[1:]:
            name = name.strip(',')
            if not _NAME.match(name):
                raise ParseError(f"Invalid variable name {name!r} in header")
            sections[kind].append(name)
    try:
        return VariableContext(tuple(sections['even']), tuple(sections['odd']))
    except ValueError as e:
        raise ParseError(f"Invalid header {header!r}: {e}")


def _split_terms(text: str) -> List[str]:
    compact = re.sub(r'\s+', '', text)
    if not compact:
        raise ParseError("Empty polynomial")
    terms = []
    current = ''
    for position, char in enumerate(compact):
        if char in '+-' and position > 0 and compact[position - 1] not in '*^/':
            terms.append(current)
            current = char
        else:
            current += char
    terms.append(current)
    return terms


def _parse_term(term: str, context: VariableContext) -> SuperPolynomial:
    sign = Fraction(1)
    while term and term[0] in '+-':
        if term[0] == '-':
            sign = -sign
        term = term[1:]
    if not term:
        raise ParseError("Dangling sign in polynomial")
    coefficient = sign
    even: Dict[str, int] = {}
    odd: List[str] = []
    for factor in term.split('*'):
        if not factor:
            raise ParseError(f"Empty factor in term {term!r}")
        if factor[0].isdigit():
            coefficient *= parse_rational(factor)
            continue
        match = _POWER.match(factor)
        if not match:
            raise ParseError(f"Cannot read factor {factor!r}")
        name, exponent = match.group(1), int(match.group(2) or 1)
        if context.is_even(name):
            even[name] = even.get(name, 0) + exponent
        elif context.is_odd(name):
            if exponent > 1:
                return context.zero()
            odd.extend([name] * exponent)
        else:
            raise ParseError(f"Unknown variable {name!r}; context is [{context.header()}]")
    return SuperPolynomial.monomial(context, coefficient, even, odd)


def parse_polynomial(text: str, context: VariableContext) -> SuperPolynomial:
    """
    Parse terms joined by '+'/'-', each 'coef*name^k*...' with an optional
    rational coefficient p/q.  Odd factors are multiplied in the order written.
    """
    result = context.zero()
    for term in _split_terms(text):
        result = result + _parse_term(term, context)
    logger.debug(f"Parsed {text!r} -> {result}")
    return result


def parse_assignment(assignment: Dict[str, str], target: VariableContext) -> Dict[str, SuperPolynomial]:
    return {name: parse_polynomial(text, target) for name, text in assignment.items()}
