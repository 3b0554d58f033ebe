#!/usr/bin/env python3
"""
Document Reader Client
Reads divisor and morphism JSON documents into algebra objects and writes them back
"""

import json
import logging
from pathlib import Path
from typing import Dict, Union

from pydantic import ValidationError

from core.errors import ParseError, SuperAlgebraError
from models.divisor import BaseMorphism, Superdivisor
from models.documents import BaseSpec, CoefficientPair, DivisorDocument, MorphismDocument
from models.superalgebra import VariableContext
from verify.clients.polynomial_parser import parse_assignment, parse_polynomial

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _read_json(path: PathLike) -> Dict:
    try:
        with open(path, 'r') as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise ParseError(f"No such file: {path}")
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {path}: {e}")


def context_from_spec(spec: BaseSpec) -> VariableContext:
    try:
        return VariableContext(tuple(spec.even), tuple(spec.odd))
    except ValueError as e:
        raise ParseError(f"Invalid base declaration: {e}")


def context_to_spec(context: VariableContext) -> BaseSpec:
    return BaseSpec(even=list(context.even_vars), odd=list(context.odd_vars))


def divisor_from_document(document: DivisorDocument) -> Superdivisor:
    base = context_from_spec(document.base)
    coeffs = []
    for pair in document.coeffs:
        coeffs.append((parse_polynomial(pair.a, base), parse_polynomial(pair.b, base)))
    try:
        return Superdivisor(document.g, base, tuple(coeffs))
    except SuperAlgebraError as e:
        raise ParseError(f"Divisor document is not in normal form: {e}")


def divisor_to_document(divisor: Superdivisor) -> DivisorDocument:
    return DivisorDocument(
        g=divisor.g,
        coeffs=[CoefficientPair(a=str(a), b=str(b)) for a, b in divisor.coeffs],
        base=context_to_spec(divisor.base),
    )


def load_divisor(path: PathLike) -> Superdivisor:
    try:
        document = DivisorDocument.model_validate(_read_json(path))
    except ValidationError as e:
        raise ParseError(f"Invalid divisor document {path}: {e}")
    divisor = divisor_from_document(document)
    logger.info(f"Loaded degree-{divisor.g} divisor over [{divisor.base.header()}] from {path}")
    return divisor


def morphism_from_document(document: MorphismDocument, source: VariableContext) -> BaseMorphism:
    target = context_from_spec(document.target)
    try:
        return BaseMorphism(source, target, parse_assignment(document.assignment, target))
    except ParseError:
        raise
    except SuperAlgebraError as e:
        raise ParseError(f"Invalid morphism: {e}")


def load_morphism(path: PathLike, source: VariableContext) -> BaseMorphism:
    try:
        document = MorphismDocument.model_validate(_read_json(path))
    except ValidationError as e:
        raise ParseError(f"Invalid morphism document {path}: {e}")
    return morphism_from_document(document, source)
