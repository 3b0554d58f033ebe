from fractions import Fraction

import pytest
from hypothesis import given

from conftest import polynomials
from core.errors import ParseError
from models.superalgebra import VariableContext
from verify.clients.polynomial_parser import parse_context, parse_polynomial, parse_rational, parse_unit

CTX = VariableContext(('z1', 'z2'), ('t1', 't2'))


def test_header():
    context = parse_context('even z1 z2; odd t1 t2')
    assert context == CTX
    assert parse_context('odd t') == VariableContext((), ('t',))


@pytest.mark.parametrize('header', ['even z; even w', 'evens z', 'even z; odd z', 'even 1z'])
def test_bad_headers(header):
    with pytest.raises(ParseError):
        parse_context(header)


def test_terms_and_coefficients():
    z1, z2, t1, t2 = CTX.vars('z1', 'z2', 't1', 't2')
    p = parse_polynomial('3/2*z1^2*t1 - t2 + 4', CTX)
    assert p == Fraction(3, 2) * z1 ** 2 * t1 - t2 + 4
    assert parse_polynomial('-z2', CTX) == -z2


def test_odd_factors_follow_written_order():
    assert str(parse_polynomial('t2*t1', CTX)) == '-1*t1*t2'
    assert parse_polynomial('t1^2*z1', CTX).is_zero()
    assert parse_polynomial('t1*z1*t1', CTX).is_zero()


@pytest.mark.parametrize('text', ['', '1.5*z1', 'w', 'z1*', '2/0', 'z1^-1', '+'])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_polynomial(text, CTX)


def test_rationals():
    assert parse_rational('7/21') == Fraction(1, 3)
    assert parse_unit('-2') == -2
    with pytest.raises(ParseError):
        parse_rational('0.5')


@given(polynomials(CTX))
def test_rendered_text_parses_back(p):
    assert parse_polynomial(str(p), CTX) == p
