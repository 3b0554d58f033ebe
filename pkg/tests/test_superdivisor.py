import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import polynomials
from core.errors import ContextMismatchError, DivisorShapeError, ParityError
from models.divisor import BaseMorphism, Superdivisor, trivial_divisor
from models.superalgebra import VariableContext
from verify.processors.representability import random_base, random_divisor, random_element
from verify.processors.superdivisor import (
    QuotientCoordinates,
    QuotientPresentation,
    char_poly,
    coordinates_to_element,
    determinant,
    divisor_sum,
    from_generator,
    make_divisor,
    normal_form,
    pullback,
    quotient_rank,
    reduce,
)

BASE = VariableContext(('a1', 'a2'), ('b1', 'b2'))
POINTS = VariableContext(('z1', 'z2'), ('tc1', 'tc2'))
TARGET = VariableContext(('x',), ('u',))


def _generic(g=2):
    a = BASE.vars('a1', 'a2')
    b = BASE.vars('b1', 'b2')
    return make_divisor(g, list(zip(a[:g], b[:g])), BASE)


def _points():
    z1, z2, tc1, tc2 = POINTS.vars('z1', 'z2', 'tc1', 'tc2')
    return make_divisor(1, [(z1, tc1)]), make_divisor(1, [(z2, tc2)])


def test_defining_polynomial():
    divisor = _generic()
    ambient = divisor.ambient_context
    assert ambient.even_vars == ('z', 'a1', 'a2')
    assert ambient.odd_vars == ('t', 'b1', 'b2')
    z, t, a1, a2, b1, b2 = ambient.vars('z', 't', 'a1', 'a2', 'b1', 'b2')
    assert divisor.defining_polynomial() == z ** 2 - (a1 + t * b1) * z + (a2 + t * b2)
    assert divisor.equation().endswith(' = 0')


def test_shape_errors():
    a1, b1 = BASE.vars('a1', 'b1')
    with pytest.raises(ParityError):
        make_divisor(1, [(b1, a1)])
    with pytest.raises(DivisorShapeError):
        Superdivisor(2, BASE, ((a1, b1),))
    with pytest.raises(DivisorShapeError):
        make_divisor(0, [])
    clashing = VariableContext(('z',), ('b',))
    with pytest.raises(DivisorShapeError):
        make_divisor(1, [(clashing.var('z'), clashing.var('b'))])


def test_reduce_drops_the_odd_coefficients():
    divisor = _generic()
    ordinary = reduce(divisor)
    assert ordinary.a == divisor.a
    z, a1, a2 = ordinary.ambient_context.vars('z', 'a1', 'a2')
    assert ordinary.defining_polynomial() == z ** 2 - a1 * z + a2


def test_sum_of_two_points():
    first, second = _points()
    z1, z2, tc1, tc2 = POINTS.vars('z1', 'z2', 'tc1', 'tc2')
    total = divisor_sum(first, second)
    assert total.g == 2
    assert total.coeffs == ((z1 + z2, tc1 + tc2), (z1 * z2, tc1 * z2 + tc2 * z1))


def test_sum_is_commutative_with_trivial_unit():
    first, second = _points()
    assert divisor_sum(first, second) == divisor_sum(second, first)
    assert divisor_sum(first, trivial_divisor(POINTS)) == first


def test_sum_rejects_different_bases():
    first, _ = _points()
    with pytest.raises(ContextMismatchError):
        divisor_sum(first, _generic())


def test_normal_form_of_square():
    divisor = _generic()
    presentation = QuotientPresentation(divisor)
    z = presentation.ambient.var('z')
    a1, a2, b1, b2 = BASE.vars('a1', 'a2', 'b1', 'b2')
    coordinates = normal_form(z ** 2, presentation)
    assert coordinates.even == (-a2, a1)
    assert coordinates.odd == (-b2, b1)


def test_multiples_of_the_generator_vanish():
    presentation = QuotientPresentation(_generic())
    t = presentation.ambient.var('t')
    coordinates = normal_form(t * presentation.f, presentation)
    assert all(c.is_zero() for c in coordinates.even + coordinates.odd)


AMBIENT = _generic().ambient_context


@given(polynomials(AMBIENT, max_degree=3, max_terms=3), polynomials(AMBIENT, max_degree=3, max_terms=3))
def test_normal_form_is_linear_and_idempotent(p, q):
    presentation = QuotientPresentation(_generic())
    left = presentation.normal_form(p + q)
    right_p, right_q = presentation.normal_form(p), presentation.normal_form(q)
    assert left.even == tuple(x + y for x, y in zip(right_p.even, right_q.even))
    assert left.odd == tuple(x + y for x, y in zip(right_p.odd, right_q.odd))
    assert presentation.normal_form(coordinates_to_element(right_p, presentation)) == right_p


@pytest.mark.parametrize('g', [0, 1, 2])
def test_quotient_rank(g):
    assert quotient_rank(QuotientPresentation(_generic(g))) == (g, g)


def test_coordinates_rebuild_the_remainder():
    presentation = QuotientPresentation(_generic())
    z, t = presentation.ambient.vars('z', 't')
    a1 = BASE.var('a1')
    coordinates = QuotientCoordinates((BASE.one(), a1), (BASE.zero(), BASE.zero()))
    assert presentation.to_element(coordinates) == 1 + z * presentation.divisor.lift(a1)
    assert presentation.reduce(t * z) == t * z


def test_char_poly_of_coordinate_is_the_generator():
    for g in (1, 2):
        presentation = QuotientPresentation(_generic(g))
        assert char_poly(presentation, presentation.ambient.var('z')) == presentation.f


def test_char_poly_of_square_in_degree_one():
    presentation = QuotientPresentation(_generic(1))
    z, t, a1, b1 = presentation.ambient.vars('z', 't', 'a1', 'b1')
    assert char_poly(presentation, z ** 2) == z - (a1 ** 2 + 2 * a1 * t * b1)


def test_char_poly_rejects_odd_multipliers():
    presentation = QuotientPresentation(_generic())
    with pytest.raises(ParityError):
        char_poly(presentation, presentation.ambient.var('t'))


def test_determinant_of_coordinate():
    divisor = _generic()
    presentation = QuotientPresentation(divisor)
    assert determinant(presentation, presentation.ambient.var('z')) == divisor.coefficient(2)
    empty = QuotientPresentation(trivial_divisor(BASE))
    assert determinant(empty, empty.ambient.one()) == 1


def test_from_generator_normalises_the_odd_part():
    base = VariableContext(('a',), ('b', 'c'))
    ambient = base.extend(even=('z',), odd=('t',), prepend=True)
    z, t, a, b, c = ambient.vars('z', 't', 'a', 'b', 'c')
    divisor = from_generator(z - a - t * b - t * c * z, base)
    ba, bb, bc = base.vars('a', 'b', 'c')
    assert divisor.coeffs == ((ba, bb + ba * bc),)


def test_from_generator_errors():
    base = VariableContext(('a',), ('b',))
    ambient = base.extend(even=('z',), odd=('t',), prepend=True)
    z, t, a = ambient.vars('z', 't', 'a')
    with pytest.raises(DivisorShapeError):
        from_generator(2 * z - a, base)
    with pytest.raises(DivisorShapeError):
        from_generator(ambient.zero(), base)
    with pytest.raises(ParityError):
        from_generator(z + t, base)
    with pytest.raises(ContextMismatchError):
        from_generator(base.var('a'), base)


def _morphism():
    x, u = TARGET.vars('x', 'u')
    return BaseMorphism(POINTS, TARGET, {'z1': x ** 2, 'z2': x + 1, 'tc1': u, 'tc2': x * u})


def test_pullback_substitutes_coefficients():
    first, _ = _points()
    x, u = TARGET.vars('x', 'u')
    pulled = pullback(first, _morphism())
    assert pulled.base == TARGET
    assert pulled.coeffs == ((x ** 2, u),)
    assert pullback(first, BaseMorphism.identity(POINTS)) == first


def test_pullback_composes():
    first, second = _points()
    total = divisor_sum(first, second)
    further = VariableContext(('y',), ('v',))
    y, v = further.vars('y', 'v')
    psi = BaseMorphism(TARGET, further, {'x': Fraction(1, 2) * y, 'u': y * v})
    phi = _morphism()
    assert pullback(pullback(total, phi), psi) == pullback(total, phi.compose(psi))


def test_pullback_commutes_with_reduce_and_sum():
    first, second = _points()
    phi = _morphism()
    total = divisor_sum(first, second)
    assert reduce(pullback(total, phi)).a == tuple(phi.apply(a) for a in reduce(total).a)
    assert pullback(total, phi) == divisor_sum(pullback(first, phi), pullback(second, phi))


def test_pullback_needs_matching_source():
    with pytest.raises(ContextMismatchError):
        pullback(_generic(), _morphism())


@pytest.mark.parametrize('seed', range(6))
def test_random_divisors_have_full_rank_quotients(seed):
    rng = random.Random(seed)
    g = rng.randint(1, 4)
    base = random_base(rng.randint(1, 4), rng.randint(1, 4))
    divisor = random_divisor(rng, g, base)
    presentation = QuotientPresentation(divisor)
    assert quotient_rank(presentation) == (g, g)
    z = presentation.ambient.var('z')
    assert char_poly(presentation, z) == presentation.f
    p = random_element(rng, presentation.ambient, 0, max_degree=g + 1, max_terms=4)
    q = random_element(rng, presentation.ambient, 1, max_degree=g + 1, max_terms=4)
    left, right_p, right_q = normal_form(p + q, presentation), normal_form(p, presentation), normal_form(q, presentation)
    assert left.even == tuple(x + y for x, y in zip(right_p.even, right_q.even))
    assert left.odd == tuple(x + y for x, y in zip(right_p.odd, right_q.odd))
    assert normal_form(coordinates_to_element(left, presentation), presentation) == left


@pytest.mark.parametrize('seed', range(4))
def test_reduce_of_a_sum_is_the_product(seed):
    rng = random.Random(seed)
    base = random_base(2, 2)
    first = random_divisor(rng, rng.randint(1, 2), base)
    second = random_divisor(rng, rng.randint(1, 2), base)
    total = reduce(divisor_sum(first, second))
    assert total.g == first.g + second.g
    assert total.defining_polynomial() == reduce(first).defining_polynomial() * reduce(second).defining_polynomial()
