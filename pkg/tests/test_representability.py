import random
from fractions import Fraction

import pytest

from core.errors import ContextMismatchError, SuperAlgebraError
from models.curve import SupercurvePatch, spin_structure
from models.divisor import BaseMorphism, OrdinaryDivisor
from models.superalgebra import VariableContext
from verify.processors.representability import (
    STANDARD_PATCH,
    classify,
    classify_ordinary,
    conjugate_patch,
    divisor_roundtrip,
    lemma4_expansion,
    morphism_roundtrip,
    ordinary_roundtrip,
    ordinary_universal_divisor,
    random_base,
    random_divisor,
    random_morphism,
    reduce_mod_universal,
    roundtrip_check,
    spin_iso,
    spin_iso_inverse,
    superdiagonal,
    susy_classify,
    susy_expansion,
    susy_roundtrip,
    susy_universal_divisor,
    universal_base,
    universal_divisor,
    universal_divisor_1,
    verify_theorem5,
)
from verify.processors.superdivisor import divisor_sum, make_divisor, pullback

POINTS = VariableContext(('z1', 'z2'), ('tc1', 'tc2'))


def test_conjugation_is_an_involution():
    conjugate = conjugate_patch(STANDARD_PATCH)
    assert conjugate.odd_generator == 'tc'
    assert conjugate.conjugate_generator == 't'
    assert conjugate.conjugated
    assert conjugate_patch(conjugate) == STANDARD_PATCH


def test_distinct_patches_get_distinct_conjugate_names():
    first = conjugate_patch(SupercurvePatch('z', 't'))
    second = conjugate_patch(SupercurvePatch('w', 's'))
    assert first.odd_generator == 'tc'
    assert second.odd_generator == 'sc'
    assert conjugate_patch(second) == SupercurvePatch('w', 's')
    assert universal_divisor_1(SupercurvePatch('z', 't')).base == VariableContext(('z2',), ('tc',))
    assert universal_divisor_1(SupercurvePatch('z', 's')).base == VariableContext(('z2',), ('sc',))


def test_patch_names_must_differ():
    with pytest.raises(SuperAlgebraError):
        SupercurvePatch(odd_generator='z')


def test_degree_one_universal_divisor():
    divisor = universal_divisor_1()
    z, t, z2, tc = divisor.ambient_context.vars('z', 't', 'z2', 'tc')
    assert divisor.defining_polynomial() == z - z2 - t * tc
    assert superdiagonal().base == VariableContext(('z2',), ('t2',))


def test_reduce_mod_universal_of_square():
    line = VariableContext(('z',), ())
    ambient = universal_divisor_1().ambient_context
    t, z2, tc = ambient.vars('t', 'z2', 'tc')
    assert reduce_mod_universal(line.var('z') ** 2) == z2 ** 2 + 2 * t * tc * z2
    with pytest.raises(ContextMismatchError):
        reduce_mod_universal(POINTS.var('z1'))


def test_universal_divisor_specialises_to_degree_one():
    universal = universal_divisor(1)
    target = universal_divisor_1().base
    morphism = BaseMorphism(universal.base, target, {'s1': target.var('z2'), 'vs1': target.var('tc')})
    assert pullback(universal, morphism) == universal_divisor_1()
    assert classify(universal_divisor_1()) == morphism


def test_classify_a_sum_of_points():
    z1, z2, tc1, tc2 = POINTS.vars('z1', 'z2', 'tc1', 'tc2')
    total = divisor_sum(make_divisor(1, [(z1, tc1)]), make_divisor(1, [(z2, tc2)]))
    images = classify(total).images
    assert images['s1'] == z1 + z2
    assert images['s2'] == z1 * z2
    assert images['vs1'] == tc1 + tc2
    assert images['vs2'] == tc1 * z2 + tc2 * z1


@pytest.mark.parametrize('g', [1, 2, 3])
def test_classify_universal_is_identity(g):
    morphism = classify(universal_divisor(g))
    assert morphism.source == universal_base(g)
    assert morphism.is_identity()


def test_random_divisor_roundtrips():
    rng = random.Random(11)
    for _ in range(500):
        base = random_base(rng.randint(0, 3), rng.randint(0, 3))
        divisor = random_divisor(rng, rng.randint(1, 3), base)
        assert divisor_roundtrip(divisor)


def test_random_morphism_roundtrips():
    rng = random.Random(12)
    for _ in range(500):
        g = rng.randint(1, 3)
        target = random_base(rng.randint(0, 3), rng.randint(0, 3))
        assert morphism_roundtrip(random_morphism(rng, universal_base(g), target))


def test_roundtrip_check_both_directions():
    z1, z2, tc1, tc2 = POINTS.vars('z1', 'z2', 'tc1', 'tc2')
    assert roundtrip_check(make_divisor(2, [(z1 + z2, tc1), (z1 * z2, z1 * tc2)]))


def test_morphism_roundtrip_needs_universal_source():
    with pytest.raises(ContextMismatchError):
        morphism_roundtrip(BaseMorphism.identity(POINTS))


def test_superdiagonal_with_trivial_spin():
    report = verify_theorem5(spin_structure(1))
    assert report.matches
    assert report.rescaling is None
    assert report.pulled_back == superdiagonal()


def test_superdiagonal_with_rescaled_spin():
    report = verify_theorem5(spin_structure(2))
    assert report.matches
    assert report.rescaling['t2'] == '2*t2'
    assert report.pulled_back != superdiagonal()
    assert report.to_dict()['unit'] == '2'


def test_spin_isomorphism_inverts():
    spin = spin_structure(Fraction(-3, 2))
    assert spin_iso(spin).compose(spin_iso_inverse(spin)).is_identity()
    assert spin_iso_inverse(spin).compose(spin_iso(spin)).is_identity()
    with pytest.raises(SuperAlgebraError):
        spin_structure(0)


@pytest.mark.parametrize('g', [1, 2, 3, 4])
def test_sum_of_points_is_universal_pullback(g):
    report = lemma4_expansion(g)
    assert report.invariant
    assert report.product == report.universal_pullback
    assert report.matches


@pytest.mark.parametrize('g, unit', [(1, 1), (2, 1), (2, -2), (3, Fraction(1, 3))])
def test_susy_expansion(g, unit):
    assert susy_expansion(g, spin_structure(unit))


def test_susy_universal_coefficients():
    spin = spin_structure(5)
    divisor = susy_universal_divisor(2, spin)
    base = universal_base(2)
    assert divisor.b == (5 * base.var('vs1'), 5 * base.var('vs2'))
    assert divisor.a == (base.var('s1'), base.var('s2'))


@pytest.mark.parametrize('unit', [1, -1, Fraction(2, 7)])
def test_susy_roundtrip(unit):
    spin = spin_structure(unit)
    z1, z2, tc1, tc2 = POINTS.vars('z1', 'z2', 'tc1', 'tc2')
    divisor = make_divisor(2, [(z1 + z2, tc1 + tc2), (z1 * z2, tc1 * z2)])
    assert susy_roundtrip(divisor, spin)
    assert susy_classify(divisor, spin).image('vs1') == (tc1 + tc2) / Fraction(unit)


def test_ordinary_classification():
    line = VariableContext(('x',), ())
    x = line.var('x')
    divisor = OrdinaryDivisor(2, line, (x ** 2, line.constant(3)))
    assert ordinary_roundtrip(divisor)
    assert classify_ordinary(ordinary_universal_divisor(3)).is_identity()
