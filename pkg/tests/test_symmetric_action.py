import logging
import random

import pytest
from hypothesis import given, strategies as st

from conftest import polynomials
from core.errors import ContextMismatchError, DegreeRangeError, ParseError
from models.superalgebra import SuperPolynomial, VariableContext
from models.symmetric import Permutation, TensorPowerContext
from verify.processors.symmetric_action import (
    act,
    embed,
    invariant_basis,
    is_invariant,
    koszul_tensor,
    reynolds,
    tensor_product,
)

BASE = VariableContext(('z',), ('t',))
TWO_ODD = VariableContext(('z',), ('t', 'e'))
TENSOR3 = TensorPowerContext(BASE, 3)
CTX3 = TENSOR3.context

permutations3 = st.permutations([1, 2, 3]).map(lambda images: Permutation(tuple(images)))


def test_tensor_power_naming():
    assert CTX3.even_vars == ('z1', 'z2', 'z3')
    assert TensorPowerContext(TWO_ODD, 2).context.odd_vars == ('t1', 't2', 'e1', 'e2')


def test_permutation_algebra():
    sigma = Permutation.from_cycles('(1 2 3)', 3)
    tau = Permutation.from_cycles('(1 2)(3)', 3)
    assert sigma(1) == 2 and sigma(3) == 1
    assert sigma.compose(tau)(1) == sigma(tau(1))
    assert sigma.compose(sigma.inverse()) == Permutation.identity(3)
    assert tau.sign() == -1 and sigma.sign() == 1
    assert str(tau) == '(1 2)'
    assert str(Permutation.identity(3)) == '()'
    assert len(Permutation.all(4)) == 24


@pytest.mark.parametrize('text', ['(1 1)', '(1 4)', '1 2', '(a b)'])
def test_bad_cycle_notation(text):
    with pytest.raises(ParseError):
        Permutation.from_cycles(text, 3)


def test_transposition_of_odd_pair_changes_sign():
    ctx = TensorPowerContext(BASE, 2).context
    t1, t2 = ctx.vars('t1', 't2')
    result = act(Permutation.from_cycles('(1 2)', 2), t1 * t2)
    assert result == -(t1 * t2)
    assert str(result) == '-1*t1*t2'


def test_act_renames_indices():
    ctx = TensorPowerContext(BASE, 2).context
    z1, z2, t1, t2 = ctx.vars('z1', 'z2', 't1', 't2')
    assert act(Permutation.from_cycles('(1 2)', 2), z1 * t2) == z2 * t1


def test_act_rejects_size_mismatch():
    ctx = TensorPowerContext(BASE, 2).context
    with pytest.raises(ContextMismatchError):
        act(Permutation.identity(3), ctx.var('z1'))


def test_embed():
    z, t = BASE.vars('z', 't')
    assert embed(2, z * t, 3) == CTX3.var('z2') * CTX3.var('t2')
    with pytest.raises(DegreeRangeError):
        embed(4, z, 3)


@given(permutations3, permutations3, polynomials(CTX3))
def test_action_law(sigma, tau, p):
    assert act(sigma, act(tau, p)) == act(sigma.compose(tau), p)
    assert act(Permutation.identity(3), p) == p


@given(permutations3, polynomials(CTX3), polynomials(CTX3))
def test_action_by_ring_automorphisms(sigma, p, q):
    assert act(sigma, p * q) == act(sigma, p) * act(sigma, q)
    assert act(sigma, p + q) == act(sigma, p) + act(sigma, q)


@given(permutations3, polynomials(CTX3, parity=1))
def test_action_preserves_parity_and_degree(sigma, p):
    image = act(sigma, p)
    assert image.parity() == 1
    assert image.even_degree() == p.even_degree()


def _random_factor(rng, base):
    parity = rng.randint(0, 1)
    monomials = [m for m in base.monomials(2, len(base.odd_vars)) if m.parity == parity]
    terms = {}
    for _ in range(rng.randint(1, 3)):
        terms[rng.choice(monomials)] = rng.randint(-3, 3)
    return SuperPolynomial(base, terms)


def test_koszul_sign_rule_matches_renaming():
    rng = random.Random(20240607)
    for _ in range(1000):
        g = rng.randint(1, 4)
        base = rng.choice([BASE, TWO_ODD])
        factors = [_random_factor(rng, base) for _ in range(g)]
        sigma = Permutation(tuple(rng.sample(range(1, g + 1), g)))
        assert koszul_tensor(sigma, factors) == act(sigma.inverse(), tensor_product(factors))


@given(polynomials(CTX3, max_terms=3))
def test_reynolds_is_an_invariant_projection(p):
    averaged = reynolds(p, 3)
    assert is_invariant(averaged, 3)
    assert reynolds(averaged, 3) == averaged


def test_reynolds_fixes_invariants_and_kills_alternating_odd_pairs():
    ctx = TensorPowerContext(BASE, 2).context
    z1, z2, t1, t2 = ctx.vars('z1', 'z2', 't1', 't2')
    assert reynolds(z1 + z2, 2) == z1 + z2
    assert reynolds(t1 * t2, 2).is_zero()


def test_product_of_odd_generators_is_invariant():
    ctx = TensorPowerContext(BASE, 2).context
    z1, z2, t1, t2 = ctx.vars('z1', 'z2', 't1', 't2')
    assert is_invariant(t1 * t2 * (z1 - z2), 2)
    assert not is_invariant(t1 * t2, 2)
    assert not is_invariant(t1, 2)


def test_small_invariant_basis():
    tensor = TensorPowerContext(BASE, 2)
    ctx = tensor.context
    z1, z2, t1, t2 = ctx.vars('z1', 'z2', 't1', 't2')
    basis = invariant_basis(tensor, 1, 1, max_workers=2)
    assert len(basis) == 5
    assert all(is_invariant(b, 2) for b in basis)
    assert z1 + z2 in basis
    assert t1 + t2 in basis
    assert ctx.one() in basis


def test_invariant_basis_with_two_fermions():
    tensor = TensorPowerContext(BASE, 2)
    z1, z2, t1, t2 = tensor.context.vars('z1', 'z2', 't1', 't2')
    basis = invariant_basis(tensor, 1, 2, max_workers=2)
    assert t1 * t2 * (z1 - z2) in basis
    assert t1 * t2 not in basis
    assert all(is_invariant(b, 2) for b in basis)


def test_invariant_basis_logs_vanishing_orbits(caplog):
    with caplog.at_level(logging.INFO, logger='verify.processors.symmetric_action'):
        basis = invariant_basis(TensorPowerContext(BASE, 2), 0, 2, max_workers=1)
    assert len(basis) == 2
    assert '2 elements in 3 blocks, 1 of 3 orbits vanish' in caplog.text


def test_copy_names_must_not_collide():
    clashing = VariableContext(('a', 'a1'), ('t',))
    with pytest.raises(ContextMismatchError):
        TensorPowerContext(clashing, 11)
    assert TensorPowerContext(clashing, 9).context.even_vars[:2] == ('a1', 'a2')


def test_invariant_basis_is_deterministic_and_reduced():
    tensor = TensorPowerContext(BASE, 3)
    first = invariant_basis(tensor, 2, 2, max_workers=1)
    second = invariant_basis(tensor, 2, 2, max_workers=4)
    assert first == second
    leading = [b.terms_sorted()[0] for b in first]
    assert all(coefficient == 1 for _, coefficient in leading)
    pivots = [m for m, _ in leading]
    for pivot, row in zip(pivots, first):
        others = [p for p in pivots if p != pivot]
        assert not any(row.coefficient(p) for p in others)
