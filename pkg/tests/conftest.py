from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings, strategies as st

from models.superalgebra import SuperPolynomial, VariableContext

hypothesis_settings.register_profile(
    'supersym', deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
hypothesis_settings.load_profile('supersym')

coefficients = st.builds(Fraction, st.integers(-4, 4), st.sampled_from([1, 1, 2, 3]))


def polynomials(context: VariableContext, parity=None, max_degree: int = 2, max_terms: int = 4):
    """Random elements of a context, optionally homogeneous of the given parity"""
    monomials = [m for m in context.monomials(max_degree, len(context.odd_vars))
                 if parity is None or m.parity == parity]
    if not monomials:
        return st.just(context.zero())
    terms = st.lists(st.tuples(st.sampled_from(monomials), coefficients), max_size=max_terms)

    def build(pairs):
        total = {}
        for monomial, coefficient in pairs:
            total[monomial] = total.get(monomial, 0) + coefficient
        return SuperPolynomial(context, total)

    return terms.map(build)


@pytest.fixture
def ctx():
    return VariableContext(('z1', 'z2'), ('t1', 't2', 't3'))


@pytest.fixture
def base_ab():
    return VariableContext(('a1', 'a2'), ('b1', 'b2'))
