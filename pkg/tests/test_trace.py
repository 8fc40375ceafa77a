from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from axbq.algebra import Monomial, NormalFormElement, normal_form
from axbq.errors import DomainError
from axbq.oracle import window_trace
from axbq.suites import e, e_translate, monomial_kms, monomial_trace, s, S, u_pow
from axbq.trace import (GaugeDegree, expectation_E, expectation_F, expectation_G, gauge_degree,
                        kms_check, kms_sides, lambda_i, trace_tau)

from strategies import diagonal_monomials, elements, monomials

ONE = NormalFormElement.one()


# --- expectations --------------------------------------------------------------------

def test_E_examples():
    assert expectation_E(s(2)).is_zero()
    assert expectation_E(e(5)) == e(5)
    assert expectation_E(u_pow(3) + s(3) * S(2)) == u_pow(3)


def test_F_examples():
    assert expectation_F(u_pow(1)).is_zero()
    assert expectation_F(e_translate(2, 3)) == e_translate(2, 3)
    assert expectation_F(u_pow(1) * e(3)).is_zero()


def test_F_outside_domain():
    with pytest.raises(DomainError):
        expectation_F(s(2))


def test_F_drops_flip_terms():
    f = normal_form("f", "Z")
    assert expectation_F(f + e(2)) == e(2)


@given(elements("Z"))
def test_expectations_idempotent(x):
    E, G = expectation_E(x), expectation_G(x)
    assert expectation_E(E) == E
    assert expectation_F(G) == G == expectation_F(E)


@given(elements("Z"), elements("Z"), st.integers(-3, 3))
def test_expectations_linear(x, y, c):
    assert expectation_E(x + c * y) == expectation_E(x) + c * expectation_E(y)
    assert expectation_G(x - y) == expectation_G(x) - expectation_G(y)


@given(elements("Z"))
def test_E_positive(x):
    assert trace_tau(expectation_E(x.adjoint() * x)) >= 0


# --- gauge degrees -----------------------------------------------------------------

def test_gauge_degree_example():
    d = gauge_degree(Monomial(2, 12, 10, 3, 1))
    assert d == GaugeDegree(5, ((2, 1), (3, 1), (5, -1)), 1)
    assert gauge_degree(Monomial(4, 6, 6, 1)).alpha_trivial


@given(monomials("Z"), monomials("Z"))
def test_alpha_degree_and_parity_multiplicative(a, b):
    p = a.times(b)
    if p is None:
        return
    da, db, dp = gauge_degree(a), gauge_degree(b), gauge_degree(p)
    total = dict(da.s_multidegree)
    for q, v in db.s_multidegree:
        total[q] = total.get(q, 0) + v
    assert dict(dp.s_multidegree) == {q: v for q, v in total.items() if v}
    assert dp.flip_parity == da.flip_parity ^ db.flip_parity


@given(diagonal_monomials(), diagonal_monomials())
def test_u_degree_additive_on_fixed_part(a, b):
    p = a.times(b)
    if p is not None:
        assert gauge_degree(p).u_degree == gauge_degree(a).u_degree + gauge_degree(b).u_degree


# --- trace ---------------------------------------------------------------------------

def test_trace_examples():
    assert trace_tau(e(7)) == Fraction(1, 7)
    assert trace_tau(ONE) == 1
    assert trace_tau(e_translate(2, 3)) == Fraction(1, 2)
    assert trace_tau(u_pow(1)) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 10, 97, 1000])
def test_trace_of_range_projection(n):
    assert trace_tau(e(n)) == Fraction(1, n)


@given(elements("N"))
def test_trace_matches_window_density(x):
    # tau is the density of the diagonal; the window error is O(1/W) per monomial
    W = 10 ** 5
    assert abs(trace_tau(x) - window_trace(x, W)) <= Fraction(sum(abs(c) for _, c in x.items()) * 3, W)


@given(diagonal_monomials(), diagonal_monomials())
def test_trace_property_on_fixed_part(a, b):
    x, y = NormalFormElement.monomial(a), NormalFormElement.monomial(b)
    assert trace_tau(x * y) == trace_tau(y * x)


@given(elements("Z"))
def test_trace_positive(x):
    assert trace_tau(x.adjoint() * x) >= 0
    assert trace_tau(x.adjoint()) == trace_tau(x)


@given(monomials())
def test_monomial_trace_fast_path(m):
    assert monomial_trace(m) == trace_tau(NormalFormElement.monomial(m))


# --- KMS --------------------------------------------------------------------------

def test_lambda_scaling():
    assert lambda_i(s(2)) == s(2) * Fraction(1, 2)
    assert lambda_i(S(3)) == S(3) * 3
    assert lambda_i(e(4)) == e(4)


def test_kms_examples():
    assert kms_sides(S(2), s(2)) == (Fraction(1, 2), Fraction(1, 2))
    assert kms_check(ONE, ONE)
    assert kms_sides(u_pow(1), e(3)) == (0, 0)


@given(monomials("Z", max_index=20, max_power=20), monomials("Z", max_index=20, max_power=20))
def test_kms_on_monomial_pairs(a, b):
    x, y = NormalFormElement.monomial(a), NormalFormElement.monomial(b)
    assert kms_check(x, y)
    assert monomial_kms(a, b) == kms_check(x, y)


@given(elements("Z"), elements("Z"))
def test_kms_on_elements(x, y):
    assert kms_check(x, y)


def test_trace_fails_without_twist():
    # tau(s_2* s_2) = 1 but tau(s_2 s_2*) = 1/2: the trace property needs lambda
    assert trace_tau(S(2) * s(2)) != trace_tau(s(2) * S(2))
