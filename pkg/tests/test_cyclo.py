from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from kwcheck import _intpoly as ip
from kwcheck.cyclo import (
    cyclotomic_polynomial,
    descend,
    embed_complex,
    field_new,
    minimal_polynomial,
    norm_trace,
    pth_power_root,
    ramanujan_sum,
)

X = sympy.Symbol("x")
PRIMES = [3, 5, 7, 11, 13]


def elements(p, lo=-4, hi=4):
    return st.lists(st.integers(lo, hi), min_size=p - 1, max_size=p - 1).map(lambda c: field_new(p).element(c))


def nonzero(p, lo=-4, hi=4):
    return elements(p, lo, hi).filter(lambda x: not x.is_zero())


@pytest.mark.parametrize("m", [1, 2, 6, 12, 15, 30, 60, 64, 81, 97, 100])
def test_cyclotomic_polynomial_matches_sympy(m):
    expected = sympy.Poly(sympy.cyclotomic_poly(m, X), X).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(m)) == [int(c) for c in expected]


def test_divisor_product_is_x_m_minus_1():
    for m in range(1, 101):
        prod = [1]
        for d in sympy.divisors(m):
            prod = ip.mul(prod, list(cyclotomic_polynomial(d)))
        assert prod == [-1] + [0] * (m - 1) + [1]


def test_ramanujan_sum_is_trace_of_zeta_power():
    for m in (7, 12, 15):
        F = field_new(m)
        for k in range(m):
            assert F.zeta(k).trace() == ramanujan_sum(m, k)


@pytest.mark.parametrize("p", PRIMES)
def test_norm_and_trace_of_basic_elements(p):
    z = field_new(p).zeta()
    assert (1 - z).norm() == p
    assert z.trace() == -1
    assert norm_trace(z) == (1, -1)


def test_zeta_order():
    for m in (5, 9, 12):
        z = field_new(m).zeta()
        assert z ** m == 1
        assert all(z ** k != 1 for k in range(1, m))


@pytest.mark.parametrize("p", [5, 7])
def test_field_axioms(p):
    @given(elements(p), elements(p), nonzero(p))
    def check(a, b, c):
        assert a * (b + c) == a * b + a * c
        assert (a * c) / c == a
        assert c * c.inverse() == 1
        assert (a * b).norm() == a.norm() * b.norm()
        assert (a + b).trace() == a.trace() + b.trace()

    check()


@given(elements(7), st.sampled_from([2, 3, 4, 5, 6]), st.sampled_from([2, 3, 4, 5, 6]))
def test_galois_action_is_a_homomorphism(x, a, b):
    y = x * x + 1
    assert (x * y).galois(a) == x.galois(a) * y.galois(a)
    assert x.galois(a).galois(b) == x.galois(a * b % 7)


@given(elements(5))
def test_norm_is_product_of_conjugates(x):
    prod = x.field.one()
    for c in x.conjugates():
        prod = prod * c
    assert prod.is_rational() and prod.rational() == x.norm()


@given(nonzero(7, -2, 2))
def test_minimal_polynomial_against_sympy(x):
    mp = minimal_polynomial(x)
    z = sympy.exp(2 * sympy.pi * sympy.I / 7)
    expr = sum(int(c) * z ** i for i, c in enumerate(x.field.element([int(v) for v in x.coefficients]).coefficients))
    expected = sympy.Poly(sympy.minimal_polynomial(expr, X), X)
    lead = expected.LC()
    assert [Fraction(int(c.p), int(c.q)) for c in (expected.all_coeffs()[::-1])] == [Fraction(c) * lead for c in mp]


def test_embeddings_are_roots_of_unity():
    z = field_new(11).zeta()
    for w in embed_complex(z):
        assert abs(w ** 11 - 1) < 1e-30


def test_descend_to_subfield():
    F9 = field_new(21)
    x = F9.zeta(7) + 2  # lies in Q(zeta_3)
    d = descend(x, 3)
    assert d is not None and d.field.conductor == 3
    assert descend(F9.zeta(), 3) is None


@pytest.mark.parametrize("p", [3, 5, 7])
def test_pth_power_root_roundtrip(p):
    @given(nonzero(p, -3, 3))
    def check(x):
        r = pth_power_root(x ** p, p)
        assert r is not None and r ** p == x ** p

    check()


def test_pth_power_root_rejects_non_powers():
    F = field_new(5)
    assert pth_power_root(F(2), 5) is None
    assert pth_power_root(F.zeta(), 5) is None
    assert pth_power_root(1 - F.zeta(), 5) is None


def test_rejects_bad_conductor():
    with pytest.raises(ValueError):
        field_new(0)
