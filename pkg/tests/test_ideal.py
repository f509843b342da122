import random

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from kwcheck.cyclo import field_new
from kwcheck.ideal import (
    PrimeIdealAboveQ,
    factor_ideal,
    factor_rational_prime,
    ideal_from_factorization,
    ideal_from_generators,
    ideal_inverse_times_norm,
    minkowski_bound,
    prime_image,
    primes_above,
    principal_ideal,
    pth_power_shape,
    unit_ideal,
    valuation,
)

PRIMES = [3, 5, 7, 11, 13]


def nonzero(p, lo=-3, hi=3):
    return (
        st.lists(st.integers(lo, hi), min_size=p - 1, max_size=p - 1)
        .map(lambda c: field_new(p).element(c))
        .filter(lambda x: not x.is_zero())
    )


@pytest.mark.parametrize("p", PRIMES)
def test_splitting_law(p):
    F = field_new(p)
    for q in sympy.primerange(2, 100):
        if q == p:
            continue
        fac = factor_rational_prime(q, F)
        f = sympy.n_order(q, p)
        assert len(fac) * f == p - 1
        assert all(P.f == f and e == 1 for P, e in fac)
        prod = unit_ideal(F)
        for P, e in fac:
            prod = prod * P.ideal ** e
        assert prod == principal_ideal(F(q))


@pytest.mark.parametrize("p", PRIMES)
def test_totally_ramified_prime(p):
    F = field_new(p)
    (P, e), = factor_rational_prime(p, F)
    assert e == p - 1 and P.f == 1
    assert principal_ideal(1 - F.zeta()) ** (p - 1) == principal_ideal(F(p))
    assert P.ideal == principal_ideal(1 - F.zeta())
    assert valuation(F(p), P) == p - 1


def test_examples_at_five():
    F = field_new(5)
    assert [(P.f, e) for P, e in factor_rational_prime(11, F)] == [(1, 1)] * 4
    assert [(P.f, e) for P, e in factor_rational_prime(7, F)] == [(4, 1)]
    z = F.zeta()
    fac = factor_ideal(principal_ideal(1 + 2 * z))
    assert [(P.q, e) for P, e in fac] == [(11, 1)]


@pytest.mark.parametrize("p", [5, 7])
def test_norm_multiplicativity_and_principal_products(p):
    @given(nonzero(p), nonzero(p))
    def check(a, b):
        A, B = principal_ideal(a), principal_ideal(b)
        assert (A * B).norm == A.norm * B.norm
        assert A * B == principal_ideal(a * b)
        assert A.norm == abs(a.norm())

    check()


@pytest.mark.parametrize("p", [5, 7])
def test_factorization_roundtrip(p):
    @given(nonzero(p), nonzero(p))
    def check(a, b):
        I = principal_ideal(a / b)
        fac = factor_ideal(I)
        assert ideal_from_factorization(I.field, fac) == I
        for P, e in fac:
            assert valuation(a / b, P) == e

    check()


@given(nonzero(7), st.sampled_from([2, 3, 4, 5, 6]))
def test_galois_compatibility(x, a):
    I = principal_ideal(x)
    assert I.galois(a) == principal_ideal(x.galois(a))
    fac = {P: e for P, e in factor_ideal(I)}
    fac_a = {P: e for P, e in factor_ideal(I.galois(a))}
    assert {prime_image(P, a): e for P, e in fac.items()} == fac_a


@given(nonzero(5))
def test_inverse_and_division(x):
    I = principal_ideal(x)
    assert I * I.inverse() == unit_ideal(I.field)
    assert I / I == unit_ideal(I.field)
    assert ideal_inverse_times_norm(I) * I == principal_ideal(I.field(int(I.norm)))


def test_containment_and_generators():
    F = field_new(7)
    z = F.zeta()
    # 13 is inert in Q(zeta_7), so (13, zeta - 2) is the whole ring
    assert ideal_from_generators(F, [F(13), z - 2]) == unit_ideal(F)
    r = pow(2, 4, 29)  # an element of order 7 mod 29
    assert ideal_from_generators(F, [F(29), z - r]).norm == 29
    for P in primes_above(29, F):
        J = P.ideal
        assert J.contains(F(29)) and not J.contains(F(1))
        assert J.issubset(unit_ideal(F))
        assert ideal_from_generators(F, list(J.generators())) == J


def test_pth_power_shape_examples():
    F = field_new(5)
    z = F.zeta()
    a = pth_power_shape((1 - z) ** 5, 5)
    assert a == principal_ideal(1 - z)
    assert pth_power_shape(F(11), 5) is None
    P = primes_above(11, F)[0]
    assert pth_power_shape(F(11) ** 5 * z, 5) == principal_ideal(F(11))
    assert P.ideal ** 5 != principal_ideal(F(11))


def test_random_pth_powers_have_shapes():
    rng = random.Random(7)
    F = field_new(7)
    for _ in range(5):
        g = F.element([rng.randint(-2, 2) for _ in range(6)])
        if g.is_zero():
            continue
        assert pth_power_shape(g ** 7, 7) == principal_ideal(g)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 23])
def test_minkowski_bound_independent_formula(p):
    mpmath.mp.dps = 40
    n = p - 1
    disc = mpmath.mpf(p) ** (p - 2)
    ref = (4 / mpmath.pi) ** (n // 2) * mpmath.factorial(n) / mpmath.mpf(n) ** n * mpmath.sqrt(disc)
    b = minkowski_bound(field_new(p))
    assert b >= float(ref) and b - float(ref) < 2e-6 * max(1, float(ref) / 1e6)


def test_minkowski_values():
    assert minkowski_bound(field_new(3)) == pytest.approx(1.102658, abs=1e-6)
    assert minkowski_bound(field_new(5)) == pytest.approx(1.699208, abs=1e-6)
    assert minkowski_bound(field_new(7)) == pytest.approx(4.129529, abs=1e-6)


def test_prime_data_and_errors():
    F = field_new(13)
    P = primes_above(53, F)[0]
    assert isinstance(P, PrimeIdealAboveQ) and P.f == 1 and P.norm == 53
    r = P.root()
    assert pow(r, 13, 53) == 1 and r != 1
    assert P.ideal.contains(F.zeta() - r)
    with pytest.raises(ValueError):
        principal_ideal(F(0))
    with pytest.raises(ValueError):
        unit_ideal(field_new(9))
