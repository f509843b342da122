from itertools import combinations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from kwcheck.cyclo import unit_residues
from kwcheck.lattice import (
    AbelianField,
    FiniteAbelianGroup,
    cyclic_compositum_check,
    enumerate_abelian_fields,
    galois_quotient,
    inertia_subgroup,
    period_generator,
    ramification_profile,
    subfield_by_periods,
    subgroups,
    verify_prop_cp_c2,
    verify_prop_pex2,
)

X = sympy.Symbol("x")
SMALL_MODULI = [3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 21, 24]


def brute_force_subgroups(n):
    units = unit_residues(n)
    found = set()
    for r in range(0, 4):
        for gens in combinations(units, r):
            H = {1 % n}
            frontier = [1 % n]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        y = x * g % n
                        if y not in H:
                            H.add(y)
                            nxt.append(y)
                frontier = nxt
            found.add(tuple(sorted(H)))
    return found


@pytest.mark.parametrize("n", SMALL_MODULI)
def test_subgroups_against_brute_force(n):
    # (Z/n)^x has rank <= 3 for these n, so three generators reach every subgroup
    listed = [H for H, _ in subgroups(n)]
    assert len(listed) == len(set(listed))
    assert set(listed) == brute_force_subgroups(n)


@pytest.mark.parametrize("n", [5, 7, 9, 12, 15, 16])
def test_degree_times_order(n):
    phi = int(sympy.totient(n))
    for H, _ in subgroups(n):
        K = AbelianField(n, H)
        assert K.degree * len(H) == phi
        assert galois_quotient(K).order == K.degree


@pytest.mark.parametrize("n", [7, 9, 12, 15])
def test_galois_correspondence(n):
    subs = [H for H, _ in subgroups(n)]
    gens = {H: period_generator(AbelianField(n, H))[0] for H in subs}
    for H1 in subs:
        for H2 in subs:
            x2 = gens[H2]
            fixed = all(x2.galois(h) == x2 for h in H1)
            assert fixed == set(H1).issubset(H2)


@pytest.mark.parametrize("n", [5, 8, 9, 12, 13, 16, 20])
def test_periods_irreducible_and_fixed_by_exactly_h(n):
    for H, _ in subgroups(n):
        K = AbelianField(n, H)
        x, _, poly = period_generator(K)
        P = sympy.Poly(list(reversed(poly)), X)
        assert P.degree() == K.degree and P.is_irreducible and P.LC() == 1
        stab = {a for a in unit_residues(n) if x.galois(a) == x}
        assert stab == set(H)


@pytest.mark.parametrize("n", [3, 4, 5, 8, 12, 15, 20, 21, 35])
def test_ramification_of_full_cyclotomic_field(n):
    K = AbelianField.from_subgroup(n, [1])
    assert ramification_profile(K) == {int(q) for q in sympy.primefactors(n)}
    for q in sympy.primefactors(n):
        I = inertia_subgroup(n, q)
        qk = q ** sympy.multiplicity(q, n)
        assert len(I) == sympy.totient(qk)


def test_field_examples():
    assert subfield_by_periods(AbelianField.from_subgroup(9, [1, 8])) == [1, -3, 0, 1]
    assert subfield_by_periods(AbelianField.from_subgroup(5, [1, 4])) == [-1, 1, 1]
    # Tr_H(zeta) = 0 for H = {1, 5} mod 8; the fallback gives x^2 + 4
    _, label, poly = period_generator(AbelianField.from_subgroup(8, [1, 5]))
    assert poly == [4, 0, 1] and label != "Tr_H(zeta^1)"
    assert AbelianField.from_subgroup(8, [1, 7]).is_real()
    assert not AbelianField.from_subgroup(8, [1, 3]).is_real()


def test_field_validation():
    with pytest.raises(ValueError):
        AbelianField.from_subgroup(10, [1])
    with pytest.raises(ValueError):
        AbelianField.from_subgroup(7, [1, 2])
    with pytest.raises(ValueError):
        AbelianField.from_subgroup(8, [1, 2])
    with pytest.raises(ValueError):
        FiniteAbelianGroup((2, 3))


def test_enumerate_abelian_fields():
    quads = enumerate_abelian_fields(8, 2, {2})
    assert sorted(K.subgroup for K in quads) == [(1, 3), (1, 5), (1, 7)]
    # only the quadratic subfield of Q(zeta_15) unramified at 3 is Q(sqrt 5)
    assert len(enumerate_abelian_fields(15, 2, {5})) == 1


@pytest.mark.parametrize("p", [2, 3])
def test_cyclic_compositum_exhaustive(p):
    cert = cyclic_compositum_check(p, 3, 3)
    assert cert["status"] == "pass" and cert["counterexamples"] == []
    assert all(c["subdirect"] >= c["cyclic"] >= 1 for c in cert["cases"])


def test_prop_pex2():
    cert = verify_prop_pex2(10000)
    assert cert["status"] == "pass"
    assert cert["route_a"] == cert["route_b"] == [-2, -1, 2]
    assert cert["real"] == [2]


@pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)])
def test_prop_cp(p, m):
    cert = verify_prop_cp_c2(p, m)
    assert cert["status"] == "pass"


def test_prop_cp_examples():
    assert verify_prop_cp_c2(3, 1)["period_polynomials"] == [[1, -3, 0, 1]]
    two = verify_prop_cp_c2(2, 1)
    assert two["n"] == 8 and two["real_candidate"]["subgroup"] == [1, 7]
    assert len(verify_prop_cp_c2(5, 1)["period_polynomials"][0]) - 1 == 5


@given(st.sampled_from([7, 9, 13, 16, 21]), st.data())
def test_subgroup_closure(n, data):
    H, _ = data.draw(st.sampled_from(subgroups(n)))
    assert all(a * b % n in H for a in H for b in H)
