"""Acceptance criteria, one test each.

Every test prints a single line ``ACCEPTANCE <n> PASS|FAIL ...`` (visible even
under output capture) and then asserts the criterion and its time limit.
"""

import random
import subprocess
import sys
import time

import pytest
import sympy

from kwcheck import _intpoly as ip
from kwcheck.classgroup import class_group
from kwcheck.cyclo import CyclotomicNumber, cyclotomic_polynomial, field_new
from kwcheck.ideal import factor_rational_prime, principal_ideal
from kwcheck.kummer import KummerDatum, abelian_criterion, candidate_generators, reduce_generator, verify_prop_exp
from kwcheck.lattice import cyclic_compositum_check, verify_prop_pex2
from kwcheck.stick import (
    apply_to_ideal,
    gauss_sum,
    gauss_sum_power_descend,
    minus_class_number,
    stickelberger_element,
    verify_annihilation,
    verify_stickelberger_factorization,
)


@pytest.fixture
def report(request, capsys):
    """Call with (number, label, ok, limit_s) after timing the body."""
    start = time.perf_counter()

    def done(n, label, ok, limit):
        elapsed = time.perf_counter() - start
        verdict = "PASS" if ok and elapsed < limit else "FAIL"
        with capsys.disabled():
            print(f"\nACCEPTANCE {n:2d} {verdict} {label} ({elapsed:.1f}s, limit {limit}s)")
        assert ok, f"criterion {n} failed"
        assert elapsed < limit, f"criterion {n} took {elapsed:.1f}s > {limit}s"

    return done


def test_01_cyclotomic_kernel(report):
    ok = True
    for m in range(1, 101):
        prod = [1]
        for d in sympy.divisors(m):
            prod = ip.mul(prod, list(cyclotomic_polynomial(d)))
        ok &= prod == [-1] + [0] * (m - 1) + [1]
    for p in (3, 5, 7, 11, 13):
        z = field_new(p).zeta()
        ok &= (1 - z).norm() == p and z.trace() == -1
    report(1, "cyclotomic kernel", ok, 5)


def test_02_splitting_law(report):
    ok = True
    for p in (3, 5, 7, 11, 13):
        F = field_new(p)
        for q in sympy.primerange(2, 100):
            if q != p:
                ok &= len(factor_rational_prime(q, F)) * sympy.n_order(q, p) == p - 1
        z = F.zeta()
        ok &= principal_ideal(1 - z) ** (p - 1) == principal_ideal(F(p))
    report(2, "splitting law", ok, 10)


def test_03_class_groups(report):
    ok = True
    for p in (3, 5, 7, 11, 13, 17, 19):
        ok &= class_group(field_new(p)).order == 1 == minus_class_number(p)
    cg = class_group(field_new(23))
    ok &= cg.invariants == [3] and cg.order == minus_class_number(23) == 3
    report(3, "class numbers agree with the Bernoulli product", ok, 600)


def test_04_stickelberger_annihilation(report):
    cg = class_group(field_new(23))
    cert = verify_annihilation(23, cg)
    ok = cert["status"] == "pass" and cg.order == 3
    theta = stickelberger_element(23)
    for entry, Q in zip(cert["entries"], cg.generator_primes):
        w = CyclotomicNumber.from_json(entry["witness"])
        # independent re-verification of the exhibited generator
        ok &= principal_ideal(w) == apply_to_ideal(theta, Q.ideal)
        ok &= cg.class_of(Q.ideal) != (0,)
    report(4, "theta annihilates Cl(Q(zeta_23))", ok, 600)


def test_05_gauss_sum_factorization(report):
    ok = True
    for p, q in ((3, 7), (3, 13), (5, 11), (7, 29)):
        d = gauss_sum(p, q)
        ok &= d.value * d.value.conj() == q
        ok &= gauss_sum_power_descend(d).field.conductor == p
        cert = verify_stickelberger_factorization(p, q)
        ok &= cert["status"] == "pass"
        ok &= sorted(cert["exponent_pattern"].values()) == list(range(1, p))
    report(5, "Gauss sum factorization", ok, 300)


def test_06_exponent_p_sweep(report):
    ok = True
    for p, count in ((3, 9), (5, 125)):
        cert = verify_prop_exp(p)
        zeta_powers = [[k] + [0] * (len(cert["generators"]) - 1) for k in range(p)]
        ok &= cert["status"] == "pass" and cert["class_count"] == count
        ok &= cert["survivors"] == zeta_powers and cert["extension"] == f"Q(zeta_{p * p})"
    report(6, "exponent-p sweep survivors are <zeta>", ok, 120)


def test_07_quadratic_fields_unramified_outside_2(report):
    cert = verify_prop_pex2(10 ** 4)
    ok = cert["status"] == "pass" and cert["route_a"] == cert["route_b"] == [-2, -1, 2] and cert["real"] == [2]
    report(7, "quadratic fields unramified outside 2", ok, 10)


def test_08_cyclic_compositum_lemma(report):
    ok = all(cyclic_compositum_check(p, 3, 3)["counterexamples"] == [] for p in (2, 3))
    report(8, "cyclic subdirect subgroups", ok, 30)


def test_09_abelian_criterion(report):
    ok = True
    for p in (3, 5, 7):
        rep = abelian_criterion(KummerDatum.of(p, field_new(p).zeta()))
        ok &= rep.passed and all(w == 1 for w in rep.witnesses.values())
    rep = abelian_criterion(KummerDatum.of(3, 2))
    ok &= not rep.passed and rep.first_failure == 2
    rng = random.Random(9)
    for i in range(100):
        p = (3, 5)[i % 2]
        F = field_new(p)
        mu = (F.zeta(), F(2), 1 - F.zeta())[i % 3]
        nu = F.element([rng.randint(-2, 2) for _ in range(p - 1)])
        if nu.is_zero():
            nu = F.one()
        a = abelian_criterion(KummerDatum(p, mu))
        b = abelian_criterion(KummerDatum(p, mu * nu ** p))
        ok &= (a.passed, a.first_failure) == (b.passed, b.first_failure)
    report(9, "abelian criterion instances and Kummer-class invariance", ok, 30)


def test_10_reduction_chain(report):
    rng = random.Random(10)
    ok = True
    for i in range(50):
        p = (3, 5, 7)[i % 3]
        F = field_new(p)
        z = F.zeta()
        t = rng.randrange(p)
        unit = F.one()
        for _, g in candidate_generators(p)[2:]:
            unit = unit * g ** rng.randint(-2, 2)
        while True:
            alpha = F.element([rng.randint(-1, 1) for _ in range(p - 1)])
            if not alpha.is_zero():
                break
        mu = z ** t * (alpha * unit) ** p
        red = reduce_generator(KummerDatum(p, mu))
        ok &= red.t == t and red.verify() and mu == z ** red.t * (red.alpha * red.rho) ** p
    report(10, "generator reduction recovers t", ok, 120)


@pytest.mark.slow
def test_11_full_suite_determinism(report):
    cmd = [sys.executable, "-m", "kwcheck.cli", "suite", "--profile", "full"]
    runs = [subprocess.run(cmd, capture_output=True, timeout=900) for _ in range(2)]
    ok = all(r.returncode == 0 for r in runs) and runs[0].stdout == runs[1].stdout and runs[0].stdout
    report(11, "full suite is byte-identical across runs", bool(ok), 1800)
