"""Abelian fields inside cyclotomic fields, via subgroups of (Z/n)^x.

The subfield of Q(zeta_n) fixed by H is named by the pair (n, H). Subgroups
are enumerated as sublattices: (Z/n)^x is split into cyclic factors
Z/c_1 + ... + Z/c_r and subgroups correspond to lattices between
diag(c) Z^r and Z^r, listed once each through their Hermite normal form.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from math import gcd, prod

import mpmath
from sympy import divisors, factorint, primitive_root, totient

from .cyclo import CyclotomicNumber, field_new, unit_residues
from .intmat import smith_normal_form


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariants: tuple[int, ...]

    def __post_init__(self):
        for i, d in enumerate(self.invariants):
            if d <= 1:
                raise ValueError("invariant factors must exceed 1")
            if i and d % self.invariants[i - 1]:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def order(self) -> int:
        return prod(self.invariants)

    def is_cyclic(self) -> bool:
        return len(self.invariants) <= 1

    @classmethod
    def from_relations(cls, rows: list[list[int]]) -> "FiniteAbelianGroup":
        """Z^r modulo the row lattice (assumed full rank)."""
        _, S, _ = smith_normal_form(rows)
        return cls(tuple(S[i][i] for i in range(min(len(S), len(S[0]))) if S[i][i] != 1))


def _normalize_modulus(n: int) -> None:
    if n < 1:
        raise ValueError("modulus must be positive")
    if n % 4 == 2:
        raise ValueError(f"modulus {n} = 2 mod 4 names the same field as {n // 2}")


@functools.lru_cache(maxsize=None)
def _unit_group(n: int):
    """Cyclic decomposition of (Z/n)^x: (generators, orders, element->exponent table)."""
    gens, orders = [], []
    for q, k in sorted((int(q), k) for q, k in factorint(n).items()):
        qk = q ** k
        rest = n // qk

        def lift(x):
            # element = x mod q^k, 1 mod rest
            if rest == 1:
                return x % n
            return (x * rest * pow(rest, -1, qk) + qk * pow(qk, -1, rest)) % n

        if q == 2:
            if k >= 2:
                gens.append(lift(qk - 1))
                orders.append(2)
            if k >= 3:
                gens.append(lift(5))
                orders.append(qk // 4)
        else:
            gens.append(lift(int(primitive_root(qk))))
            orders.append(qk - qk // q)
    table = {}
    for exps in itertools.product(*(range(c) for c in orders)):
        x = 1
        for g, e in zip(gens, exps):
            x = x * pow(g, e, n) % n
        table[x] = exps
    if len(table) != int(totient(n)):
        raise AssertionError("unit group decomposition is wrong")
    return tuple(gens), tuple(orders), table


def _sublattices(orders: tuple[int, ...]):
    """Row HNFs of all lattices L with diag(orders) Z^r <= L <= Z^r."""
    r = len(orders)
    if r == 0:
        yield []
        return

    def contains(rows, v):
        v = list(v)
        for i in range(r):
            if v[i] % rows[i][i]:
                return False
            q = v[i] // rows[i][i]
            if q:
                v = [a - q * b for a, b in zip(v, rows[i])]
        return True

    def build(i, rows):
        if i < 0:
            full = rows
            if all(contains(full, [orders[j] if t == j else 0 for t in range(r)]) for j in range(r)):
                yield [list(x) for x in full]
            return
        for h in divisors(orders[i]):
            # entries right of the pivot are reduced modulo the lower pivots
            tails = itertools.product(*(range(rows[j - i - 1][j]) for j in range(i + 1, r)))
            for tail in tails:
                row = [0] * i + [h] + list(tail)
                yield from build(i - 1, [row] + rows)

    yield from build(r - 1, [])


def _subgroup_elements(n: int, rows: list[list[int]]) -> tuple[int, ...]:
    gens, orders, _ = _unit_group(n)
    images = []
    for row in rows:
        x = 1
        for g, e in zip(gens, row):
            x = x * pow(g, e, n) % n
        images.append(x)
    H = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for x in frontier:
            for g in images:
                y = x * g % n
                if y not in H:
                    H.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(H))


def subgroups(n: int, order: int | None = None) -> list[tuple[tuple[int, ...], list[list[int]]]]:
    """All subgroups of (Z/n)^x as (sorted elements, lattice HNF), optionally of one order."""
    gens, orders, _ = _unit_group(n)
    total = prod(orders)
    out = []
    for rows in _sublattices(orders):
        index = prod(rows[i][i] for i in range(len(rows)))
        if order is not None and total // index != order:
            continue
        out.append((_subgroup_elements(n, rows), rows))
    out.sort(key=lambda t: t[0])
    return out


# ---------------------------------------------------------------------------
# abelian fields


@dataclass(frozen=True)
class AbelianField:
    n: int
    subgroup: tuple[int, ...]

    def __post_init__(self):
        _normalize_modulus(self.n)
        units = set(unit_residues(self.n))
        H = set(self.subgroup)
        if 1 % self.n not in H and not (self.n == 1 and H == {1}):
            raise ValueError("subgroup must contain 1")
        if not H <= units:
            raise ValueError("subgroup elements must be units mod n")
        if any((a * b) % self.n not in H for a in H for b in H) and self.n > 1:
            raise ValueError("subgroup is not closed under multiplication")

    @classmethod
    def from_subgroup(cls, n: int, elements) -> "AbelianField":
        return cls(n, tuple(sorted({x % n for x in elements} if n > 1 else {1})))

    @property
    def degree(self) -> int:
        return int(totient(self.n)) // len(self.subgroup)

    def is_real(self) -> bool:
        return self.n <= 2 or (self.n - 1) in self.subgroup

    def to_json(self) -> dict:
        return {"n": self.n, "subgroup": list(self.subgroup), "degree": self.degree}


def inertia_subgroup(n: int, q: int) -> tuple[int, ...]:
    """{x in (Z/n)^x : x = 1 mod m'} where n = q^k m' with q not dividing m'."""
    if n % q:
        raise ValueError(f"{q} does not divide {n}")
    mp = n
    while mp % q == 0:
        mp //= q
    return tuple(x for x in unit_residues(n) if x % mp == 1 % mp)


def ramification_profile(K: AbelianField) -> set[int]:
    H = set(K.subgroup)
    return {int(q) for q in factorint(K.n) if not set(inertia_subgroup(K.n, q)) <= H}


def galois_quotient(K: AbelianField) -> FiniteAbelianGroup:
    """Structure of Gal(K/Q) = (Z/n)^x / H."""
    gens, orders, table = _unit_group(K.n)
    r = len(orders)
    if r == 0:
        return FiniteAbelianGroup(())
    rows = [[orders[i] if j == i else 0 for j in range(r)] for i in range(r)]
    rows += [list(table[h]) for h in K.subgroup]
    return FiniteAbelianGroup.from_relations(rows)


def enumerate_abelian_fields(n: int, d: int, allowed_ramified) -> list[AbelianField]:
    """Subfields of Q(zeta_n) of degree d ramified only at primes in the allowed set."""
    _normalize_modulus(n)
    phi = int(totient(n))
    if phi % d:
        raise ValueError(f"{d} does not divide phi({n}) = {phi}")
    allowed = set(allowed_ramified)
    out = []
    for H, _ in subgroups(n, phi // d):
        K = AbelianField(n, H)
        if ramification_profile(K) <= allowed:
            out.append(K)
    return out


# ---------------------------------------------------------------------------
# Gaussian periods


def _period(n: int, H, j: int) -> CyclotomicNumber:
    F = field_new(n)
    coeffs = [0] * n
    for h in H:
        coeffs[(h * j) % n] += 1
    return F.element(coeffs)


def _coset_reps(n: int, H) -> list[int]:
    Hs = set(H)
    seen = set()
    reps = []
    for a in unit_residues(n):
        if a in seen:
            continue
        reps.append(a)
        seen |= {a * h % n for h in Hs}
    return reps


def _generator_candidates(n: int, H):
    """Deterministic sequence of elements of the fixed field: periods, then sums."""
    for j in range(1, max(n, 2)):
        yield f"Tr_H(zeta^{j})", (j,), None
    for j in range(2, n):
        for c in range(1, 4):
            yield f"Tr_H(zeta) + {c} Tr_H(zeta^{j})", (1, j), c


def _numeric_poly(n: int, H, weights, reps, bits: int) -> list[int]:
    with mpmath.workprec(bits):
        roots = []
        for a in reps:
            v = mpmath.mpc(0)
            for (j, w) in weights:
                for h in H:
                    v += w * mpmath.expjpi(mpmath.mpf(2 * a * h * j % (2 * n)) / n)
            roots.append(v)
        poly = [mpmath.mpc(1)]
        for r in roots:
            nxt = [mpmath.mpc(0)] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i + 1] += c
                nxt[i] -= c * r
            poly = nxt
        return [int(mpmath.nint(c.real)) for c in poly]


def _horner_is_root(poly: list[int], x: CyclotomicNumber) -> bool:
    acc = x.field.zero()
    for c in reversed(poly):
        acc = acc * x + c
    return acc.is_zero()


def period_generator(K: AbelianField):
    """(element, label, minimal polynomial) for the first candidate with full degree."""
    n, H = K.n, K.subgroup
    if n == 1:
        return field_new(1).one(), "1", [0, 1]
    reps = _coset_reps(n, H)
    d = len(reps)
    for label, js, c in _generator_candidates(n, H):
        weights = [(js[0], 1)] if c is None else [(js[0], 1), (js[1], c)]
        x = _period(n, H, js[0])
        if c is not None:
            x = x + _period(n, H, js[1]) * c
        conj = {x.galois(a) for a in reps}
        if len(conj) != d:
            continue
        bound_bits = d * (max(1, len(H) * sum(abs(w) for _, w in weights)) * 2).bit_length() + 64
        for bits in (bound_bits, 2 * bound_bits):
            poly = _numeric_poly(n, H, weights, reps, bits)
            if _horner_is_root(poly, x):
                return x, label, poly
        raise AssertionError("period polynomial failed exact verification")
    raise AssertionError("no generator found for the fixed field")


def subfield_by_periods(K: AbelianField) -> list[int]:
    """Monic integer minimal polynomial (ascending coefficients) of a generator of K.

    The Gaussian period is used when it has full degree; otherwise the first
    candidate of a fixed deterministic sequence that does.
    """
    return period_generator(K)[2]


# ---------------------------------------------------------------------------
# the reduction propositions


def cyclic_compositum_check(p: int, a_max: int, b_max: int) -> dict:
    """Subdirect subgroups of Z/p^a x Z/p^b: cyclic ones project injectively on a factor."""
    if a_max > 4 or b_max > 4:
        raise ValueError("exponents are capped at 4")
    cases = []
    counterexamples = []
    for a in range(1, a_max + 1):
        for b in range(1, b_max + 1):
            A, B = p ** a, p ** b
            subdirect = cyclic = 0
            for rows in _sublattices((A, B)):
                gens = [(r[0] % A, r[1] % B) for r in rows]
                elems = {(0, 0)}
                frontier = [(0, 0)]
                while frontier:
                    nxt = []
                    for x in frontier:
                        for g in gens:
                            y = ((x[0] + g[0]) % A, (x[1] + g[1]) % B)
                            if y not in elems:
                                elems.add(y)
                                nxt.append(y)
                    frontier = nxt
                pi1 = {x for x, _ in elems}
                pi2 = {y for _, y in elems}
                if len(pi1) != A or len(pi2) != B:
                    continue
                subdirect += 1
                size = len(elems)
                is_cyclic = any(
                    (A // gcd(A, x)) * (B // gcd(B, y)) // gcd(A // gcd(A, x), B // gcd(B, y)) == size
                    for x, y in elems
                )
                if not is_cyclic:
                    continue
                cyclic += 1
                if not (len(pi1) == size or len(pi2) == size):
                    counterexamples.append({"a": a, "b": b, "generators": [list(g) for g in gens]})
            cases.append({"a": a, "b": b, "subdirect": subdirect, "cyclic": cyclic})
    return {
        "check": "lemma-lc",
        "p": p,
        "a_max": a_max,
        "b_max": b_max,
        "cases": cases,
        "counterexamples": counterexamples,
        "status": "pass" if not counterexamples else "fail",
    }


def _squarefree_part(v: int) -> int:
    sign = -1 if v < 0 else 1
    out = 1
    for q, e in factorint(abs(v)).items():
        q = int(q)
        if e % 2:
            out *= q
    return sign * out


def _spf_sieve(limit: int) -> list[int]:
    spf = list(range(limit + 1))
    for i in range(2, int(limit ** 0.5) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def verify_prop_pex2(bound: int) -> dict:
    """Quadratic fields unramified outside 2, by a discriminant scan and inside Q(zeta_8)."""
    if bound < 10:
        raise ValueError("bound must be at least 10")
    spf = _spf_sieve(bound)
    found_a = []
    for d in range(-bound, bound + 1):
        if d in (0, 1):
            continue
        m, odd_primes, squarefree = abs(d), set(), True
        while m > 1:
            q = spf[m]
            m //= q
            if m % q == 0:
                squarefree = False
                break
            if q != 2:
                odd_primes.add(q)
        if not squarefree:
            continue
        # the discriminant d or 4d has the same odd prime divisors as d
        if not odd_primes:
            found_a.append(d)
    fields_b = enumerate_abelian_fields(8, 2, {2})
    found_b = []
    real = []
    polys = {}
    for K in fields_b:
        _, _, poly = period_generator(K)
        c0, c1, _ = poly
        d = _squarefree_part(c1 * c1 - 4 * c0)
        found_b.append(d)
        polys[str(d)] = poly
        if K.is_real():
            real.append(d)
    agree = sorted(found_a) == sorted(found_b) == [-2, -1, 2]
    return {
        "check": "prop-pex2",
        "bound": bound,
        "route_a": sorted(found_a),
        "route_b": sorted(found_b),
        "route_b_subgroups": [list(K.subgroup) for K in fields_b],
        "period_polynomials": polys,
        "real": sorted(real),
        "status": "pass" if agree and real == [2] and [d for d in found_a if d > 0] == [2] else "fail",
    }


def verify_prop_cp_c2(p: int, m: int) -> dict:
    """Uniqueness of the cyclic degree-p^m candidate inside Q(zeta_{p^(m+1)}) (p odd)
    or of the real cyclic degree-2^m field inside Q(zeta_{2^(m+2)})."""
    if m < 1 or p ** m > 128:
        raise ValueError("need m >= 1 and p^m <= 128")
    deg = p ** m
    cert = {"check": "prop-cp", "p": p, "m": m,
            "scope": "subfields of cyclotomic fields only; arbitrary cyclic K is not modelled"}
    if p != 2:
        n = p ** (m + 1)
        fields = enumerate_abelian_fields(n, deg, {p})
        cyc = [K for K in fields if galois_quotient(K).is_cyclic()]
        polys = [subfield_by_periods(K) for K in cyc]
        ok = len(fields) == 1 and len(cyc) == 1 and len(polys[0]) - 1 == deg
        cert.update(n=n, candidates=[K.to_json() for K in cyc], period_polynomials=polys,
                    status="pass" if ok else "fail")
        return cert
    n = 2 ** (m + 2)
    fields = enumerate_abelian_fields(n, deg, {2})
    cyc = [K for K in fields if galois_quotient(K).is_cyclic()]
    real = [K for K in cyc if K.is_real()]
    quad = enumerate_abelian_fields(n, 2, {2})
    quad_real = [K for K in quad if K.is_real()]
    max_real = AbelianField.from_subgroup(n, [1, n - 1])
    polys = [subfield_by_periods(K) for K in real]
    ok = (
        len(real) == 1
        and real[0] == max_real
        and len(quad) == 3
        and len(quad_real) == 1
        and len(polys[0]) - 1 == deg
    )
    cert.update(
        n=n,
        cyclic_candidates=[K.to_json() for K in cyc],
        real_candidate=real[0].to_json() if real else None,
        is_maximal_real_subfield=bool(real) and real[0] == max_real,
        quadratic_subfields=[K.to_json() for K in quad],
        real_quadratic=[K.to_json() for K in quad_real],
        period_polynomials=polys,
        status="pass" if ok else "fail",
    )
    return cert
