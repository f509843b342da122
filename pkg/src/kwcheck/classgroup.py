"""Principality testing and class groups of Q(zeta_p).

Elements of small norm are found by LLL-reducing an ideal lattice under the
trace form T2(x) = sum |sigma(x)|^2 and enumerating short vectors. Every
candidate is screened in floating point and then verified exactly.

The class group comes from relations among a factor base of prime ideals.
The order of the relation lattice is an upper bound for the order of the
subgroup generated by the factor base; the search stops once it matches an
expected order supplied by the analytic class number formula.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import ceil, exp, gcd, isqrt, log

import numpy as np
from sympy import primerange

from .cyclo import CyclotomicField, CyclotomicNumber, embeddings_matrix
from .ideal import (
    FractionalIdeal,
    PrimeIdealAboveQ,
    factor_ideal,
    factor_rational_prime,
    minkowski_bound,
    prime_image,
    principal_ideal,
    require_prime_conductor,
    valuation,
)
from .intmat import smith_normal_form, xgcd
from .lll import apply_transform, lll_gram, short_vectors

log_ = logging.getLogger(__name__)

SUPPORTED_MAX_P = 23
DEFAULT_BOUND_CAP = 1000


class PrincipalityUndecided(RuntimeError):
    """The generator search was exhausted and no class group could decide."""


class ClassGroupError(RuntimeError):
    pass


class ClassGroupSearchExhausted(ClassGroupError):
    """The relation search ran out of effort before pinning down the group."""


class ClassGroupMismatch(ClassGroupError):
    """Verified relations bound the group order below the expected value."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# short elements of an ideal


@dataclass
class _ReducedLattice:
    ideal: FractionalIdeal
    basis: list[list[int]]      # LLL-reduced rows, power-basis coordinates
    gram: list[list[int]]       # exact T2 Gram of ``basis``


def reduced_lattice(I: FractionalIdeal) -> _ReducedLattice:
    J = I.integral_part()
    B = [list(c) for c in J.basis]
    M = J.field.t2_gram()
    BM = [[sum(b[k] * M[k][j] for k in range(len(b)) if b[k]) for j in range(len(b))] for b in B]
    G = [[sum(x * y for x, y in zip(row, c)) for c in B] for row in BM]
    H, Gred = lll_gram(G)
    return _ReducedLattice(J, apply_transform(H, B), Gred)


def _log_abs_norms(F: CyclotomicField, coords: np.ndarray, shift: int) -> np.ndarray:
    E = embeddings_matrix(F)
    vals = coords @ E.T
    with np.errstate(divide="ignore"):
        return np.log(np.abs(vals)).sum(axis=1) + F.degree * shift * log(2)


def _float_rows(rows: list[list[int]]) -> tuple[np.ndarray, int]:
    top = max((abs(x).bit_length() for r in rows for x in r), default=0)
    shift = max(0, top - 900)
    arr = np.array([[float(x >> shift) if x >= 0 else -float((-x) >> shift) for x in r] for r in rows])
    return arr, shift


def small_elements(L: _ReducedLattice, scale: float, limit: int):
    """Yield (element, log|N| estimate) for short vectors of T2 <= scale * n * N^(2/n).

    The reduced basis vectors come first, then the enumeration in its fixed order.
    """
    F = L.ideal.field
    n = F.degree
    lognorm = log(L.ideal.integral_norm)
    unit = exp(2 * lognorm / n)
    basis_f, shift = _float_rows(L.basis)
    gram_f = np.array([[float(x) for x in row] for row in L.gram]) / unit if unit < 1e300 else None
    if gram_f is None or not np.all(np.isfinite(gram_f)):
        big = max(abs(x).bit_length() for row in L.gram for x in row)
        s = max(0, big - 900)
        gram_f = np.array([[float(x >> s) if x >= 0 else -float((-x) >> s) for x in row] for row in L.gram])
        gram_f = gram_f * (2.0 ** s / unit)

    def emit(batch):
        X = np.array(batch, dtype=float)
        est = _log_abs_norms(F, X @ basis_f, shift)
        for x, e in zip(batch, est):
            v = [0] * n
            for c, b in zip(x, L.basis):
                if c:
                    for j in range(n):
                        v[j] += c * b[j]
            yield F.element(v), float(e)

    first = [[int(i == j) for j in range(n)] for i in range(n)]
    yield from emit(first)
    batch = []
    for x in short_vectors(gram_f, scale * n, limit):
        if sum(1 for c in x if c) == 1 and sum(abs(c) for c in x) == 1:
            continue
        batch.append(x)
        if len(batch) >= 256:
            yield from emit(batch)
            batch = []
    if batch:
        yield from emit(batch)


def find_generator(I: FractionalIdeal, scales=(2.0, 3.0, 4.0), limit: int = 60000) -> CyclotomicNumber | None:
    """Search I (integral) for an element of norm N(I); verified exactly."""
    if I.is_unit():
        return I.field.one()
    L = reduced_lattice(I)
    N = I.integral_norm
    target = log(N)
    for scale in scales:
        for alpha, est in small_elements(L, scale, limit):
            if abs(est - target) < 1e-6 * max(1.0, target) + 1e-6:
                if abs(alpha.norm()) == N:
                    return alpha
    return None


def is_principal(I: FractionalIdeal, cg: "ClassGroupDescription | None" = None, **search) -> CyclotomicNumber | None:
    """A verified generator of I, or None when I is provably not principal.

    Raises PrincipalityUndecided when the search fails and no class group
    (or one that cannot see I) is available.
    """
    require_prime_conductor(I.field)
    d = I.denominator
    J = I.integral_part()
    if cg is not None and cg.invariants:
        # a nonzero class settles the question without a doomed search
        try:
            if any(cg.class_of(J)):
                return None
        except PrincipalityUndecided:
            pass
    alpha = find_generator(J, **search)
    if alpha is not None:
        gen = alpha / d if d > 1 else alpha
        if principal_ideal(gen) != I:
            raise AssertionError("generator verification failed")
        return gen
    if cg is None:
        raise PrincipalityUndecided("generator search exhausted and no class group given")
    cls = cg.class_of(J)
    if any(cls):
        return None
    raise PrincipalityUndecided("ideal is principal by class arithmetic but no generator was found")


# ---------------------------------------------------------------------------
# relation lattice


class _Echelon:
    """Incremental integer row echelon form of a full-rank target lattice.

    Once full rank is reached the determinant D satisfies D*Z^k in L, so all
    entries are kept reduced modulo D.
    """

    def __init__(self, k: int):
        self.k = k
        self.rows: dict[int, list[int]] = {}
        self.det: int | None = None

    def _reduce(self, v):
        if self.det is not None:
            return [x % self.det for x in v]
        return v

    def add(self, v) -> bool:
        v = self._reduce(list(v))
        changed = False
        c = 0
        while True:
            while c < self.k and v[c] == 0:
                c += 1
            if c == self.k:
                break
            piv = self.rows.get(c)
            if piv is None:
                if v[c] < 0:
                    v = [-x for x in v]
                self.rows[c] = v
                changed = True
                break
            a, b = piv[c], v[c]
            if b % a == 0:
                q = b // a
                v = self._reduce([x - q * y for x, y in zip(v, piv)])
                continue
            u, w, d = xgcd(a, b)
            ad, bd = a // d, b // d
            newp = [u * x + w * y for x, y in zip(piv, v)]
            v = [ad * y - bd * x for x, y in zip(piv, v)]
            self.rows[c] = self._reduce(newp)
            if self.det is not None:
                self.rows[c][c] = d
            v = self._reduce(v)
            changed = True
        if changed and len(self.rows) == self.k:
            det = 1
            for c, r in self.rows.items():
                det *= r[c]
            if self.det is None or det < self.det:
                self.det = det
                for c in self.rows:
                    pivot = self.rows[c][c]
                    self.rows[c] = [x % det for x in self.rows[c]]
                    self.rows[c][c] = pivot
        return changed

    @property
    def full_rank(self) -> bool:
        return len(self.rows) == self.k

    def matrix(self) -> list[list[int]]:
        return [self.rows[c] for c in range(self.k)]


def _class_structure(H: list[list[int]], D: int):
    """psi vectors (essential coordinates mod D) and the SNF of the essential relations."""
    k = len(H)
    ess = [c for c in range(k) if H[c][c] != 1]
    pos = {c: i for i, c in enumerate(ess)}
    e = len(ess)
    psi: list[list[int] | None] = [None] * k
    for j in range(k - 1, -1, -1):
        if j in pos:
            v = [0] * e
            v[pos[j]] = 1
            psi[j] = v
        else:
            v = [0] * e
            row = H[j]
            for l in range(j + 1, k):
                if row[l]:
                    for t in range(e):
                        v[t] -= row[l] * psi[l][t]
            psi[j] = [x % D for x in v] if D > 1 else [0] * e
    R = []
    for c in ess:
        v = [0] * e
        row = H[c]
        for l in range(c, k):
            if row[l]:
                for t in range(e):
                    v[t] += row[l] * psi[l][t]
        R.append(v)
    if not ess:
        return psi, [], [], []
    U, S, V = smith_normal_form(R)
    invariants = [S[i][i] for i in range(e)]
    return psi, invariants, V, ess


# ---------------------------------------------------------------------------
# class group


@dataclass
class ClassGroupDescription:
    field: CyclotomicField
    factor_base: list[PrimeIdealAboveQ]
    factor_base_bound: int
    relations: list[tuple[tuple[int, ...], CyclotomicNumber]]
    invariants: list[int]
    generators: list[FractionalIdeal]
    generator_primes: list[PrimeIdealAboveQ]
    generator_witnesses: list[CyclotomicNumber | None]
    expected_order: int
    unconditional: bool
    _psi: list = field(default_factory=list, repr=False)
    _V: list = field(default_factory=list, repr=False)
    _live: list = field(default_factory=list, repr=False)

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return self.order == 1

    def _fb_index(self) -> dict:
        return {(P.q, P.g): i for i, P in enumerate(self.factor_base)}

    def dlog_vector(self, v) -> tuple[int, ...]:
        if not self.invariants:
            return ()
        e = len(self._psi[0]) if self._psi else 0
        w = [0] * e
        for j, c in enumerate(v):
            if c:
                for t in range(e):
                    w[t] += c * self._psi[j][t]
        coords = [sum(w[r] * self._V[r][i] for r in range(e)) for i in range(e)]
        return tuple(coords[i] % d for i, d in zip(self._live, self.invariants))

    def class_of(self, I: FractionalIdeal) -> tuple[int, ...]:
        """Discrete logarithm of the class of I on the invariant-factor generators."""
        index = self._fb_index()
        v = [0] * len(self.factor_base)
        for P, ex in factor_ideal(I):
            key = (P.q, P.g)
            if key not in index:
                raise PrincipalityUndecided(f"prime above {P.q} lies outside the factor base")
            v[index[key]] += ex
        return self.dlog_vector(v)

    def to_json(self) -> dict:
        return {
            "conductor": self.field.conductor,
            "factor_base_bound": self.factor_base_bound,
            "factor_base_size": len(self.factor_base),
            "relation_count": len(self.relations),
            "invariants": list(self.invariants),
            "order": self.order,
            "expected_order": self.expected_order,
            "unconditional": self.unconditional,
            "generators": [P.to_json() for P in self.generator_primes],
            "generator_witnesses": [w.to_json() if w is not None else None for w in self.generator_witnesses],
            "generator_obstructions": [norm_form_obstruction(P) for P in self.generator_primes],
        }


def norm_form_obstruction(P: PrimeIdealAboveQ) -> dict | None:
    """Certificate that a degree-one prime P above q is not principal, if one exists.

    For p = 3 mod 4 the field contains k = Q(sqrt(-p)). The relative norm of
    P to k is a prime of norm q, so P = (alpha) forces 4q = x^2 + p y^2.
    """
    p, q = P.p, P.q
    if p % 4 != 3 or P.f != 1 or q == p:
        return None
    reps = []
    y = 0
    while p * y * y <= 4 * q:
        r = 4 * q - p * y * y
        x = isqrt(r)
        if x * x == r:
            reps.append([x, y])
        y += 1
    return {"q": q, "form": f"x^2 + {p} y^2 = {4 * q}", "representations": reps, "non_principal": not reps}


def default_factor_base_bound(F: CyclotomicField) -> int:
    return min(int(ceil(minkowski_bound(F))), DEFAULT_BOUND_CAP)


def factor_base(F: CyclotomicField, bound: int) -> list[PrimeIdealAboveQ]:
    out = []
    for q in primerange(2, bound + 1):
        for P, _ in factor_rational_prime(q, F):
            if P.norm <= bound:
                out.append(P)
    return out


def _relation_vector(alpha: CyclotomicNumber, fb: list[PrimeIdealAboveQ], by_q: dict) -> list[int] | None:
    N = abs(int(alpha.norm()))
    v = [0] * len(fb)
    rest = N
    for q, idxs in by_q.items():
        if rest % q:
            continue
        for i in idxs:
            e = valuation(alpha, fb[i])
            if e:
                v[i] = e
                rest //= fb[i].norm ** e
    return v if rest == 1 else None


def _smooth_estimate(value: float, qs: list[int]) -> bool:
    m = int(round(exp(value)))
    if m <= 0 or abs(log(m) - value) > 1e-6:
        return False
    for q in qs:
        while m % q == 0:
            m //= q
    return m == 1


def class_group(
    F: CyclotomicField,
    factor_base_bound: int | None = None,
    *,
    expected_order: int | None = None,
    max_rounds: int = 4,
) -> ClassGroupDescription:
    """Class group of Q(zeta_p), p <= 23, from a factor-base relation search.

    ``expected_order`` defaults to the minus class number (the plus part is
    1 throughout the supported range). The result is an error unless the
    relation lattice reaches exactly that order.
    """
    p = require_prime_conductor(F)
    if p > SUPPORTED_MAX_P:
        raise ValueError(f"class groups are supported for p <= {SUPPORTED_MAX_P}")
    if expected_order is None:
        from .stick import minus_class_number

        expected_order = minus_class_number(p)
    mb = minkowski_bound(F)
    bound = default_factor_base_bound(F) if factor_base_bound is None else int(factor_base_bound)
    unconditional = bound >= mb
    fb = factor_base(F, bound)
    k = len(fb)
    index = {(P.q, P.g): i for i, P in enumerate(fb)}
    by_q: dict[int, list[int]] = {}
    for i, P in enumerate(fb):
        by_q.setdefault(P.q, []).append(i)
    qs = sorted(by_q)
    n = F.degree

    if k == 0:
        if expected_order != 1:
            msg = f"empty factor base (bound {bound}) cannot produce order {expected_order}"
            if unconditional:
                raise ClassGroupMismatch(msg, {"conductor": p, "relation_lattice_order": 1,
                                               "expected_order": expected_order, "unconditional": True})
            raise ClassGroupSearchExhausted(msg + "; raise the bound")
        return ClassGroupDescription(F, [], bound, [], [], [], [], [], expected_order, unconditional)

    perms = {}
    for a in F.units[1:]:
        perms[a] = [index[(Q.q, Q.g)] for Q in (prime_image(P, a) for P in fb)]

    ech = _Echelon(k)
    relations: list[tuple[tuple[int, ...], CyclotomicNumber]] = []

    def add_relation(v, alpha):
        relations.append((tuple(v), alpha))
        ech.add(v)
        for a, perm in perms.items():
            w = [0] * k
            for i, c in enumerate(v):
                if c:
                    w[perm[i]] = c
            ech.add(w)

    def done() -> bool:
        return ech.full_rank and ech.det <= expected_order

    # (q) is the product of the primes above q
    for q in qs:
        v = [0] * k
        for i in by_q[q]:
            v[i] = fb[i].e
        if len(by_q[q]) * fb[by_q[q][0]].e * fb[by_q[q][0]].f == n:
            add_relation(v, F(q))

    reps = []
    seen = set()
    for i, P in enumerate(fb):
        if i in seen:
            continue
        orbit = {perm[i] for perm in perms.values()} | {i}
        seen |= orbit
        reps.append(i)

    lattices = {}
    for rnd in range(max_rounds):
        if done():
            break
        scale = 2.0 + rnd
        limit = 2000 * 4 ** rnd
        for i in reps:
            if done():
                break
            if i not in lattices:
                lattices[i] = reduced_lattice(fb[i].ideal)
            found = 0
            logN = log(fb[i].norm)
            for alpha, est in small_elements(lattices[i], scale, limit):
                if est < logN - 1e-6 or not _smooth_estimate(est, qs):
                    continue
                v = _relation_vector(alpha, fb, by_q)
                if v is None:
                    continue
                add_relation(v, alpha)
                found += 1
                if done() or found >= 8 * (rnd + 1):
                    break
        log_.info("class group p=%d round %d: rank %d/%d det %s", p, rnd, len(ech.rows), k, ech.det)

    if not ech.full_rank:
        raise ClassGroupSearchExhausted(
            f"relation search did not reach full rank ({len(ech.rows)}/{k}); raise the factor-base bound or effort"
        )
    if ech.det < expected_order:
        # the relations are exact, so the order of the factor-base classes is at most det
        raise ClassGroupMismatch(
            f"relation lattice has order {ech.det} below the expected {expected_order}",
            {
                "conductor": p,
                "relation_lattice_order": ech.det,
                "expected_order": expected_order,
                "unconditional": unconditional,
                "factor_base_bound": bound,
                "relations": [{"vector": {str(i): c for i, c in enumerate(v) if c}, "element": a.to_json()}
                              for v, a in relations[:20]],
            },
        )
    if ech.det > expected_order:
        raise ClassGroupSearchExhausted(
            f"relation lattice order {ech.det} exceeds the expected {expected_order}; raise the effort"
        )

    H = ech.matrix()
    D = ech.det
    psi, invariants_all, V, ess = _class_structure(H, D)
    live = [i for i, d in enumerate(invariants_all) if d != 1]
    invariants = [invariants_all[i] for i in live]
    cg = ClassGroupDescription(
        F, fb, bound, relations, invariants, [], [], [], expected_order, unconditional, psi, V, live
    )
    if cg.order != D:
        raise AssertionError("Smith form order disagrees with the echelon determinant")

    # representatives: the smallest factor-base prime generating each cyclic factor
    for t, d in enumerate(invariants):
        rep = None
        for i, P in enumerate(fb):
            v = [0] * k
            v[i] = 1
            cls = cg.dlog_vector(v)
            if gcd(cls[t], d) == 1 and all(c == 0 for s, c in enumerate(cls) if s != t):
                rep = P
                break
        if rep is None:
            raise ClassGroupError("no single factor-base prime represents an invariant generator")
        cg.generator_primes.append(rep)
        cg.generators.append(rep.ideal)
        witness = find_generator(rep.ideal ** d)
        if witness is not None and principal_ideal(witness) != rep.ideal ** d:
            raise AssertionError("generator witness failed verification")
        cg.generator_witnesses.append(witness)
    return cg
