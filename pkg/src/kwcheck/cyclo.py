"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored in the power basis 1, zeta, ..., zeta^(n-1) as a tuple
of integer numerators over one positive common denominator, always reduced
modulo the cyclotomic polynomial. Two elements are equal iff their stored
data are equal.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import mpmath
import numpy as np
from sympy import factorint, integer_nthroot, isprime, totient

from . import _intpoly as ip
from .lll import babai_nearest_plane, lll_rows


# ---------------------------------------------------------------------------
# cyclotomic polynomials and fields


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Phi_m as ascending integer coefficients, via x^m - 1 = prod_{d | m} Phi_d."""
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly, rem = ip.divmod_poly(poly, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(poly)


def ramanujan_sum(m: int, k: int) -> int:
    """Sum of zeta_m^(a k) over a in (Z/m)^x; this is Tr(zeta_m^k)."""
    g = gcd(m, k) if k else m
    q = m // g
    mu = _mobius(q)
    return mu * int(totient(m)) // int(totient(q))


def _mobius(n: int) -> int:
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def unit_residues(m: int) -> list[int]:
    if m <= 2:
        return [1]
    return [a for a in range(1, m) if gcd(a, m) == 1]


@dataclass(frozen=True, eq=False)
class CyclotomicField:
    """Q(zeta_m). Construct through :func:`field_new` so instances are shared."""

    conductor: int
    degree: int
    phi: tuple[int, ...] = field(repr=False)
    discriminant: int | None = field(default=None, repr=False)

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.conductor == self.conductor

    def __hash__(self):
        return hash(("CyclotomicField", self.conductor))

    def __reduce__(self):
        return (field_new, (self.conductor,))

    @property
    def units(self) -> list[int]:
        return _units_cached(self.conductor)

    @property
    def is_prime_conductor(self) -> bool:
        return self.conductor > 2 and isprime(self.conductor)

    def element(self, coeffs, den: int = 1) -> "CyclotomicNumber":
        """Element from coefficients (ints or Fractions) of powers of zeta.

        Coefficient lists may be longer than the degree; they are reduced.
        """
        coeffs = list(coeffs)
        if any(isinstance(c, Fraction) for c in coeffs):
            common = 1
            for c in coeffs:
                if isinstance(c, Fraction):
                    common = common * c.denominator // gcd(common, c.denominator)
            nums = [int(Fraction(c) * common) for c in coeffs]
            return CyclotomicNumber._from_raw(self, nums, den * common)
        return CyclotomicNumber._from_raw(self, [int(c) for c in coeffs], den)

    def __call__(self, value) -> "CyclotomicNumber":
        if isinstance(value, CyclotomicNumber):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (int, Fraction)):
            v = Fraction(value)
            return CyclotomicNumber(self, (v.numerator,) + (0,) * (self.degree - 1), v.denominator)
        return self.element(value)

    def zeta(self, k: int = 1) -> "CyclotomicNumber":
        coeffs = [0] * self.conductor
        coeffs[k % self.conductor] = 1
        return self.element(coeffs)

    def one(self) -> "CyclotomicNumber":
        return self(1)

    def zero(self) -> "CyclotomicNumber":
        return self(0)

    def automorphism(self, a: int) -> "GaloisAutomorphism":
        return GaloisAutomorphism(self.conductor, a % self.conductor if self.conductor > 1 else 1)

    def t2_gram(self) -> list[list[int]]:
        """Integer Gram matrix of the trace form Tr(x * conj(y)) on the power basis."""
        return _t2_gram_cached(self.conductor)

    def __repr__(self):
        return f"CyclotomicField({self.conductor})"


@functools.lru_cache(maxsize=None)
def _units_cached(m: int) -> list[int]:
    return unit_residues(m)


@functools.lru_cache(maxsize=None)
def _t2_gram_cached(m: int) -> list[list[int]]:
    n = int(totient(m))
    sums = {k: ramanujan_sum(m, k) for k in range(-n, n)}
    return [[sums[i - j] for j in range(n)] for i in range(n)]


@functools.lru_cache(maxsize=None)
def field_new(m: int) -> CyclotomicField:
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    phi = cyclotomic_polynomial(m)
    disc = None
    if m > 2 and isprime(m):
        disc = (-1) ** ((m - 1) // 2) * m ** (m - 2)
    return CyclotomicField(m, len(phi) - 1, phi, disc)


# ---------------------------------------------------------------------------
# elements


class CyclotomicNumber:
    """An exact element of Q(zeta_m)."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CyclotomicField, num: tuple[int, ...], den: int = 1):
        # callers guarantee num is reduced mod Phi_m and has length n
        g = gcd(ip.content(num), den)
        if den < 0:
            g = -g
        if g not in (0, 1):
            num = tuple(c // g for c in num)
            den //= g
        elif g == 0:
            den = 1
        self.field = field
        self.num = tuple(num)
        self.den = den
        self._hash = None

    @classmethod
    def _from_raw(cls, F: CyclotomicField, coeffs: list[int], den: int = 1) -> "CyclotomicNumber":
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        m = F.conductor
        red = ip.reduce_monic(ip.fold_mod_xm1(coeffs, m), list(F.phi))
        return cls(F, tuple(red), den)

    def __reduce__(self):
        return (CyclotomicNumber, (self.field, self.num, self.den))

    # --- views -------------------------------------------------------------

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def is_integral(self) -> bool:
        return self.den == 1

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return self.field == other.field and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.conductor, self.num, self.den))
        return self._hash

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c:
                mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                coef = str(c)
                if mono and c == 1:
                    coef = ""
                elif mono and c == -1:
                    coef = "-"
                terms.append(f"{coef}{'*' if coef not in ('', '-') and mono else ''}{mono}")
        body = " + ".join(terms) if terms else "0"
        return f"<{body} in Q(z_{self.field.conductor})>"

    # --- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.field != self.field:
                raise ValueError(
                    f"field mismatch: Q(z_{self.field.conductor}) vs Q(z_{other.field.conductor})")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        raise TypeError(f"cannot combine with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return CyclotomicNumber(self.field, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        return CyclotomicNumber(
            self.field,
            tuple(a * o.den + b * self.den for a, b in zip(self.num, o.num)),
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            v = Fraction(other)
            return CyclotomicNumber(self.field, tuple(a * v.numerator for a in self.num), self.den * v.denominator)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        prod = ip.mul(list(self.num), list(o.num))
        return CyclotomicNumber._from_raw(self.field, prod, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        s = _inverse_mod_phi(list(self.num), list(self.field.phi))
        return self.field.element([c * self.den for c in s])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = self.inverse(), -e
        result = self.field.one()
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # --- Galois action, norm, trace -----------------------------------------

    def galois(self, a: int) -> "CyclotomicNumber":
        m = self.field.conductor
        if m <= 2:
            return self
        a %= m
        if gcd(a, m) != 1:
            raise ValueError(f"{a} is not a unit modulo {m}")
        out = [0] * m
        for i, c in enumerate(self.num):
            if c:
                out[(a * i) % m] += c
        return CyclotomicNumber._from_raw(self.field, out, self.den)

    def conj(self) -> "CyclotomicNumber":
        return self.galois(-1)

    def conjugates(self) -> list["CyclotomicNumber"]:
        return [self.galois(a) for a in self.field.units]

    def norm(self) -> Fraction:
        # balanced product tree keeps the big multiplications few
        layer = [self.galois(a) for a in self.field.units]
        while len(layer) > 1:
            nxt = [layer[i] * layer[i + 1] for i in range(0, len(layer) - 1, 2)]
            if len(layer) % 2:
                nxt.append(layer[-1])
            layer = nxt
        return layer[0].rational()

    def trace(self) -> Fraction:
        m = self.field.conductor
        total = sum(c * ramanujan_sum(m, i) for i, c in enumerate(self.num) if c)
        return Fraction(total, self.den)

    # --- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "conductor": self.field.conductor,
            "coefficients": [[c.numerator, c.denominator] for c in self.coefficients],
        }

    @staticmethod
    def from_json(obj: dict) -> "CyclotomicNumber":
        F = field_new(int(obj["conductor"]))
        return F.element([Fraction(int(a), int(b)) for a, b in obj["coefficients"]])


def _inverse_mod_phi(a: list[int], phi: list[int]) -> list[Fraction]:
    """s with s*a = 1 mod phi over Q, by the extended Euclidean algorithm."""
    r0 = [Fraction(c) for c in phi]
    r1 = [Fraction(c) for c in a]
    s0: list[Fraction] = []
    s1: list[Fraction] = [Fraction(1)]
    _ftrim(r1)
    while len(r1) > 1:
        q, r = _fdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _fsub(s0, _fmul(q, s1))
        if not r1:
            raise ZeroDivisionError("element is not invertible")
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    out = [x / c for x in s1]
    n = len(phi) - 1
    return out + [Fraction(0)] * (n - len(out))


def _ftrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ftrim(out)


def _fsub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _ftrim([Fraction(x) for x in out])


def _fdivmod(a, b):
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _ftrim(r)
    q = [Fraction(0)] * (len(r) - db)
    lead = b[-1]
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] / lead
        if c:
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] -= c * b[j]
    return _ftrim(q), _ftrim(r[:db])


# ---------------------------------------------------------------------------
# Galois automorphisms


@dataclass(frozen=True)
class GaloisAutomorphism:
    """sigma_a : zeta_m -> zeta_m^a."""

    conductor: int
    index: int

    def __post_init__(self):
        m, a = self.conductor, self.index
        if m > 2 and not (1 <= a < m and gcd(a, m) == 1):
            raise ValueError(f"sigma_{a} is not an automorphism of Q(zeta_{m})")

    def __call__(self, x: CyclotomicNumber) -> CyclotomicNumber:
        return galois_apply(self, x)

    def __mul__(self, other: "GaloisAutomorphism") -> "GaloisAutomorphism":
        if other.conductor != self.conductor:
            raise ValueError("conductor mismatch")
        m = self.conductor
        return GaloisAutomorphism(m, (self.index * other.index) % m if m > 2 else 1)

    def inverse(self) -> "GaloisAutomorphism":
        m = self.conductor
        return self if m <= 2 else GaloisAutomorphism(m, pow(self.index, -1, m))


def galois_apply(s: GaloisAutomorphism, x: CyclotomicNumber) -> CyclotomicNumber:
    if s.conductor != x.field.conductor:
        raise ValueError("conductor mismatch")
    return x.galois(s.index)


def norm_trace(x: CyclotomicNumber) -> tuple[Fraction, Fraction]:
    return x.norm(), x.trace()


# ---------------------------------------------------------------------------
# complex embeddings


def embedding_exponents(F: CyclotomicField) -> list[int]:
    return list(F.units)


def embed_complex(x: CyclotomicNumber, bits: int = 128) -> list[mpmath.mpc]:
    """Values of x under zeta -> exp(2 pi i k / m), k ranging over units mod m."""
    if bits < 64:
        raise ValueError("precision must be at least 64 bits")
    m = x.field.conductor
    with mpmath.workprec(bits + 16):
        out = []
        for k in embedding_exponents(x.field):
            w = mpmath.expjpi(mpmath.mpf(2 * k) / m)
            val = mpmath.polyval([mpmath.mpf(c) for c in reversed(x.num)], w)
            out.append(val / x.den)
    return out


def embeddings_array(x: CyclotomicNumber) -> np.ndarray:
    """Double-precision embeddings; screening only."""
    vals, shift = scaled_embeddings(x)
    return vals * 2.0 ** shift


def scaled_embeddings(x: CyclotomicNumber) -> tuple[np.ndarray, int]:
    """Embeddings as (values, shift) with true value = values * 2**shift.

    Keeps huge numerators inside float range.
    """
    top = max((abs(c).bit_length() for c in x.num), default=0)
    shift = max(0, top - 960)
    coeffs = np.array([float(c >> shift) if c >= 0 else -float((-c) >> shift) for c in x.num])
    dshift = max(0, x.den.bit_length() - 960)
    vals = embeddings_matrix(x.field) @ coeffs / float(x.den >> dshift)
    return vals, shift - dshift


@functools.lru_cache(maxsize=None)
def _embedding_matrix(m: int) -> np.ndarray:
    F = field_new(m)
    ks = np.array(embedding_exponents(F))
    i = np.arange(F.degree)
    return np.exp(2j * np.pi * np.outer(ks, i) / m)


def embeddings_matrix(F: CyclotomicField) -> np.ndarray:
    return _embedding_matrix(F.conductor)


# ---------------------------------------------------------------------------
# minimal polynomials


def minimal_polynomial(x: CyclotomicNumber) -> list[Fraction]:
    """Monic minimal polynomial over Q, ascending coefficients.

    Finds the first linear dependency among 1, x, x^2, ... by incremental
    exact row reduction.
    """
    n = x.field.degree
    pivots: list[tuple[int, list[Fraction], list[Fraction]]] = []
    power = x.field.one()
    for k in range(n + 1):
        vec = list(power.coefficients)
        combo = [Fraction(0)] * (k + 1)
        combo[k] = Fraction(1)
        for col, pv, pc in pivots:
            c = vec[col]
            if c:
                vec = [a - c * b for a, b in zip(vec, pv)]
                for j, b in enumerate(pc):
                    combo[j] -= c * b
        nz = next((i for i, v in enumerate(vec) if v), None)
        if nz is None:
            return combo
        lead = vec[nz]
        pivots.append((nz, [v / lead for v in vec], [c / lead for c in combo]))
        power = power * x
    raise AssertionError("no dependency found within the field degree")


# ---------------------------------------------------------------------------
# subfield descent


def descend(x: CyclotomicNumber, d: int) -> CyclotomicNumber | None:
    """Rewrite x in Q(zeta_d) (d | m) if x lies there, else None."""
    m = x.field.conductor
    if m % d:
        raise ValueError(f"{d} does not divide {m}")
    E = field_new(d)
    step = m // d
    if step * (E.degree - 1) < x.field.degree:
        # basis of Q(zeta_d) maps to power-basis monomials of Q(zeta_m)
        coeffs = [0] * E.degree
        for i, c in enumerate(x.num):
            if c:
                if i % step or i // step >= E.degree:
                    return None
                coeffs[i // step] = c
        return E.element(coeffs, x.den)
    # generic route: solve against the embedded basis
    F = x.field
    basis = [F.zeta(step * j) for j in range(E.degree)]
    sol = _solve_in_span([b.coefficients for b in basis], x.coefficients)
    if sol is None:
        return None
    return E.element(sol)


def _solve_in_span(vectors, target) -> list[Fraction] | None:
    rows = [list(v) + [Fraction(int(i == j)) for j in range(len(vectors))] for i, v in enumerate(vectors)]
    n = len(target)
    t = list(target) + [Fraction(0)] * len(vectors)
    piv_rows = []
    for r in rows:
        for col, pr in piv_rows:
            c = r[col]
            if c:
                r = [a - c * b for a, b in zip(r, pr)]
        nz = next((i for i in range(n) if r[i]), None)
        if nz is None:
            continue
        lead = r[nz]
        piv_rows.append((nz, [a / lead for a in r]))
    for col, pr in piv_rows:
        c = t[col]
        if c:
            t = [a - c * b for a, b in zip(t, pr)]
    if any(t[:n]):
        return None
    return [-c for c in t[n:]]


# ---------------------------------------------------------------------------
# p-th roots


class RootSearchExhausted(RuntimeError):
    """Raised if reconstruction never stabilises within the precision cap."""


def pth_power_root(x: CyclotomicNumber, p: int, *, max_precision_bits: int = 1 << 16) -> CyclotomicNumber | None:
    """Return y with y^p == x if such y exists in the field of x, else None.

    Absence is decided exactly: by the norm not being a rational p-th power,
    by a local obstruction at a degree-one prime, or by failure of a
    reconstruction whose precision guarantees success when a root exists.
    Every returned root has been checked by recomputing y^p.
    """
    if x.is_zero():
        raise ValueError("p-th root of zero requested")
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    F = x.field
    # x = W / D^p with W integral; a root of W is integral (Z[zeta] is maximal)
    D = x.den
    W = x * D ** p
    Wn = list(W.num)
    N = W.norm()
    if N.denominator != 1:
        raise AssertionError("integral element with non-integral norm")
    N = int(N)
    r, exact = integer_nthroot(abs(N), p)
    if not exact:
        return None
    if N < 0 and p == 2:
        return None
    if F.degree == 1:
        v = Fraction(W.num[0])
        root = _rational_root(int(v), p)
        return None if root is None else F(Fraction(root, D))

    m = F.conductor
    primes = _split_primes(m, p, abs(N))
    # local obstructions at every degree-one prime above the first few ell
    for ell, roots in primes[:3]:
        for R in roots:
            w = ip.evaluate_mod(Wn, R, ell)
            if (ell - 1) % p == 0 and pow(w, (ell - 1) // p, ell) != 1:
                return None

    ell, roots = primes[0]
    bound = _coefficient_bound(W, p)
    n = F.degree
    lam_max = max(np.linalg.eigvalsh(np.array(F.t2_gram(), dtype=float)))
    # Babai succeeds once lambda_1 of the ideal lattice exceeds (1 + 2^(n/2)) * bound
    need = (1 + 2 ** (n / 2)) * (bound + 1) * (lam_max / n) ** 0.5
    k = 1
    while ell ** (k / n) <= need:
        k += 1
    # the precision above is a guarantee; one retry at double precision
    # guards the floating-point estimate of the bound
    for kk in (k, 2 * k):
        if kk * ell.bit_length() > max_precision_bits:
            break
        y = _reconstruct_root(Wn, F, p, ell, roots[0], kk)
        if y is not None and y ** p == W:
            return y / D
    return None


def _rational_root(v: int, p: int) -> int | None:
    r, exact = integer_nthroot(abs(v), p)
    if not exact:
        return None
    if v < 0:
        if p % 2 == 0:
            return None
        r = -r
    return r


def _coefficient_bound(W: CyclotomicNumber, p: int) -> float:
    vals, shift = scaled_embeddings(W)
    t2 = float(np.sum(np.abs(vals) ** (2.0 / p))) * 2.0 ** (2.0 * shift / p)
    lam_min = min(np.linalg.eigvalsh(np.array(W.field.t2_gram(), dtype=float)))
    return 1.01 * (t2 / lam_min) ** 0.5 + 1.0


def _split_primes(m: int, p: int, avoid: int, count: int = 3) -> list[tuple[int, list[int]]]:
    """Primes ell = 1 mod m (ell != 1 mod p when p does not divide m), with roots of Phi_m mod ell."""
    out = []
    ell = m + 1
    phi = list(cyclotomic_polynomial(m))
    while len(out) < count:
        if isprime(ell) and avoid % ell and ell > 2:
            if m % p == 0 or (ell - 1) % p:
                g = _primitive_root(ell)
                h = pow(g, (ell - 1) // m, ell)
                roots = [pow(h, k, ell) for k in unit_residues(m)]
                assert all(ip.evaluate_mod(phi, R, ell) == 0 for R in roots)
                out.append((ell, roots))
        ell += m
    return out


def _primitive_root(ell: int) -> int:
    fac = list(factorint(ell - 1))
    g = 2
    while any(pow(g, (ell - 1) // q, ell) == 1 for q in fac):
        g += 1
    return g


def _hensel_root(f: list[int], r: int, ell: int, k: int) -> int:
    """Lift a simple root r of f mod ell to a root mod ell^k."""
    df = ip.derivative(f)
    mod = ell
    while mod < ell ** k:
        mod = min(mod * mod, ell ** k)
        fr = ip.evaluate_mod(f, r, mod)
        dfr = ip.evaluate_mod(df, r, mod)
        r = (r - fr * pow(dfr, -1, mod)) % mod
    return r


def _reconstruct_root(Wn, F, p, ell, R, k) -> CyclotomicNumber | None:
    mod = ell ** k
    phi = list(F.phi)
    Rk = _hensel_root(phi, R, ell, k)
    w = ip.evaluate_mod(Wn, Rk, mod)
    if w % ell == 0:
        return None
    # a p-th root of w mod ell, then Hensel lift in the variable r
    r0 = None
    if (ell - 1) % p:
        r0 = pow(w % ell, pow(p, -1, ell - 1), ell)
    else:
        for c in range(1, ell):
            if pow(c, p, ell) == w % ell:
                r0 = c
                break
    if r0 is None:
        return None
    rk = _hensel_root([-w] + [0] * (p - 1) + [1], r0, ell, k)
    n = F.degree
    # lattice of coefficient vectors c with c(Rk) = 0 mod ell^k
    basis = [[mod] + [0] * (n - 1)]
    pw = 1
    for i in range(1, n):
        pw = pw * Rk % mod
        row = [0] * n
        row[0] = -pw
        row[i] = 1
        basis.append(row)
    red = lll_rows(basis)
    target = [rk] + [0] * (n - 1)
    v = babai_nearest_plane(red, target)
    z = [a - b for a, b in zip(target, v)]
    return F.element(z)


def is_pth_power(x: CyclotomicNumber, p: int) -> bool:
    return pth_power_root(x, p) is not None

