"""Fractional ideals of Z[zeta_p] for prime p.

An ideal is stored as ``J / d`` with ``J`` an integral ideal in upper
triangular Hermite normal form (columns are power-basis coordinates) and
``d`` the smallest positive integer making ``d * I`` integral. Equal ideals
therefore have equal data.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, exp, gcd, lgamma, log, pi

from sympy import ZZ, factorint, isprime, n_order
from sympy.polys.galoistools import gf_factor_sqf, gf_rem

from . import _intpoly as ip
from .cyclo import CyclotomicField, CyclotomicNumber, field_new
from .intmat import hnf_mod


def require_prime_conductor(F: CyclotomicField) -> int:
    if not F.is_prime_conductor:
        raise ValueError(f"ideal arithmetic needs a prime conductor, got {F.conductor}")
    return F.conductor


# ---------------------------------------------------------------------------
# fractional ideals


@dataclass(frozen=True, eq=False)
class FractionalIdeal:
    field: CyclotomicField
    basis: tuple[tuple[int, ...], ...]
    denominator: int = 1
    _gens: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        require_prime_conductor(self.field)

    # --- identity -------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FractionalIdeal)
            and self.field == other.field
            and self.denominator == other.denominator
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field.conductor, self.basis, self.denominator))

    def __repr__(self):
        return f"FractionalIdeal(Q(z_{self.field.conductor}), norm={self.norm})"

    # --- views ----------------------------------------------------------------

    @property
    def integral_norm(self) -> int:
        out = 1
        for j, col in enumerate(self.basis):
            out *= col[j]
        return out

    @property
    def norm(self) -> Fraction:
        return Fraction(self.integral_norm, self.denominator ** self.field.degree)

    def is_integral(self) -> bool:
        return self.denominator == 1

    def is_unit(self) -> bool:
        return self.denominator == 1 and self.integral_norm == 1

    @property
    def min_integer(self) -> int:
        """Smallest positive integer in the integral part."""
        return self.basis[0][0]

    def basis_elements(self) -> list[CyclotomicNumber]:
        return [self.field.element(list(c), self.denominator) for c in self.basis]

    def integral_part(self) -> "FractionalIdeal":
        if self.denominator == 1:
            return self
        return FractionalIdeal(self.field, self.basis, 1, self._gens)

    def generators(self) -> tuple[CyclotomicNumber, ...]:
        """A short generating set over Z[zeta] of the integral part (two elements)."""
        if self._gens:
            return self._gens
        gens = _two_element(self)
        object.__setattr__(self, "_gens", gens)
        return gens

    # --- arithmetic -----------------------------------------------------------

    def __mul__(self, other: "FractionalIdeal") -> "FractionalIdeal":
        if not isinstance(other, FractionalIdeal):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("field mismatch")
        if self.is_unit():
            return other
        if other.is_unit():
            return self
        n = self.field.degree
        ogens = other.generators()
        vecs = []
        for g in ogens:
            for col in self.basis:
                prod = ip.mul(list(col), list(g.num))
                vecs.append(ip.reduce_monic(ip.fold_mod_xm1(prod, n + 1), list(self.field.phi)))
        mod = self.min_integer * other.min_integer
        return _make_ideal(self.field, vecs, mod, self.denominator * other.denominator)

    def __pow__(self, e: int) -> "FractionalIdeal":
        if e < 0:
            raise ValueError("negative ideal powers are not supported")
        result = unit_ideal(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "FractionalIdeal":
        J = self.integral_part()
        out = ideal_inverse_times_norm(J) * principal_ideal(self.field(Fraction(1, J.integral_norm)))
        if self.denominator > 1:
            out = out * principal_ideal(self.field(self.denominator))
        return out

    def __truediv__(self, other: "FractionalIdeal") -> "FractionalIdeal":
        return self * other.inverse()

    def galois(self, a: int) -> "FractionalIdeal":
        vecs = [list(b.num) for b in (self.field.element(list(c)).galois(a) for c in self.basis)]
        return _make_ideal(self.field, vecs, self.min_integer, self.denominator)

    def contains(self, x: CyclotomicNumber) -> bool:
        if x.field != self.field:
            raise ValueError("field mismatch")
        y = x * self.denominator
        if y.den != 1:
            return False
        return _in_lattice(self.basis, list(y.num))

    def issubset(self, other: "FractionalIdeal") -> bool:
        return all(other.contains(b) for b in self.basis_elements())

    def to_json(self) -> dict:
        return {
            "conductor": self.field.conductor,
            "denominator": self.denominator,
            "hnf_columns": [list(c) for c in self.basis],
        }


def _in_lattice(basis, v: list[int]) -> bool:
    v = list(v)
    for j in range(len(basis) - 1, -1, -1):
        h = basis[j][j]
        if v[j] % h:
            return False
        c = v[j] // h
        if c:
            col = basis[j]
            for i in range(j + 1):
                v[i] -= c * col[i]
    return True


def _make_ideal(F, vecs, modulus: int, den: int = 1, gens: tuple = ()) -> FractionalIdeal:
    n = F.degree
    H = hnf_mod(vecs, n, abs(modulus))
    g = den
    for col in H:
        for x in col:
            if x:
                g = gcd(g, x)
                if g == 1:
                    break
        if g == 1:
            break
    if g > 1:
        H = tuple(tuple(x // g for x in col) for col in H)
        den //= g
        gens = ()
    return FractionalIdeal(F, H, den, gens)


def _two_element(I: FractionalIdeal) -> tuple[CyclotomicNumber, ...]:
    F = I.field
    a = I.min_integer
    if I.integral_norm == 1:
        return (F.one(),)
    target = I.basis
    candidates = [F.element(list(c)) for c in reversed(I.basis[1:])]
    cols = [F.element(list(c)) for c in I.basis]
    for k in range(len(cols)):
        candidates.append(sum(cols[k:], F.zero()))
    for beta in candidates:
        vecs = []
        for g in (F(a), beta):
            z = g
            for _ in range(F.degree):
                vecs.append(list(z.num))
                z = z * F.zeta()
        if hnf_mod(vecs, F.degree, a) == target:
            return (F(a), beta)
    return tuple([F(a)] + cols)


def unit_ideal(F: CyclotomicField) -> FractionalIdeal:
    n = F.degree
    basis = tuple(tuple(int(i == j) for i in range(n)) for j in range(n))
    return FractionalIdeal(F, basis, 1, (F.one(),))


def ideal_from_generators(F: CyclotomicField, gens: list[CyclotomicNumber]) -> FractionalIdeal:
    """The ideal generated over Z[zeta] by the given nonzero elements."""
    require_prime_conductor(F)
    gens = [F(g) for g in gens if not F(g).is_zero()]
    if not gens:
        raise ValueError("zero ideal")
    den = 1
    for g in gens:
        den = den * g.den // gcd(den, g.den)
    ints = [g * den for g in gens]
    mod = 0
    for g in ints:
        mod = gcd(mod, int(abs(g.norm())))
    vecs = []
    for g in ints:
        z = g
        for _ in range(F.degree):
            vecs.append(list(z.num))
            z = z * F.zeta()
    keep = tuple(ints) if len(ints) <= 2 else ()
    return _make_ideal(F, vecs, mod, den, keep)


def principal_ideal(x: CyclotomicNumber) -> FractionalIdeal:
    if x.is_zero():
        raise ValueError("the zero element does not generate a fractional ideal")
    return ideal_from_generators(x.field, [x])


def ideal_multiply(I: FractionalIdeal, J: FractionalIdeal) -> FractionalIdeal:
    return I * J


def ideal_norm(I: FractionalIdeal) -> Fraction:
    return I.norm


# ---------------------------------------------------------------------------
# prime ideals


@dataclass(frozen=True)
class PrimeIdealAboveQ:
    """The prime (q, g(zeta)) of Z[zeta_p], g an irreducible factor of Phi_p mod q."""

    p: int
    q: int
    g: tuple[int, ...]
    e: int
    f: int

    @property
    def field(self) -> CyclotomicField:
        return field_new(self.p)

    @functools.cached_property
    def ideal(self) -> FractionalIdeal:
        F = self.field
        gz = F.element(list(self.g))
        vecs = []
        z = gz
        for _ in range(F.degree):
            vecs.append(list(z.num))
            z = z * F.zeta()
        return _make_ideal(F, vecs, self.q, 1, (F(self.q), gz))

    @property
    def norm(self) -> int:
        return self.q ** self.f

    @functools.cached_property
    def _tau(self) -> list[int]:
        # element of every other prime above q but not of this one
        phi = list(cyclotomic_phi(self.p))
        cof = _gf_quo(phi, list(self.g), self.q)
        return cof

    def contains_integral(self, num) -> bool:
        return not any(_gf_rem_asc(list(num), list(self.g), self.q))

    def root(self) -> int | None:
        """For a degree-one prime (q, zeta - r), return r."""
        if self.f != 1:
            return None
        return (-self.g[0]) % self.q

    def to_json(self) -> dict:
        return {"q": self.q, "g": list(self.g), "e": self.e, "f": self.f}

    def __repr__(self):
        return f"P(q={self.q}, g={list(self.g)}, e={self.e}, f={self.f})"


def cyclotomic_phi(p: int) -> tuple[int, ...]:
    return field_new(p).phi


def _to_desc(a: list[int], q: int) -> list[int]:
    out = [c % q for c in reversed(a)]
    while out and out[0] == 0:
        out.pop(0)
    return out


def _gf_rem_asc(a: list[int], g: list[int], q: int) -> list[int]:
    return gf_rem(_to_desc(a, q), _to_desc(g, q), q, ZZ)


def _gf_quo(a: list[int], g: list[int], q: int) -> list[int]:
    from sympy.polys.galoistools import gf_quo

    quo = gf_quo(_to_desc(a, q), _to_desc(g, q), q, ZZ)
    return [int(c) for c in reversed(quo)]


@functools.lru_cache(maxsize=None)
def factor_rational_prime_cached(q: int, p: int) -> tuple[tuple[PrimeIdealAboveQ, int], ...]:
    if q == p:
        return ((PrimeIdealAboveQ(p, p, (p - 1, 1), p - 1, 1), p - 1),)
    f = int(n_order(q, p))
    phi_desc = _to_desc(list(cyclotomic_phi(p)), q)
    _, factors = gf_factor_sqf(phi_desc, q, ZZ)
    out = []
    for fac in factors:
        asc = tuple(int(c) for c in reversed(fac))
        assert len(asc) - 1 == f
        out.append(PrimeIdealAboveQ(p, q, asc, 1, f))
    out.sort(key=lambda P: P.g)
    assert len(out) * f == p - 1
    return tuple((P, 1) for P in out)


def factor_rational_prime(q: int, F: CyclotomicField) -> list[tuple[PrimeIdealAboveQ, int]]:
    p = require_prime_conductor(F)
    q = int(q)
    if not isprime(q):
        raise ValueError(f"{q} is not prime")
    return list(factor_rational_prime_cached(q, p))


def primes_above(q: int, F: CyclotomicField) -> list[PrimeIdealAboveQ]:
    return [P for P, _ in factor_rational_prime(q, F)]


def prime_image(P: PrimeIdealAboveQ, a: int) -> PrimeIdealAboveQ:
    """sigma_a(P), located among the primes above the same q."""
    if P.q == P.p:
        return P
    F = P.field
    image = F.element(list(P.g)).galois(a)
    for Q in primes_above(P.q, F):
        if Q.contains_integral(image.num):
            return Q
    raise AssertionError("Galois image of a prime not found")


# ---------------------------------------------------------------------------
# valuations and factorization


def _vq(n: int, q: int) -> int:
    v = 0
    n = abs(n)
    while n and n % q == 0:
        n //= q
        v += 1
    return v


def _valuation_integral(num: tuple[int, ...], P: PrimeIdealAboveQ) -> int:
    if not any(num):
        raise ValueError("valuation of zero")
    F = P.field
    if P.q == P.p:
        N = F.element(list(num)).norm()
        return _vq(int(N), P.q)
    # strip rational content first: v_P(q) = 1 when P is unramified
    c = ip.content(num)
    v = _vq(c, P.q)
    x = [a // P.q ** v for a in num]
    tau = P._tau
    phi = list(F.phi)
    m = F.conductor
    while P.contains_integral(x):
        y = ip.reduce_monic(ip.fold_mod_xm1(ip.mul(x, tau), m), phi)
        assert all(a % P.q == 0 for a in y)
        x = [a // P.q for a in y]
        v += 1
    return v


def valuation(target, P: PrimeIdealAboveQ) -> int:
    """Exact P-adic valuation of a nonzero element or fractional ideal."""
    if isinstance(target, CyclotomicNumber):
        if target.field.conductor != P.p:
            raise ValueError("field mismatch")
        if target.is_zero():
            raise ValueError("valuation of zero")
        return _valuation_integral(target.num, P) - P.e * _vq(target.den, P.q)
    if isinstance(target, FractionalIdeal):
        vals = []
        for g in target.generators():
            if g.is_rational():
                vals.append(P.e * _vq(g.num[0], P.q))
            else:
                vals.append(_valuation_integral(g.num, P))
        return min(vals) - P.e * _vq(target.denominator, P.q)
    raise TypeError(f"cannot take valuation of {type(target).__name__}")


def factor_ideal(I: FractionalIdeal) -> list[tuple[PrimeIdealAboveQ, int]]:
    """Prime factorization; exponents may be negative for fractional ideals."""
    qs = {int(q) for q in factorint(I.integral_norm)} | {int(q) for q in factorint(I.denominator)}
    out = []
    for q in sorted(qs):
        for P in primes_above(q, I.field):
            v = valuation(I, P)
            if v:
                out.append((P, v))
    return out


def ideal_from_factorization(F: CyclotomicField, fac) -> FractionalIdeal:
    num = unit_ideal(F)
    den = unit_ideal(F)
    for P, e in fac:
        if e > 0:
            num = num * P.ideal ** e
        elif e < 0:
            den = den * P.ideal ** (-e)
    if den.is_unit():
        return num
    return num * den.inverse()


def ideal_inverse_times_norm(I: FractionalIdeal) -> FractionalIdeal:
    """N(I) * I^-1 for an integral ideal I, via the conjugate product."""
    F = I.field
    out = unit_ideal(F)
    for a in F.units[1:]:
        out = out * I.galois(a)
    return out


def pth_power_shape(mu: CyclotomicNumber, p: int) -> FractionalIdeal | None:
    """The ideal a with a^p = (mu), when every exponent of (mu) is divisible by p."""
    if mu.is_zero():
        raise ValueError("mu must be nonzero")
    fac = factor_ideal(principal_ideal(mu))
    if any(e % p for _, e in fac):
        return None
    return ideal_from_factorization(mu.field, [(P, e // p) for P, e in fac])


# ---------------------------------------------------------------------------
# Minkowski bound


def minkowski_bound(F: CyclotomicField) -> float:
    """(4/pi)^r2 * n!/n^n * sqrt|d|, rounded up at the sixth decimal."""
    require_prime_conductor(F)
    n = F.degree
    r2 = n // 2
    d = abs(F.discriminant)
    logb = r2 * log(4 / pi) + lgamma(n + 1) - n * log(n) + 0.5 * log(d)
    return ceil(exp(logb) * 1e6 * (1 + 1e-12)) / 1e6
