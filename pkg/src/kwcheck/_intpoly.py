"""Dense integer polynomial kernels.

Polynomials are lists of Python ints in ascending order of degree. These
helpers sit underneath the cyclotomic arithmetic and never allocate
rationals: callers carry a single common denominator separately.
"""

from __future__ import annotations

from math import gcd

_KRONECKER_MIN = 24


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def content(a) -> int:
    g = 0
    for c in a:
        if c:
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


def _pack(a: list[int], bits: int) -> int:
    v = 0
    for c in reversed(a):
        v = (v << bits) + c
    return v


def _unpack(v: int, bits: int, count: int) -> list[int]:
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    full = 1 << bits
    out = [0] * count
    for i in range(count):
        c = v & mask
        v >>= bits
        if c >= half:
            c -= full
            v += 1
        out[i] = c
    return out


def mul(a: list[int], b: list[int]) -> list[int]:
    """Product of two integer polynomials.

    Short inputs use schoolbook multiplication; long ones go through
    Kronecker substitution so the work happens inside one big-int product.
    """
    if not a or not b:
        return []
    la, lb = len(a), len(b)
    if min(la, lb) < _KRONECKER_MIN:
        out = [0] * (la + lb - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    bits = ma.bit_length() + mb.bit_length() + min(la, lb).bit_length() + 2
    prod = _pack(a, bits) * _pack(b, bits)
    return _unpack(prod, bits, la + lb - 1)


def fold_mod_xm1(a: list[int], m: int) -> list[int]:
    """Reduce modulo x^m - 1."""
    if len(a) <= m:
        return list(a) + [0] * (m - len(a))
    out = [0] * m
    for i, c in enumerate(a):
        if c:
            out[i % m] += c
    return out


def reduce_monic(a: list[int], modulus: list[int]) -> list[int]:
    """Remainder of ``a`` by a monic integer polynomial, padded to its degree.

    Only the nonzero lower coefficients of the modulus are touched, which
    matters for sparse cyclotomic polynomials.
    """
    n = len(modulus) - 1
    r = list(a)
    if len(r) < n:
        return r + [0] * (n - len(r))
    support = [(j, c) for j, c in enumerate(modulus[:n]) if c]
    for i in range(len(r) - 1, n - 1, -1):
        c = r[i]
        if c:
            base = i - n
            for j, mc in support:
                r[base + j] -= c * mc
    del r[n:]
    return r


def divmod_poly(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Exact division by a monic (or unit-leading) integer polynomial."""
    b = trim(list(b))
    lead = b[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have leading coefficient +-1")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], trim(r)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] * lead
        if c:
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] -= c * b[j]
    return trim(q), trim(r[:db])


def evaluate_mod(a, x: int, modulus: int) -> int:
    v = 0
    for c in reversed(a):
        v = (v * x + c) % modulus
    return v


def derivative(a: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(a)][1:]
