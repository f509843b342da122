"""Exact lattice reduction and short-vector enumeration.

LLL runs entirely in integers (the integral variant of de Weger / Cohen),
so nothing here depends on floating-point luck. Enumeration uses floats
only to propose candidates; callers verify every hit exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import numpy as np


def _round_div(a: int, b: int) -> int:
    # nearest integer to a/b for b > 0
    return (2 * a + b) // (2 * b)


def lll_gram(gram: list[list[int]], delta: Fraction = Fraction(99, 100)) -> tuple[list[list[int]], list[list[int]]]:
    """LLL-reduce a positive definite integer Gram matrix.

    Returns ``(transform, reduced_gram)`` where the rows of ``transform``
    express the reduced basis in terms of the input basis.
    """
    n = len(gram)
    G = [list(map(int, row)) for row in gram]
    H = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0:
        return H, G
    num, den = delta.numerator, delta.denominator
    d = [0] * (n + 1)
    d[0] = 1
    lam = [[0] * n for _ in range(n)]
    d[1] = G[0][0]
    if d[1] <= 0:
        raise ValueError("Gram matrix is not positive definite")

    def gso_row(k: int) -> None:
        for j in range(k + 1):
            u = G[k][j]
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                if u <= 0:
                    raise ValueError("Gram matrix is not positive definite")
                d[k + 1] = u

    def red(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) <= d[l + 1]:
            return
        q = _round_div(lam[k][l], d[l + 1])
        Hk, Hl = H[k], H[l]
        for j in range(n):
            Hk[j] -= q * Hl[j]
        Gk, Gl = G[k], G[l]
        for j in range(n):
            Gk[j] -= q * Gl[j]
        Gk[k] -= q * Gk[l]
        for j in range(n):
            G[j][k] = Gk[j]
        lam[k][l] -= q * d[l + 1]
        lk, ll = lam[k], lam[l]
        for i in range(l):
            lk[i] -= q * ll[i]

    def swap(k: int, kmax: int) -> None:
        H[k], H[k - 1] = H[k - 1], H[k]
        G[k], G[k - 1] = G[k - 1], G[k]
        for row in G:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + lm * lm) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lm * t) // d[k]
            lam[i][k - 1] = (B * t + lm * lam[i][k]) // d[k + 1]
        d[k] = B

    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gso_row(k)
        red(k, k - 1)
        lhs = den * d[k + 1] * d[k - 1]
        rhs = num * d[k] * d[k] - den * lam[k][k - 1] ** 2
        if lhs < rhs:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return H, G


def lll_rows(basis: list[list[int]], delta: Fraction = Fraction(99, 100)) -> list[list[int]]:
    """LLL-reduce a list of integer row vectors under the standard inner product."""
    gram = [[sum(x * y for x, y in zip(u, v)) for v in basis] for u in basis]
    H, _ = lll_gram(gram, delta)
    return apply_transform(H, basis)


def apply_transform(H: list[list[int]], basis: list[list[int]]) -> list[list[int]]:
    dim = len(basis[0]) if basis else 0
    out = []
    for row in H:
        v = [0] * dim
        for c, b in zip(row, basis):
            if c:
                for j in range(dim):
                    v[j] += c * b[j]
        out.append(v)
    return out


def babai_nearest_plane(basis: list[list[int]], target: list[int]) -> list[int]:
    """Exact Babai rounding; returns the lattice vector it selects."""
    n = len(basis)
    star: list[list[Fraction]] = []
    norms: list[Fraction] = []
    for i in range(n):
        v = [Fraction(x) for x in basis[i]]
        for j in range(i):
            if norms[j]:
                mu = sum(a * b for a, b in zip(basis[i], star[j])) / norms[j]
                v = [a - mu * b for a, b in zip(v, star[j])]
        star.append(v)
        norms.append(sum(a * a for a in v))
    t = list(map(int, target))
    w = [0] * len(t)
    for i in range(n - 1, -1, -1):
        c = sum(a * b for a, b in zip(t, star[i])) / norms[i]
        q = round(c)
        if q:
            t = [a - q * b for a, b in zip(t, basis[i])]
            w = [a + q * b for a, b in zip(w, basis[i])]
    return w


def short_vectors(gram, bound: float, limit: int = 100000):
    """Yield integer vectors x != 0 (one of each +-x pair) with x^T G x <= bound.

    Fincke-Pohst enumeration on the float Cholesky data of ``gram``. The
    float form only steers the search; callers must re-check exactly.
    """
    A = np.array(gram, dtype=float)
    n = A.shape[0]
    # q[i][i] and q[i][j] (j > i) from Cohen's Algorithm 2.7.5
    q = A.copy()
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    diag = [q[i][i] for i in range(n)]
    if min(diag) <= 0:
        raise ValueError("Gram matrix is not positive definite")
    count = 0
    x = [0] * n
    T = [0.0] * n
    U = [0.0] * n
    UB = [0.0] * n
    eps = 1e-9 * max(1.0, bound)

    i = n - 1
    T[i] = bound + eps
    U[i] = 0.0

    def set_bounds(i: int) -> None:
        z = (T[i] / diag[i]) ** 0.5 if T[i] > 0 else 0.0
        UB[i] = np.floor(z - U[i])
        x[i] = int(np.ceil(-z - U[i])) - 1

    set_bounds(i)
    while True:
        x[i] += 1
        if x[i] > UB[i]:
            i += 1
            if i >= n:
                return
            continue
        if i > 0:
            t = x[i] + U[i]
            T[i - 1] = T[i] - diag[i] * t * t
            i -= 1
            U[i] = sum(q[i][j] * x[j] for j in range(i + 1, n))
            set_bounds(i)
            continue
        if all(v == 0 for v in x):
            return
        # everything visited before the zero vector has a negative last
        # nonzero coordinate, so negating gives one representative per pair
        yield [-v for v in x]
        count += 1
        if count >= limit:
            return


def integer_sqrt_ceil(v: int) -> int:
    r = isqrt(v)
    return r if r * r == v else r + 1
