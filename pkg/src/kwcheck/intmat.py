"""Hermite and Smith normal forms over Z.

Lattices are handled as lists of integer vectors. ``hnf_mod`` is the
workhorse for ideals: it needs a multiple of the lattice determinant and
keeps every entry reduced, so products of large ideals stay cheap.
"""

from __future__ import annotations


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(u, v, d) with u*a + v*b = d = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -x0, -y0, -a
    return x0, y0, a


def hnf_mod(vectors: list[list[int]], n: int, D: int) -> tuple[tuple[int, ...], ...]:
    """Upper-triangular HNF of the lattice spanned by ``vectors`` and D*Z^n.

    The result is a tuple of n basis vectors; basis vector j is zero past
    index j, has a positive entry at j, and every entry i < j lies in
    [0, h_ii). Working modulo D is valid because D*Z^n is part of the
    lattice, so every intermediate vector can be reduced modulo D.
    """
    if D <= 0:
        raise ValueError("modulus must be positive")
    cols = [[c % D for c in v] for v in vectors]
    cols = [c for c in cols if any(c)]
    W: list[list[int] | None] = [None] * n
    for i in range(n - 1, -1, -1):
        active = [c for c in cols if c[i]]
        rest = [c for c in cols if not c[i]]
        pivot = None
        for c in active:
            if pivot is None:
                pivot = c
                continue
            a, b = pivot[i], c[i]
            u, v, d = xgcd(a, b)
            ad, bd = a // d, b // d
            newp = [(u * x + v * y) % D for x, y in zip(pivot, c)]
            other = [(ad * y - bd * x) % D for x, y in zip(pivot, c)]
            pivot = newp
            if any(other):
                rest.append(other)
        if pivot is None:
            w = [0] * n
            w[i] = D
        else:
            # combine with D*e_i: (w, extra) is a unimodular image of (pivot, D*e_i)
            u, _, d = xgcd(pivot[i], D)
            w = [(u * x) % D for x in pivot]
            w[i] = d
            if d != D:
                extra = [((D // d) * x) % D for x in pivot]
                extra[i] = 0
                if any(extra):
                    rest.append(extra)
        for k in range(i + 1, n):
            col = W[k]
            if col[i]:
                q = col[i] // w[i]
                if q:
                    W[k] = [x - q * y for x, y in zip(col, w)]
        W[i] = w
        cols = [c for c in rest if any(c[:i])]
    # normalize: entries above the diagonal in [0, h_ii), zeros below
    basis = [list(w) for w in W]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            h = basis[i][i]
            q = basis[j][i] // h
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return tuple(tuple(c) for c in basis)


def hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style HNF (echelon, positive pivots, reduced above) without modulus.

    Returns the nonzero rows. Pivot choice favours the smallest entry, which
    keeps sparse relation matrices from blowing up.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    out: list[list[int]] = []
    for col in range(ncols):
        cand = [r for r in work if r[col]]
        others = [r for r in work if not r[col]]
        while len(cand) > 1:
            cand.sort(key=lambda r: abs(r[col]))
            piv = cand[0]
            nxt = [piv]
            for r in cand[1:]:
                q = r[col] // piv[col]
                r2 = [x - q * y for x, y in zip(r, piv)]
                if r2[col]:
                    nxt.append(r2)
                elif any(r2):
                    others.append(r2)
            cand = nxt
        if cand:
            piv = cand[0]
            if piv[col] < 0:
                piv = [-x for x in piv]
            out.append(piv)
        work = others
    # reduce entries above pivots; top-down so later pivots clean up what
    # earlier subtractions disturbed
    pivcols = [next(i for i, x in enumerate(r) if x) for r in out]
    for idx in range(len(out)):
        c = pivcols[idx]
        h = out[idx][c]
        for up in range(idx):
            q = out[up][c] // h
            if q:
                out[up] = [x - q * y for x, y in zip(out[up], out[idx])]
    return out


def smith_normal_form(A: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """(U, S, V) with U*A*V = S diagonal, divisibility chain, U and V unimodular.

    Intended for small matrices (the essential part of a class group).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(r) for r in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(M, i, j, a, b, c, d):
        # rows (i, j) <- (a*Ri + b*Rj, c*Ri + d*Rj)
        ri, rj = M[i], M[j]
        M[i] = [a * x + b * y for x, y in zip(ri, rj)]
        M[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def col_op(M, i, j, a, b, c, d):
        for r in M:
            x, y = r[i], r[j]
            r[i] = a * x + b * y
            r[j] = c * x + d * y

    t = 0
    while t < min(m, n):
        # choose smallest nonzero pivot in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        S[t], S[i] = S[i], S[t]
        U[t], U[i] = U[i], U[t]
        for r in S:
            r[t], r[j] = r[j], r[t]
        for r in V:
            r[t], r[j] = r[j], r[t]
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    a, b = S[t][t], S[i][t]
                    if b % a == 0:
                        row_op(S, t, i, 1, 0, -(b // a), 1)
                        row_op(U, t, i, 1, 0, -(b // a), 1)
                        continue
                    u, v, d = xgcd(a, b)
                    row_op(S, t, i, u, v, -b // d, a // d)
                    row_op(U, t, i, u, v, -b // d, a // d)
            for j in range(t + 1, n):
                if S[t][j]:
                    a, b = S[t][t], S[t][j]
                    if b % a == 0:
                        col_op(S, t, j, 1, 0, -(b // a), 1)
                        col_op(V, t, j, 1, 0, -(b // a), 1)
                        continue
                    u, v, d = xgcd(a, b)
                    col_op(S, t, j, u, v, -b // d, a // d)
                    col_op(V, t, j, u, v, -b // d, a // d)
                    done = False
            if any(S[i][t] for i in range(t + 1, m)):
                done = False
                continue
            # enforce divisibility of the rest of the block
            piv = S[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % piv), None)
            if bad is not None:
                i, _ = bad
                row_op(S, t, i, 1, 1, 0, 1)
                row_op(U, t, i, 1, 1, 0, 1)
                done = False
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, S, V


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def inverse_unimodular(M: list[list[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix by Gauss-Jordan over Q."""
    from fractions import Fraction

    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[p] = aug[p], aug[c]
        lead = aug[c][c]
        aug[c] = [x / lead for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = [[int(x) for x in row[n:]] for row in aug]
    assert all(x.denominator == 1 for row in aug for x in row[n:])
    return out
