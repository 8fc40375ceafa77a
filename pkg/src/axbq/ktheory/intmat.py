"""Exact integer matrix routines built on the Smith normal form.

Matrices are lists of rows of Python ints.  Nothing here touches floats.
"""
from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]

__all__ = [
    "Matrix",
    "zeros",
    "identity",
    "matmul",
    "matvec",
    "transpose",
    "smith_normal_form",
    "invariant_factors",
    "rank",
    "integer_kernel",
    "solve_integer",
    "lattice_basis",
    "determinant",
]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        acc = out[i]
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += x * bk[j]
    return out


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*a)]


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None):
    """Return (D, U, V) with U*M*V = D diagonal, d_1 | d_2 | ..., d_i >= 0.

    U and V are unimodular.  `ncols` is needed only for matrices with no rows.
    """
    rows = len(m)
    cols = len(m[0]) if rows else (ncols or 0)
    A = [list(map(int, r)) for r in m]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst -= q * row src
        if q:
            A[dst] = [x - q * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in A:
                row[dst] -= q * row[src]
            for row in V:
                row[dst] -= q * row[src]

    t = 0
    while t < min(rows, cols):
        # smallest nonzero entry of the remaining block as pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the whole remaining block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                add_row(t, bad[0], -1)
                continue
            # move the smallest remainder into the pivot position
            best = None
            for i in range(t, rows):
                if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, cols):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            swap_rows(t, best[1])
            swap_cols(t, best[2])
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith form, min(rows, cols) entries, zeros last."""
    if not m:
        return []
    D, _, _ = smith_normal_form(m)
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def rank(m: Sequence[Sequence[int]]) -> int:
    return sum(1 for d in invariant_factors(m) if d)


def integer_kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis of {x in Z^n : M x = 0}, one basis vector per returned row."""
    cols = len(m[0]) if m else (ncols or 0)
    if not m:
        return identity(cols)
    D, _, V = smith_normal_form(m)
    r = sum(1 for i in range(min(len(D), cols)) if D[i][i])
    return [[V[i][j] for i in range(cols)] for j in range(r, cols)]


def solve_integer(m: Sequence[Sequence[int]], b: Sequence[int], ncols: int | None = None):
    """An integer x with M x = b, or None."""
    cols = len(m[0]) if m else (ncols or 0)
    if not m:
        return [0] * cols if not any(b) else None
    D, U, V = smith_normal_form(m)
    c = matvec(U, b)
    y = [0] * cols
    for i, ci in enumerate(c):
        d = D[i][i] if i < cols else 0
        if d == 0:
            if ci:
                return None
        else:
            if ci % d:
                return None
            y[i] = ci // d
    return matvec(V, y)


def lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> Matrix:
    """Basis (as rows) of the lattice spanned by the given vectors in Z^dim."""
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return []
    # rows of D*V^-1 span the same lattice as the rows of U*M = D*V^-1
    D, U, V = smith_normal_form(vecs)
    UM = matmul(U, vecs)
    return [row for row in UM if any(row)]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    A = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]
