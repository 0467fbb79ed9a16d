"""Exact integer matrices as tuples of row tuples."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(k: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(k)) for i in range(k))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def vecmat(v: Sequence[int], M: Matrix, cols: int | None = None) -> Vector:
    """Row vector times matrix.  ``cols`` is needed when M has no rows."""
    if cols is None:
        cols = len(M[0]) if M else 0
    if len(v) != len(M):
        raise ValueError(f"cannot multiply length {len(v)} vector by {len(M)}-row matrix")
    out = [0] * cols
    for x, row in zip(v, M):
        if x:
            for j in range(cols):
                out[j] += x * row[j]
    return tuple(out)


def matmul(A: Matrix, B: Matrix, cols: int | None = None) -> Matrix:
    if cols is None:
        cols = len(B[0]) if B else 0
    return tuple(vecmat(row, B, cols) for row in A)


def add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(A, B))


def neg(A: Matrix) -> Matrix:
    return tuple(tuple(-x for x in r) for r in A)


def det(M: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    k = len(M)
    if k == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for i in range(k - 1):
        if A[i][i] == 0:
            for r in range(i + 1, k):
                if A[r][i] != 0:
                    A[i], A[r] = A[r], A[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                A[r][c] = (A[r][c] * A[i][i] - A[r][i] * A[i][c]) // prev
        prev = A[i][i]
    return sign * A[k - 1][k - 1]


def inverse_unimodular(M: Matrix) -> Matrix:
    k = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)]
         for i, row in enumerate(M)]
    for c in range(k):
        pivot = next((r for r in range(c, k) if A[r][c] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        A[c], A[pivot] = A[pivot], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for r in range(k):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    inv = [row[k:] for row in A]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t
