"""Dense exact matrices as lists of row lists.

Entries are ``mpq`` or :class:`QuadScalar`.  Integer and rational products go
through numpy (int64 when the bound allows it, Python ints otherwise) after
clearing denominators, so the results stay exact.
"""

from __future__ import annotations

import math

import numpy as np
from gmpy2 import mpq

from .scalars import FieldMismatch, QuadScalar, as_rational, is_rational_value

_INT64_SAFE = 2**62


def zeros(rows: int, cols: int, value=None):
    z = mpq(0) if value is None else value
    return [[z] * cols for _ in range(rows)]


def identity(n: int):
    return [[mpq(1) if i == j else mpq(0) for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def shape(A) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def is_symmetric(A) -> bool:
    n = len(A)
    return all(len(row) == n for row in A) and all(
        A[i][j] == A[j][i] for i in range(n) for j in range(i + 1, n)
    )


def is_rational_matrix(A) -> bool:
    return all(is_rational_value(x) for row in A for x in row)


def to_rational(A):
    return [[as_rational(x) for x in row] for row in A]


def field_of(A) -> int:
    """Common ``d`` of the irrational entries (0 when all entries are rational)."""
    d = 0
    for row in A:
        for x in row:
            if isinstance(x, QuadScalar) and x.b != 0:
                if d and x.d != d:
                    raise FieldMismatch(f"mixed fields sqrt({d}) and sqrt({x.d})")
                d = x.d
    return d


def denominator_lcm(A) -> int:
    den = 1
    for row in A:
        for x in row:
            den = math.lcm(den, int(as_rational(x).denominator))
    return den


def scaled_integer(A) -> tuple[list[list[int]], int]:
    """Return ``(N, D)`` with ``A == N / D`` and ``N`` an integer matrix."""
    D = denominator_lcm(A)
    return [[int(as_rational(x) * D) for x in row] for row in A], D


def _as_array(N):
    bound = max((abs(x) for row in N for x in row), default=0)
    return np.array(N, dtype=object), bound


def int_matmul(A, B) -> list[list[int]]:
    """Exact product of two integer matrices."""
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    a, ba = _as_array(A)
    b, bb = _as_array(B)
    inner = len(B)
    if ba * bb * max(inner, 1) < _INT64_SAFE:
        prod = a.astype(np.int64) @ b.astype(np.int64)
        return [[int(x) for x in row] for row in prod]
    prod = a @ b
    return [[int(x) for x in row] for row in prod]


def matmul(A, B):
    """Exact product; rational inputs take the integer fast path."""
    if not A:
        return []
    if is_rational_matrix(A) and is_rational_matrix(B):
        NA, DA = scaled_integer(A)
        NB, DB = scaled_integer(B)
        P = int_matmul(NA, NB)
        D = DA * DB
        return [[mpq(x, D) for x in row] for row in P]
    cols = len(B[0]) if B else 0
    Bt = transpose(B)
    out = []
    for row in A:
        out.append([_dot(row, col) for col in Bt] if cols else [])
    return out


def _dot(u, v):
    acc = mpq(0)
    for x, y in zip(u, v):
        if x != 0 and y != 0:
            acc = acc + x * y
    return acc


def matvec(A, v):
    return [_dot(row, v) for row in A]


def scale(A, c):
    return [[c * x for x in row] for row in A]


def add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(A, B):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def equal(A, B) -> bool:
    return shape(A) == shape(B) and all(
        x == y for ra, rb in zip(A, B) for x, y in zip(ra, rb)
    )


def trace(A):
    acc = mpq(0)
    for i in range(len(A)):
        acc = acc + A[i][i]
    return acc


def submatrix(A, rows, cols):
    return [[A[i][j] for j in cols] for i in rows]


def columns(A, cols):
    return [[row[j] for j in cols] for row in A]


def quadratic_form(M, a) -> object:
    """``<M a, a>`` for an integer vector ``a``."""
    n = len(M)
    if len(a) != n:
        raise ValueError(f"dimension mismatch: form of size {n}, vector of length {len(a)}")
    acc = mpq(0)
    support = [i for i in range(n) if a[i] != 0]
    for i in support:
        row = M[i]
        s = mpq(0)
        for j in support:
            s = s + row[j] * a[j]
        acc = acc + s * a[i]
    return acc


def int_det(N) -> int:
    """Determinant of an integer matrix by Bareiss elimination."""
    n = len(N)
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in N]
    sgn = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sgn = -sgn
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sgn * A[n - 1][n - 1]


def det(A):
    """Exact determinant of a rational square matrix."""
    N, D = scaled_integer(A)
    return mpq(int_det(N), D ** len(A))


def format_matrix(A) -> str:
    from .scalars import format_scalar

    return "\n".join(" ".join(format_scalar(x) for x in row) for row in A)
