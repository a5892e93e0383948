"""Exact row reduction, solving, and LDL^T factorisation over Q or Q(sqrt d)."""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .scalars import QuadScalar, sign


class Inconsistent(ValueError):
    """The linear system ``M x = B`` has no solution."""


class NotPositiveDefinite(ValueError):
    def __init__(self, index: int, pivot):
        super().__init__(f"leading minor {index + 1} is not positive (pivot {pivot})")
        self.index = index
        self.pivot = pivot


@dataclass
class RankSolution:
    rank: int
    pivots: list[int]
    rref: list[list] = field(repr=False)
    nullspace: list[list]
    particular: list | None = None
    consistent: bool = True


def _is_zero(x) -> bool:
    return x == 0


def _exact(x):
    """Integers become rationals so that division stays exact; floats are refused."""
    if isinstance(x, float):
        raise TypeError("floating-point entries are not allowed")
    return x if isinstance(x, QuadScalar) else mpq(x)


def row_reduce(M, augment=None):
    """Gauss-Jordan elimination.

    Returns ``(rref_rows, pivots, aug_rows)`` where the first ``len(pivots)``
    rows are the nonzero reduced rows.  Pivots are taken left to right, the
    first nonzero entry in each column winning.
    """
    rows = [[_exact(x) for x in r] for r in M]
    aug = [[_exact(x) for x in r] for r in augment] if augment is not None else None
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if not _is_zero(rows[i][c])), None)
        if p is None:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
            if aug is not None:
                aug[p], aug[r] = aug[r], aug[p]
        piv = rows[r][c]
        if piv != 1:
            inv = 1 / piv
            rows[r] = [x * inv if not _is_zero(x) else x for x in rows[r]]
            if aug is not None:
                aug[r] = [x * inv if not _is_zero(x) else x for x in aug[r]]
        prow = rows[r]
        nz = [j for j in range(c, ncols) if not _is_zero(prow[j])]
        arow = aug[r] if aug is not None else None
        anz = [j for j in range(len(arow)) if not _is_zero(arow[j])] if arow is not None else []
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if _is_zero(f):
                continue
            ri = rows[i]
            for j in nz:
                ri[j] = ri[j] - f * prow[j]
            if arow is not None:
                ai = aug[i]
                for j in anz:
                    ai[j] = ai[j] - f * arow[j]
        pivots.append(c)
        r += 1
    return rows, pivots, aug


def rank(M) -> int:
    return len(row_reduce(M)[1])


def nullspace_from_rref(rref, pivots, ncols):
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [mpq(0)] * ncols
        v[free] = mpq(1)
        for i, p in enumerate(pivots):
            v[p] = -rref[i][free]
        basis.append(v)
    return basis


def rank_solve(M, B=None) -> RankSolution:
    """Rank, nullspace basis, and (if ``B`` given) the affine solution set of ``M x = B``.

    ``B`` may be a vector (one right-hand side) or a matrix with one column per
    right-hand side.  An inconsistent system comes back with ``consistent=False``
    and ``particular=None``; it is never reported through ``rank``.
    """
    ncols = len(M[0]) if M else 0
    vector_rhs = False
    aug = None
    if B is not None:
        if B and not isinstance(B[0], (list, tuple)):
            vector_rhs = True
            aug = [[b] for b in B]
        else:
            aug = [list(r) for r in B]
        if len(aug) != len(M):
            raise ValueError("right-hand side has the wrong number of rows")
    rref, pivots, aug = row_reduce(M, aug)
    rk = len(pivots)
    null = nullspace_from_rref(rref, pivots, ncols)
    sol = RankSolution(rk, pivots, rref[:rk], null)
    if aug is None:
        return sol
    width = len(aug[0]) if aug else 0
    for i in range(rk, len(aug)):
        if any(not _is_zero(x) for x in aug[i]):
            sol.consistent = False
            return sol
    part = [[mpq(0)] * width for _ in range(ncols)]
    for i, p in enumerate(pivots):
        part[p] = list(aug[i])
    sol.particular = [row[0] for row in part] if vector_rhs else part
    return sol


def solve(M, b):
    """One solution of ``M x = b``; raises :class:`Inconsistent`."""
    sol = rank_solve(M, b)
    if not sol.consistent:
        raise Inconsistent("system has no solution")
    return sol.particular


def inverse(M):
    n = len(M)
    eye = [[mpq(1) if i == j else mpq(0) for j in range(n)] for i in range(n)]
    rref, pivots, aug = row_reduce(M, eye)
    if len(pivots) != n:
        raise ZeroDivisionError("matrix is singular")
    return aug


def ldl_decompose(G):
    """``G = L D L^T`` with unit lower-triangular ``L`` and positive diagonal ``D``.

    Raises :class:`NotPositiveDefinite` naming the first failing leading minor.
    """
    n = len(G)
    L = [[mpq(1) if i == j else mpq(0) for j in range(n)] for i in range(n)]
    D = [mpq(0)] * n
    for j in range(n):
        s = G[j][j]
        for t in range(j):
            if not _is_zero(L[j][t]):
                s = s - L[j][t] * L[j][t] * D[t]
        if sign(s) <= 0:
            raise NotPositiveDefinite(j, s)
        D[j] = s
        for i in range(j + 1, n):
            s = G[i][j]
            for t in range(j):
                if not _is_zero(L[i][t]) and not _is_zero(L[j][t]):
                    s = s - L[i][t] * L[j][t] * D[t]
            L[i][j] = s / D[j]
    return L, D


def is_positive_definite(G) -> bool:
    try:
        ldl_decompose(G)
    except NotPositiveDefinite:
        return False
    return True
