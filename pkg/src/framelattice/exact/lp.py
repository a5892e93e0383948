"""Exact two-phase simplex (Bland's rule) and a nonnegative-solution classifier."""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .linalg import row_reduce

INFEASIBLE = "infeasible"
BOUNDARY = "feasible_boundary"
STRICT = "feasible_strict"


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list | None = None
    value: mpq | None = None


def _pivot(T, basis, r, c):
    prow = T[r]
    inv = 1 / prow[c]
    if inv != 1:
        T[r] = prow = [x * inv if x != 0 else x for x in prow]
    nz = [j for j, x in enumerate(prow) if x != 0]
    for i, row in enumerate(T):
        if i == r:
            continue
        f = row[c]
        if f == 0:
            continue
        for j in nz:
            row[j] -= f * prow[j]
    basis[r] = c


def _run(T, basis, cost, allowed):
    """Maximise ``cost . x`` on tableau ``T`` (last column = rhs) with Bland's rule."""
    m = len(T)
    while True:
        # reduced costs r_j = c_j - c_B . T[:, j]
        enter = None
        for j in allowed:
            if j in basis:
                continue
            rj = cost[j]
            for i in range(m):
                if T[i][j] != 0:
                    rj -= cost[basis[i]] * T[i][j]
            if rj > 0:
                enter = j
                break
        if enter is None:
            return "optimal"
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return "unbounded"
        _pivot(T, basis, leave, enter)


def simplex_max(A, b, c) -> LPResult:
    """Maximise ``c.x`` subject to ``A x = b``, ``x >= 0`` in exact arithmetic."""
    m = len(A)
    n = len(c)
    if any(len(row) != n for row in A) or len(b) != m:
        raise ValueError("dimension mismatch")
    rows = []
    for row, bi in zip(A, b):
        row = [mpq(x) for x in row]
        bi = mpq(bi)
        if bi < 0:
            row, bi = [-x for x in row], -bi
        rows.append((row, bi))
    # phase 1: artificials n..n+m-1
    T = [row + [mpq(1) if k == i else mpq(0) for k in range(m)] + [bi] for i, (row, bi) in enumerate(rows)]
    basis = list(range(n, n + m))
    cost1 = [mpq(0)] * n + [mpq(-1)] * m
    _run(T, basis, cost1, range(n + m))
    if any(T[i][-1] != 0 for i in range(m) if basis[i] >= n):
        return LPResult("infeasible")
    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, j)
        i += 1
    T = [row[:n] + [row[-1]] for row in T]
    cost = [mpq(x) for x in c]
    status = _run(T, basis, cost, range(n))
    if status == "unbounded":
        return LPResult("unbounded")
    x = [mpq(0)] * n
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    value = sum((cost[j] * x[j] for j in range(n)), mpq(0))
    return LPResult("optimal", x, value)


@dataclass
class NonnegClassification:
    status: str
    witness: list | None
    t: mpq | None


def lp_classify_nonneg(A, b) -> NonnegClassification:
    """Decide whether ``A c = b`` has a solution with ``c >= 0`` and with ``c > 0``.

    Strictness is settled by maximising ``t`` subject to ``A c = b``,
    ``c_i >= t``, with ``t`` capped at 1.  The witness always satisfies
    ``A c = b`` exactly.
    """
    m = len(A)
    if len(b) != m:
        raise ValueError("dimension mismatch")
    n = len(A[0]) if A else 0
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    if m == 0:
        return NonnegClassification(STRICT, [mpq(1)] * n, mpq(1))
    # keep an independent set of rows; an inconsistent system is infeasible
    rref, pivots, aug = row_reduce(A, [[mpq(x)] for x in b])
    r = len(pivots)
    if any(aug[i][0] != 0 for i in range(r, m)):
        return NonnegClassification(INFEASIBLE, None, None)
    A2 = [list(rref[i]) for i in range(r)]
    b2 = [aug[i][0] for i in range(r)]
    # variables: c' (n), t, s  with c = c' + t*1 and t + s = 1
    rowsum = [sum(row, mpq(0)) for row in A2]
    Alp = [row + [rs, mpq(0)] for row, rs in zip(A2, rowsum)]
    Alp.append([mpq(0)] * n + [mpq(1), mpq(1)])
    blp = b2 + [mpq(1)]
    cost = [mpq(0)] * n + [mpq(1), mpq(0)]
    res = simplex_max(Alp, blp, cost)
    if res.status != "optimal":
        return NonnegClassification(INFEASIBLE, None, None)
    t = res.x[n]
    c = [res.x[j] + t for j in range(n)]
    return NonnegClassification(STRICT if t > 0 else BOUNDARY, c, t)
