"""Integer lattice kernels: column Hermite reduction with unimodular transforms,
saturated integer kernels and unimodular completion."""

from __future__ import annotations

import math

from gmpy2 import mpq

from .linalg import row_reduce
from .matrix import denominator_lcm


class NotSaturated(ValueError):
    """The columns do not span a primitive sublattice (the quotient has torsion)."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class ColumnHermite:
    """Column-style Hermite reduction ``A V = H`` of an integer ``r x n`` matrix.

    ``V`` is unimodular and ``Vinv`` is maintained alongside it.  ``H`` is in
    column echelon form: row ``pivot_rows[t]`` has its leading positive entry in
    column ``t`` and zeros to the right, with entries left of a pivot reduced
    into ``[0, pivot)``.
    """

    def __init__(self, A):
        self.r = len(A)
        self.n = len(A[0]) if A else 0
        n = self.n
        # columns of A and V are stored as lists (column-major); Vinv row-major
        self.cols = [[int(A[i][j]) for i in range(self.r)] for j in range(n)]
        self.vcols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
        self.vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        self.pivot_rows: list[int] = []
        self._reduce()

    # elementary operations ------------------------------------------------
    def _combine(self, p: int, j: int, x: int, y: int, u: int, v: int):
        """Replace columns ``(p, j)`` by ``(x*p + y*j, u*p + v*j)``; needs ``x*v - y*u == 1``."""
        for store in (self.cols, self.vcols):
            cp, cj = store[p], store[j]
            store[p] = [x * s + y * t for s, t in zip(cp, cj)]
            store[j] = [u * s + v * t for s, t in zip(cp, cj)]
        # rows of Vinv transform by the inverse [[v, -u], [-y, x]]
        rp, rj = self.vinv[p], self.vinv[j]
        self.vinv[p] = [v * s - u * t for s, t in zip(rp, rj)]
        self.vinv[j] = [-y * s + x * t for s, t in zip(rp, rj)]

    def _addmul(self, j: int, p: int, q: int):
        """Column ``j`` -= ``q`` * column ``p``."""
        if q == 0:
            return
        for store in (self.cols, self.vcols):
            cp = store[p]
            store[j] = [s - q * t for s, t in zip(store[j], cp)]
        rp = self.vinv[p]
        self.vinv[p] = [s + q * t for s, t in zip(rp, self.vinv[j])]

    def _negate(self, p: int):
        self.cols[p] = [-s for s in self.cols[p]]
        self.vcols[p] = [-s for s in self.vcols[p]]
        self.vinv[p] = [-s for s in self.vinv[p]]

    def _reduce(self):
        col = 0
        for i in range(self.r):
            if col == self.n:
                break
            # clear row i right of the pivot column; smallest |entry| leads
            nz = [j for j in range(col, self.n) if self.cols[j][i] != 0]
            if not nz:
                continue
            lead = min(nz, key=lambda j: (abs(self.cols[j][i]), j))
            if lead != col:
                self.cols[lead], self.cols[col] = self.cols[col], self.cols[lead]
                self.vcols[lead], self.vcols[col] = self.vcols[col], self.vcols[lead]
                self.vinv[lead], self.vinv[col] = self.vinv[col], self.vinv[lead]
            for j in range(col + 1, self.n):
                b = self.cols[j][i]
                if b == 0:
                    continue
                a = self.cols[col][i]
                if b % a == 0:
                    self._addmul(j, col, b // a)
                    continue
                g, x, y = xgcd(a, b)
                self._combine(col, j, x, y, -b // g, a // g)
            if self.cols[col][i] < 0:
                self._negate(col)
            piv = self.cols[col][i]
            for t in range(col):
                q = self.cols[t][i] // piv
                self._addmul(t, col, q)
            self.pivot_rows.append(i)
            col += 1

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def H(self):
        return [[self.cols[j][i] for j in range(self.n)] for i in range(self.r)]

    def V(self):
        return [[self.vcols[j][i] for j in range(self.n)] for i in range(self.n)]

    def Vinv(self):
        return [list(row) for row in self.vinv]


def _integer_rows(rows):
    """Scale each rational row to a primitive integer row."""
    out = []
    for row in rows:
        den = denominator_lcm([row])
        ints = [int(mpq(x) * den) for x in row]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def kernel_and_complement(M):
    """Split ``Z^n`` along ``ker(M)`` for a rational matrix ``M``.

    Returns ``(K, W, C)``: ``K`` is a saturated basis of ``ker(M) & Z^n`` (list
    of n-vectors), ``W`` (list of n-vectors) completes it to a basis of
    ``Z^n``, and ``C`` is the ``len(W) x n`` integer matrix with
    ``e_i == sum_t C[t][i] W[t] (mod ker M)``.
    """
    n = len(M[0]) if M else 0
    rref, pivots, _ = row_reduce(M)
    A = _integer_rows(rref[: len(pivots)])
    if not A:
        eye = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
        return eye, [], []
    ch = ColumnHermite(A)
    r = ch.rank
    K = [list(ch.vcols[j]) for j in range(r, n)]
    W = [list(ch.vcols[j]) for j in range(r)]
    C = [list(ch.vinv[t]) for t in range(r)]
    return K, W, C


def integer_kernel(M):
    """Saturated Z-basis (list of integer n-vectors) of ``{a in Z^n : M a = 0}``."""
    return kernel_and_complement(M)[0]


def hnf_complete(K, n: int):
    """Unimodular ``U`` (n x n, rows as lists) whose first ``len(K)`` columns are ``K``.

    ``K`` is a list of saturated, linearly independent integer n-vectors.
    """
    r = len(K)
    if r == 0:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for v in K:
        if len(v) != n:
            raise ValueError("vector length differs from n")
    ch = ColumnHermite(K)  # rows of the reduced matrix are the vectors of K
    if ch.rank != r:
        raise ValueError("vectors are linearly dependent")
    det_h = 1
    for t, i in enumerate(ch.pivot_rows):
        det_h *= ch.cols[t][i]
    if abs(det_h) != 1:
        raise NotSaturated(f"index {abs(det_h)} sublattice is not saturated")
    # U = [K | rows r.. of Vinv, transposed]
    cols = [list(v) for v in K] + [list(ch.vinv[t]) for t in range(r, n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def is_saturated(K, n: int) -> bool:
    try:
        hnf_complete(K, n)
    except (NotSaturated, ValueError):
        return False
    return True
