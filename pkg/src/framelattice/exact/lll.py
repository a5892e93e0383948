"""Exact LLL reduction of a positive definite rational Gram matrix."""

from __future__ import annotations

from gmpy2 import mpq

from .linalg import ldl_decompose
from .matrix import matmul, transpose

DEFAULT_DELTA = mpq(3, 4)


def _round(x: mpq) -> int:
    """Nearest integer, halves rounded up."""
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def lll_reduce(gram, delta=DEFAULT_DELTA):
    """Return ``(reduced_gram, U)`` with ``reduced_gram == U^T gram U`` and ``U`` unimodular.

    The columns of ``U`` are the reduced basis vectors expressed in the input
    basis.  The result is size reduced (``|mu| <= 1/2``) and satisfies the
    Lovasz condition with parameter ``delta``.
    """
    delta = mpq(delta)
    if not (mpq(1, 4) < delta < 1):
        raise ValueError("delta must lie in (1/4, 1)")
    ldl_decompose(gram)  # rejects non-PD input
    n = len(gram)
    G = [[mpq(x) for x in row] for row in gram]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # row t = basis vector t
    if n <= 1:
        return G, transpose(U)
    mu = [[mpq(0)] * n for _ in range(n)]
    B = [mpq(0)] * n
    B[0] = G[0][0]

    def red(k, l):
        if 2 * abs(mu[k][l]) <= 1:
            return
        q = _round(mu[k][l])
        # b_k -= q b_l, applied to the Gram as a congruence
        for j in range(n):
            G[k][j] -= q * G[l][j]
        for i in range(n):
            G[i][k] -= q * G[i][l]
        U[k] = [a - q * b for a, b in zip(U[k], U[l])]
        mu[k][l] -= q
        for i in range(l):
            mu[k][i] -= q * mu[l][i]

    def swap(k, kmax):
        G[k], G[k - 1] = G[k - 1], G[k]
        for row in G:
            row[k], row[k - 1] = row[k - 1], row[k]
        U[k], U[k - 1] = U[k - 1], U[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        m = mu[k][k - 1]
        Bn = B[k] + m * m * B[k - 1]
        mu[k][k - 1] = m * B[k - 1] / Bn
        B[k] = B[k - 1] * B[k] / Bn
        B[k - 1] = Bn
        for i in range(k + 1, kmax + 1):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k):
                s = G[k][j]
                for i in range(j):
                    s -= mu[j][i] * mu[k][i] * B[i]
                mu[k][j] = s / B[j]
            s = G[k][k]
            for j in range(k):
                s -= mu[k][j] * mu[k][j] * B[j]
            B[k] = s
        red(k, k - 1)
        if B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    Ucols = transpose([[mpq(x) for x in row] for row in U])
    reduced = matmul(matmul(transpose(Ucols), gram), Ucols)
    return reduced, [[int(x) for x in row] for row in Ucols]


def is_lll_reduced(gram, delta=DEFAULT_DELTA) -> bool:
    """Check size reduction and the Lovasz condition directly from the Gram."""
    n = len(gram)
    L, D = ldl_decompose(gram)
    for i in range(n):
        for j in range(i):
            if 2 * abs(L[i][j]) > 1:
                return False
    for k in range(1, n):
        m = L[k][k - 1]
        if D[k] < (mpq(delta) - m * m) * D[k - 1]:
            return False
    return True
