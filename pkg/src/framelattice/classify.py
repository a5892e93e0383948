"""Eutaxy, perfection, extremality, and the separated-values search on norm-forms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np
from gmpy2 import mpq

from .exact.contfrac import cf_expand
from .exact.linalg import rank_solve
from .exact.lp import BOUNDARY, INFEASIBLE, STRICT, lp_classify_nonneg
from .exact.matrix import field_of, int_matmul, quadratic_form, scaled_integer, transpose
from .exact.scalars import QuadScalar, as_rational
from .lattice import MinimalVectorSet, QuadraticLattice

NOT_WEAK = "NotWeaklyEutactic"
WEAK = "WeaklyEutactic"
SEMI = "SemiEutactic"
EUTACTIC = "Eutactic"
STRONG = "StronglyEutactic"
EUTAXY_ORDER = (NOT_WEAK, WEAK, SEMI, EUTACTIC, STRONG)

DEFAULT_VALUE_BUDGET = 5 * 10**6


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"{count} norm-form values exceed the budget of {budget}")
        self.count = count
        self.budget = budget


# -- norm-form ------------------------------------------------------------------------

def norm_form_eval(M, a):
    """Exact ``<M a, a>``."""
    return quadratic_form(M, a)


def norm_form_values(M, vectors) -> list:
    """``<M a, a>`` for many integer vectors at once (rational ``M``)."""
    N, D = scaled_integer(M)
    A = [list(map(int, v)) for v in vectors]
    if not A:
        return []
    MA = int_matmul(A, N)  # rows: (N a)^T since N is symmetric
    return [mpq(sum(x * y for x, y in zip(r, a)), D) for r, a in zip(MA, A)]


# -- eutaxy -----------------------------------------------------------------------------

@dataclass
class EutaxyReport:
    eutaxy_class: str
    coefficients: list | None  # one per vector of S, in S order
    strong_coefficient: mpq | None = None
    subset_mode: bool = False

    def at_least(self, cls: str) -> bool:
        return EUTAXY_ORDER.index(self.eutaxy_class) >= EUTAXY_ORDER.index(cls)


def _pair_system(S: MinimalVectorSet, L: QuadraticLattice):
    """Rows ``(r, s)``, ``r <= s``: ``sum_p w_p z_p[r] z_p[s] = min * B[r][s]`` with ``z = B y``.

    ``w_p`` is the combined coefficient of the pair ``+-y_p``.  Multiplying the
    unit-sphere identity ``sum c x x^T = I`` by the basis on both sides gives
    this rational system of size ``k(k+1)/2``.
    """
    B = L.basis_gram
    k = L.k
    reps = S.pair_representatives()
    Z = []
    for i in reps:
        y = S.lattice_coords[i]
        Z.append([sum((B[r][t] * y[t] for t in range(k) if y[t]), mpq(0)) for r in range(k)])
    A, rhs = [], []
    for r in range(k):
        for s in range(r, k):
            A.append([z[r] * z[s] for z in Z])
            rhs.append(S.min_norm_sq * B[r][s])
    return reps, A, rhs


def _spread(S: MinimalVectorSet, reps, weights):
    """Split pair weights evenly between a vector and its negative."""
    pos = {S.lattice_coords[i]: w / 2 for i, w in zip(reps, weights)}
    out = []
    for y in S.lattice_coords:
        key = y if y in pos else tuple(-v for v in y)
        out.append(pos[key])
    return out


def eutaxy_classify(S: MinimalVectorSet, M, L: QuadraticLattice) -> EutaxyReport:
    """Classify the minimal vectors ``S`` (negation closed) of ``L``.

    Symmetric witnesses are sought (equal coefficients on ``a`` and ``-a``);
    averaging any witness with its reflection gives one, so nothing is lost.
    """
    if not S.vectors:
        raise ValueError("empty vector set")
    reps, A, rhs = _pair_system(S, L)
    m = len(S.vectors)
    const = mpq(L.k, m)
    if all(sum((2 * const * a for a in row), mpq(0)) == b for row, b in zip(A, rhs)):
        return EutaxyReport(STRONG, [const] * m, const, S.subset_mode)
    sol = rank_solve(A, rhs)
    if not sol.consistent:
        return EutaxyReport(NOT_WEAK, None, None, S.subset_mode)
    lp = lp_classify_nonneg(A, rhs)
    if lp.status == INFEASIBLE:
        return EutaxyReport(WEAK, _spread(S, reps, sol.particular), None, S.subset_mode)
    cls = EUTACTIC if lp.status == STRICT else SEMI
    return EutaxyReport(cls, _spread(S, reps, lp.witness), None, S.subset_mode)


def eutaxy_residual_gram(report: EutaxyReport, S: MinimalVectorSet, M) -> bool:
    """Check ``sum c_i (M a_i)(M a_i)^T == min * M`` in generator coordinates."""
    N, D = scaled_integer(M)  # M = N / D
    A = [list(map(int, a)) for a in S.vectors]
    NA = int_matmul(A, N)  # row i is (N a_i)^T
    den = 1
    for c in report.coefficients:
        den = math.lcm(den, int(mpq(c).denominator))
    cw = [int(mpq(c) * den) for c in report.coefficients]
    weighted = [[w * x for x in row] for w, row in zip(cw, NA)]
    acc = int_matmul(transpose(NA), weighted)  # = den * D^2 * sum c (Ma)(Ma)^T
    m = S.min_norm_sq
    n = len(M)
    return all(mpq(acc[i][j], den * D * D) == m * M[i][j] for i in range(n) for j in range(n))


# -- perfection -----------------------------------------------------------------------------

@dataclass
class PerfectionReport:
    span_rank: int
    required: int
    is_perfect: bool
    used_closed_form: bool
    subset_mode: bool = False


def closed_form_eigenvalues(alpha, n: int):
    """Eigenvalues of ``(1 - 1/a^2) I + (1/a^2) J`` (n x n) with multiplicities."""
    inv2 = 1 / mpq(alpha) ** 2
    return [(1 - inv2, n - 1), (1 - inv2 + n * inv2, 1)]


def _frame_index(S: MinimalVectorSet, L: QuadraticLattice):
    """Map each pair representative to ``(generator index, sign)`` when it is one."""
    cols = {}
    for i in range(L.n):
        col = tuple(L.coords[t][i] for t in range(L.k))
        cols.setdefault(col, (i, 1))
        cols.setdefault(tuple(-v for v in col), (i, -1))
    return cols


def perfection_check(S: MinimalVectorSet, M, L: QuadraticLattice, alpha=None) -> PerfectionReport:
    """Rank of the Gram matrix ``P_ij = (<x_i, x_j> / min)^2`` of the outer products.

    When ``alpha`` is given (a maximal unit ETF with integer alpha) and the
    representatives are exactly the frame vectors, ``P`` is compared against
    ``(1 - 1/alpha^2) I + (1/alpha^2) J`` entrywise and its rank read off the
    closed-form eigenvalues.
    """
    k = L.k
    required = k * (k + 1) // 2
    reps = S.pair_representatives()
    m2 = S.min_norm_sq**2
    if alpha is not None:
        cols = _frame_index(S, L)
        idx = [cols.get(S.lattice_coords[i]) for i in reps]
        frame_ids = [t[0] for t in idx if t is not None]
        if None not in idx and len(set(frame_ids)) == L.n == len(reps):
            inv2 = 1 / mpq(alpha) ** 2
            ok = all(
                (M[a][b] ** 2 / m2) == (1 if a == b else inv2)
                for a in frame_ids
                for b in frame_ids
            )
            if ok:
                eig = closed_form_eigenvalues(alpha, len(reps))
                rank = sum(mult for val, mult in eig if val != 0)
                return PerfectionReport(rank, required, rank == required, True, S.subset_mode)
    B = L.basis_gram
    Z = []
    for i in reps:
        y = S.lattice_coords[i]
        Z.append([sum((B[r][t] * y[t] for t in range(k) if y[t]), mpq(0)) for r in range(k)])
    Y = [S.lattice_coords[i] for i in reps]
    P = [[(sum((z[t] * yy[t] for t in range(k) if yy[t]), mpq(0))) ** 2 / m2 for yy in Y] for z in Z]
    rank = rank_solve(P).rank
    return PerfectionReport(rank, required, rank == required, False, S.subset_mode)


def extreme_verdict(e: EutaxyReport, p: PerfectionReport) -> bool:
    return p.is_perfect and e.eutaxy_class in (EUTACTIC, STRONG)


# -- separated values ---------------------------------------------------------------------

@dataclass
class SeparationReport:
    radius: int
    min_positive_gap: object
    witness_pair: tuple
    verdict: str  # "SeparatedWithin" | "GapBelow"
    threshold: mpq
    value_count: int
    quantization_floor: mpq | None = None  # 1/D for rational forms, D = lcm of denominators

    @property
    def verdict_text(self) -> str:
        if self.verdict == "GapBelow":
            return f"GapBelow({self.threshold})"
        return f"SeparatedWithin(radius={self.radius})"


def _split_entries(M):
    """Integers ``(A, B, D, d)`` with ``M = (A + B sqrt d) / D``."""
    d = field_of(M)
    D = 1
    for row in M:
        for x in row:
            x = QuadScalar.lift(x)
            D = math.lcm(D, int(x.a.denominator), int(x.b.denominator))
    A, B = [], []
    for row in M:
        ra, rb = [], []
        for x in row:
            x = QuadScalar.lift(x)
            ra.append(int(x.a * D))
            rb.append(int(x.b * D))
        A.append(ra)
        B.append(rb)
    return A, B, D, d


def _pair_sign(p: int, q: int, d: int) -> int:
    """Sign of ``p + q sqrt d`` for integers."""
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sq == 0 or d == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    return sp if p * p > q * q * d else sq


def _form_values(N, vectors):
    """``a^T N a`` for each row of ``vectors`` (integer arrays)."""
    bound = max((abs(x) for row in N for x in row), default=0)
    r = int(np.abs(vectors).max()) if vectors.size else 0
    n = vectors.shape[1]
    if bound * r * r * n * n < 2**62:
        Na = vectors.astype(np.int64) @ np.array(N, dtype=np.int64)
        return (Na * vectors).sum(axis=1).tolist()
    V = vectors.astype(object)
    Na = V @ np.array(N, dtype=object)
    return [int(x) for x in (Na * V).sum(axis=1)]


def separation_search(M, radius: int, threshold=mpq(1, 100), budget=DEFAULT_VALUE_BUDGET) -> SeparationReport:
    """Smallest positive gap between norm-form values on the box ``||a||_inf <= radius``.

    A falsifier, not a decider: a gap below ``threshold`` shows the values are
    not separated at that scale; otherwise separation holds only within the box.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    n = len(M)
    count = (2 * radius + 1) ** n
    if count > budget:
        raise SearchBudgetExceeded(count, budget)
    A, B, D, d = _split_entries(M)
    rng = np.arange(-radius, radius + 1, dtype=np.int64)
    grid = np.array(list(product(rng, repeat=n)), dtype=np.int64).reshape(-1, n)
    P = _form_values(A, grid)
    Qv = _form_values(B, grid) if d else [0] * len(P)
    sq = math.sqrt(d)
    order = sorted(range(len(P)), key=lambda i: P[i] + Qv[i] * sq)
    # exact insertion pass; the float order is already nearly right
    for pos in range(1, len(order)):
        cur = order[pos]
        j = pos - 1
        while j >= 0 and _pair_sign(P[order[j]] - P[cur], Qv[order[j]] - Qv[cur], d) > 0:
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = cur
    best = None
    pair = None
    for a, b in zip(order, order[1:]):
        gp, gq = P[b] - P[a], Qv[b] - Qv[a]
        if gp == 0 and gq == 0:
            continue
        if best is None or _pair_sign(gp - best[0], gq - best[1], d) < 0:
            best = (gp, gq)
            pair = (a, b)
    if best is None:
        raise ValueError("the form takes a single value on the box")
    gap = QuadScalar(mpq(best[0], D), mpq(best[1], D), d) if d else mpq(best[0], D)
    wa = tuple(int(v) for v in grid[pair[1]])
    wb = tuple(int(v) for v in grid[pair[0]])
    threshold = mpq(threshold)
    verdict = "GapBelow" if gap < threshold else "SeparatedWithin"
    floor = None
    if not d:
        floor = mpq(1, D)
    return SeparationReport(radius, gap, (wa, wb), verdict, threshold, count, floor)


def xi_gap_witness(xi, eps):
    """Integers ``(a1, a2)`` with ``0 < (a1 + xi a2)^2 < eps`` from the convergents of ``xi``."""
    xi = QuadScalar.lift(xi)
    if xi.is_rational():
        raise ValueError("xi must be irrational")
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    for p, q in cf_expand(xi).convergents():
        value = (p - q * xi) ** 2
        if value < eps:
            return p, -q
