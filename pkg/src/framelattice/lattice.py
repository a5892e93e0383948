"""Latticehood of integer spans, basis extraction, and shortest vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from gmpy2 import mpq

from .exact.intlat import kernel_and_complement
from .exact.linalg import inverse, ldl_decompose, row_reduce
from .exact.lll import DEFAULT_DELTA, lll_reduce
from .exact.matrix import det, int_matmul, is_rational_matrix, scaled_integer, transpose
from .exact.scalars import QuadScalar, as_rational
from .frames import Frame, FrameError, GramFrame, tightness_check

DEFAULT_NODE_CAP = 10**8


class NotTight(FrameError):
    pass


class EnumerationBudgetExceeded(RuntimeError):
    """Shortest-vector search hit its node cap; the result would be inconclusive."""

    def __init__(self, nodes: int, cap: int):
        super().__init__(f"inconclusive: enumeration visited {nodes} nodes (cap {cap})")
        self.nodes = nodes
        self.cap = cap


@dataclass(frozen=True)
class LatticeDetectReport:
    is_lattice: bool
    pivot_columns: tuple[int, ...]
    witness: object  # "rational" or (row, column) of the first irrational entry
    k: int
    equivalent_to_rationality: bool  # k in {2, 3} with a unit vector present


@dataclass
class QuadraticLattice:
    """Rank-k lattice ``Z^n / ker(M)`` with a reduced basis.

    ``embed`` is ``n x k``: column t writes basis vector t as an integer
    combination of the generators.  ``coords`` is ``k x n``: column i is the
    i-th generator in the reduced basis.  ``basis_gram == embed^T M embed`` and
    ``M == coords^T basis_gram coords``.
    """

    k: int
    n: int
    basis_gram: list
    embed: list
    coords: list
    det_gram: mpq
    scale: object = 1  # Gram of the frame is scale * M when M was rationalised

    def generator_coords(self, a):
        """Lattice coordinates of the generator combination ``a``."""
        return tuple(sum(row[i] * a[i] for i in range(self.n) if a[i]) for row in self.coords)

    def to_generators(self, y):
        return tuple(sum(self.embed[i][t] * y[t] for t in range(self.k)) for i in range(self.n))


@dataclass
class MinimalVectorSet:
    min_norm_sq: mpq
    vectors: list  # integer n-tuples in generator coordinates, sorted
    lattice_coords: list = field(default_factory=list)  # parallel k-tuples
    nodes: int = 0
    subset_mode: bool = False  # True when the set is +-F taken on trust, not enumerated

    @property
    def count(self) -> int:
        return len(self.vectors)

    def pair_representatives(self):
        """Indices of one vector from each +- pair (the lexicographically larger)."""
        index = {y: i for i, y in enumerate(self.lattice_coords)}
        reps = []
        for i, y in enumerate(self.lattice_coords):
            neg = tuple(-v for v in y)
            if neg not in index:
                raise ValueError("vector set is not closed under negation")
            if y > neg:
                reps.append(i)
        return reps


# -- latticehood of coordinate frames -----------------------------------------------------

def lattice_detect(F: Frame) -> LatticeDetectReport:
    """Decide whether the integer span of a tight frame is a lattice.

    With ``G0`` the first invertible set of k columns (greedy, left to right)
    the span is a lattice iff ``G0^{-1} G`` is rational; that product is the
    reduced row echelon form of ``G``.
    """
    if not isinstance(F, Frame):
        raise TypeError("lattice_detect needs a coordinate frame")
    if not tightness_check(F).is_tight:
        raise NotTight("lattice detection requires a tight frame")
    rref, pivots, _ = row_reduce(F.G)
    if len(pivots) != F.k:
        raise FrameError("no invertible k-subset of columns")
    witness = "rational"
    for i in range(F.k):
        for j in range(F.n):
            x = rref[i][j]
            if isinstance(x, QuadScalar) and not x.is_rational():
                witness = (i, j)
                break
        if witness != "rational":
            break
    w = F.row_weights
    has_unit = any(
        sum((w[i] * F.G[i][j] * F.G[i][j] for i in range(F.k)), mpq(0)) == 1 for j in range(F.n)
    )
    return LatticeDetectReport(
        witness == "rational", tuple(pivots), witness, F.k, F.k in (2, 3) and has_unit
    )


# -- basis extraction ----------------------------------------------------------------------

def _int_inverse(U):
    inv = inverse([[mpq(x) for x in row] for row in U])
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ArithmeticError("transform is not unimodular")
        out.append([int(x) for x in row])
    return out


def span_to_lattice(F, delta=DEFAULT_DELTA, column_order=None) -> QuadraticLattice:
    """Reduced basis of ``{G a : a in Z^n}`` from a rational Gram matrix.

    ``Z^n`` splits along the saturated kernel of ``M``; the complement columns
    ``W`` carry the lattice, whose Gram ``W^T M W`` is then LLL reduced.
    ``column_order`` relabels the generators before the split (used to check
    that results do not depend on the labelling).
    """
    M = F.M if isinstance(F, GramFrame) else F
    if not is_rational_matrix(M):
        raise FrameError("span_to_lattice needs a rational Gram matrix")
    n = len(M)
    perm = list(range(n)) if column_order is None else list(column_order)
    if sorted(perm) != list(range(n)):
        raise ValueError("column_order must be a permutation")
    Mp = [[M[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    _, W, C = kernel_and_complement(Mp)
    k = len(W)
    # undo the relabelling: generator perm[i] sits in slot i
    Wn = [[0] * k for _ in range(n)]
    Cn = [[0] * n for _ in range(k)]
    for slot, gen in enumerate(perm):
        for t in range(k):
            Wn[gen][t] = W[t][slot]
            Cn[t][gen] = C[t][slot]
    N, D = scaled_integer(M)
    NW = int_matmul(N, Wn)
    Bint = int_matmul(transpose(Wn), NW)
    gram = [[mpq(x, D) for x in row] for row in Bint]
    reduced, Ul = lll_reduce(gram, delta)
    embed = int_matmul(Wn, Ul)
    coords = int_matmul(_int_inverse(Ul), Cn)
    return QuadraticLattice(k, n, reduced, embed, coords, det(reduced))


# -- shortest vectors ----------------------------------------------------------------------

def _int_window(c: mpq, r2: mpq) -> tuple[int, int]:
    """Integers x with (x - c)^2 <= r2, as an inclusive range (possibly empty)."""
    u = math.isqrt(int(r2.numerator // r2.denominator)) + 1  # u >= sqrt(r2)
    fl = c.numerator // c.denominator
    lo = fl - u
    while (lo - c) ** 2 > r2 and lo <= fl + u:
        lo += 1
    hi = fl + u + 1
    while (hi - c) ** 2 > r2 and hi >= lo:
        hi -= 1
    return lo, hi


def enumerate_short(gram, bound, node_cap=DEFAULT_NODE_CAP, shrink=False):
    """Fincke-Pohst: nonzero integer y with ``y^T gram y <= bound``.

    Coordinates are fixed from last to first; children are visited in
    increasing order.  With ``shrink`` the bound tightens to the best value
    found so far and only vectors attaining the final minimum are returned as
    ``(value, vectors, nodes)``; otherwise ``([(value, y), ...], nodes)``.
    """
    k = len(gram)
    L, Dg = ldl_decompose(gram)
    bound = mpq(bound)
    y = [0] * k
    found = []
    best = None
    nodes = 0

    def rec(i, partial):
        nonlocal nodes, best, bound, found
        c = mpq(0)
        for j in range(i + 1, k):
            if y[j]:
                c -= L[j][i] * y[j]
        lo, hi = _int_window(c, (bound - partial) / Dg[i])
        for x in range(lo, hi + 1):
            nodes += 1
            if nodes > node_cap:
                raise EnumerationBudgetExceeded(nodes, node_cap)
            t = partial + (x - c) ** 2 * Dg[i]
            if t > bound:
                continue
            y[i] = x
            if i > 0:
                rec(i - 1, t)
            elif any(y):
                if not shrink:
                    found.append((t, tuple(y)))
                elif best is None or t < best:
                    best, bound, found = t, t, [tuple(y)]
                elif t == best:
                    found.append(tuple(y))
        y[i] = 0

    if k:
        rec(k - 1, mpq(0))
    if shrink:
        return best, found, nodes
    return found, nodes


def minimal_vectors(L: QuadraticLattice, M=None, node_cap=DEFAULT_NODE_CAP) -> MinimalVectorSet:
    """All shortest nonzero vectors of ``L``, negation closed, in generator coordinates."""
    B = L.basis_gram
    start = min(B[i][i] for i in range(L.k))
    best, ys, nodes = enumerate_short(B, start, node_cap, shrink=True)
    pairs = sorted((L.to_generators(y), y) for y in set(ys))
    return MinimalVectorSet(
        best, [a for a, _ in pairs], [y for _, y in pairs], nodes=nodes
    )


def frame_subset(L: QuadraticLattice, M) -> MinimalVectorSet:
    """The set +-F (standard basis vectors of Z^n) with its common squared norm.

    Used when full enumeration is out of reach; every generator must have the
    same norm.
    """
    norms = {M[i][i] for i in range(L.n)}
    if len(norms) != 1:
        raise FrameError("+-F subset mode needs equal-norm generators")
    (value,) = norms
    seen = {}
    for i in range(L.n):
        e = [0] * L.n
        for sgn in (1, -1):
            e[i] = sgn
            y = L.generator_coords(e)
            seen.setdefault(y, tuple(e))
    pairs = sorted((a, y) for y, a in seen.items())
    return MinimalVectorSet(
        mpq(value), [a for a, _ in pairs], [y for _, y in pairs], subset_mode=True
    )


# -- checks against the frame -------------------------------------------------------------

@dataclass(frozen=True)
class BoundCheck:
    holds: bool
    margin: mpq
    quantized: bool  # alpha * Q takes values in Z_{>=0}


def min_norm_bound_check(S: MinimalVectorSet, L: QuadraticLattice, alpha) -> BoundCheck:
    """``min ||x||^2 >= 1/alpha`` for a unit ETF with integer ``alpha``."""
    if isinstance(alpha, QuadScalar):
        if not alpha.is_rational():
            raise ValueError("the norm bound needs an integer alpha")
        alpha = alpha.a
    alpha = mpq(alpha)
    if alpha.denominator != 1 or alpha <= 0:
        raise ValueError("the norm bound needs a positive integer alpha")
    B = L.basis_gram
    quantized = all(
        (alpha * B[i][i]).denominator == 1 and (2 * alpha * B[i][j]).denominator == 1
        for i in range(L.k)
        for j in range(L.k)
    )
    margin = S.min_norm_sq - 1 / alpha
    return BoundCheck(margin >= 0, margin, quantized)


def minvec_vs_frame(S: MinimalVectorSet, L: QuadraticLattice) -> str:
    """Compare the minimal vectors with +-F, classes taken modulo ker(M)."""
    frame = set()
    for i in range(L.n):
        col = tuple(L.coords[t][i] for t in range(L.k))
        if any(col):
            frame.add(col)
            frame.add(tuple(-v for v in col))
    mins = set(S.lattice_coords)
    if mins == frame:
        return "equalsPlusMinusFrame"
    if mins > frame:
        return "strictSuperset"
    return "other"
